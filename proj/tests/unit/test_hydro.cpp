#include <doctest.h>

#include <cmath>

#include "snapswim/error.hpp"
#include "snapswim/hydro/hydro.hpp"
#include "snapswim/scenario/design.hpp"

using namespace snapswim;
using namespace snapswim::hydro;

namespace {

HydroParams calibrated() {
  HydroParams p;
  p.body_drag_coeff = 2.68;
  p.rotational_drag_coeff = 2.2e-4;
  return p;
}

actuation::SnapEvent forward_snap() {
  return {0.0, 0, actuation::Direction::forward, 0.428021, 4.135};
}

std::vector<Fin> fins(std::initializer_list<FinSlot> slots) {
  std::vector<Fin> out;
  for (FinSlot s : slots) out.push_back(scenario::reference_fin(s, true));
  return out;
}

double kinetic(const Impulse& j, const HydroParams& p) {
  return (j.jx * j.jx + j.jy * j.jy) / (2 * p.body_mass_kg) +
         j.angular * j.angular / (2 * p.rotational_inertia_kgm2);
}

}  // namespace

TEST_CASE("symmetric fins give no torque") {
  const auto j = snap_impulse(forward_snap(), fins({FinSlot::rear_left, FinSlot::rear_right}),
                              calibrated());
  CHECK(j.jx > 0);
  CHECK(j.angular == 0.0);
}

TEST_CASE("a missing left fin turns the body left") {
  const auto j = snap_impulse(
      forward_snap(), fins({FinSlot::front_right, FinSlot::rear_left, FinSlot::rear_right}),
      calibrated());
  const auto front_only = snap_impulse(forward_snap(), fins({FinSlot::front_right}), calibrated());
  CHECK(front_only.angular > 0);
  CHECK(j.angular > 0);
}

TEST_CASE("no fins, no impulse") {
  const auto j = snap_impulse(forward_snap(), {}, calibrated());
  CHECK(j.jx == 0.0);
  CHECK(j.jy == 0.0);
  CHECK(j.angular == 0.0);
  auto absent = fins({FinSlot::rear_left});
  absent[0].present = false;
  CHECK(snap_impulse(forward_snap(), absent, calibrated()).jx == 0.0);
}

TEST_CASE("reverse snap pushes backward") {
  auto ev = forward_snap();
  ev.direction = actuation::Direction::reverse;
  CHECK(snap_impulse(ev, fins({FinSlot::rear_left}), calibrated()).jx < 0);
}

TEST_CASE("imparted kinetic energy stays within the efficiency budget") {
  const auto p = calibrated();
  for (double e : {1e-4, 0.01, 0.428, 0.888, 10.0}) {
    for (double stroke : {0.5, 4.135, 5.436}) {
      const actuation::SnapEvent ev{0, 0, actuation::Direction::forward, e, stroke};
      const auto all = fins({FinSlot::front_left, FinSlot::front_right, FinSlot::rear_left,
                             FinSlot::rear_right});
      const auto j = snap_impulse(ev, all, p);
      CHECK(kinetic(j, p) <= p.efficiency * e * 1e-3 * (1 + 1e-12));
    }
  }
  CHECK_THROWS_AS(snap_impulse({0, 0, actuation::Direction::forward, 0.0, 4}, {}, p), DomainError);
}

TEST_CASE("no load keeps the state constant") {
  const auto samples = integrate({}, calibrated(), {}, 0.005, 10.0);
  REQUIRE(!samples.empty());
  for (const auto& s : samples) {
    CHECK(s.state.x == 0.0);
    CHECK(s.state.theta == 0.0);
  }
}

TEST_CASE("forward impulse gives monotone decaying speed and fixed heading") {
  const auto p = calibrated();
  const auto j = snap_impulse(forward_snap(), fins({FinSlot::rear_left, FinSlot::rear_right}), p);
  const auto samples = integrate({}, p, {thrust_window(0.0, j, p)}, 0.005, 200.0);
  double peak = 0.0;
  for (std::size_t i = 1; i < samples.size(); ++i) {
    const auto& s = samples[i].state;
    CHECK(s.theta == 0.0);
    CHECK(s.y == 0.0);
    CHECK(s.x >= samples[i - 1].state.x);
    if (samples[i].t > p.snap_duration_s + 1e-9) CHECK(s.vx <= samples[i - 1].state.vx);
    peak = std::max(peak, s.vx);
  }
  CHECK(peak > 0);
  // Quadratic drag alone decays as 1/t; the run stops at the horizon.
  CHECK(samples.back().state.vx < 1e-2 * peak);
}

TEST_CASE("load windows are split by overlap") {
  const std::vector<ThrustWindow> w{{0.0, 0.05, 1.0, 0.0, 2.0}};
  CHECK(load_over(w, 0.0, 0.01).fx == doctest::Approx(1.0));
  CHECK(load_over(w, 0.045, 0.01).fx == doctest::Approx(0.5));
  CHECK(load_over(w, 0.05, 0.01).fx == 0.0);
}

TEST_CASE("parameter checks") {
  CHECK_THROWS_AS(integrate({}, calibrated(), {}, 0.011, 1.0), DomainError);
  CHECK_THROWS_AS(integrate({}, HydroParams{}, {}, 0.005, 1.0), CalibrationError);
  auto p = calibrated();
  p.efficiency = 1.5;
  CHECK_THROWS_AS(p.validate(), DomainError);
  BodyState s;
  s.vx = std::nan("");
  CHECK_THROWS_AS(step(s, calibrated(), {}, 0.005), SimulationDiverged);
}
