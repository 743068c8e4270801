#include "snapswim/scenario/run.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "snapswim/error.hpp"

namespace snapswim::scenario {

RunResult run(const RobotDesign& design, const Environment& env, const hydro::HydroParams& hydro,
              const SimulationSettings& sim) {
  design.validate();
  sim.validate();
  hydro::HydroParams params = hydro;
  params.water_density = env.water_density_kg_m3;
  params.body_mass_kg = design.mass_kg + (design.gripper ? design.gripper->cargo_mass_kg : 0.0);
  params.rotational_inertia_kgm2 = design.rotational_inertia_kgm2;
  params.validate();

  actuation::ActuationSequencer seq(design.pairs, design.gripper, design.topology);
  const double dt = sim.dt_s;
  const long sample_every =
      sim.sample_interval_s > 0.0 ? std::max(1L, std::lround(sim.sample_interval_s / dt)) : 0L;

  RunResult out;
  hydro::BodyState state;
  out.trajectory.push_back({0.0, state, env.water.at(0.0)});

  std::vector<hydro::ThrustWindow> windows;
  double thrust_until = 0.0;
  double peak_speed = 0.0;
  double peak_omega = 0.0;
  bool quiescent = false;
  bool settled = false;
  double t_now = 0.0;

  for (long k = 0;; ++k) {
    const double t = static_cast<double>(k) * dt;
    if (t >= sim.horizon_s) break;

    bool record = false;
    if (!quiescent) {
      auto events = seq.step(t, dt, env.water);
      for (auto& e : events) {
        if (e.kind == actuation::EventKind::cargo_release) {
          params.body_mass_kg = design.mass_kg;
        } else if (e.snap) {
          const auto fins = design.fins_of_pair(static_cast<std::size_t>(e.pair_id));
          const auto impulse = hydro::snap_impulse(*e.snap, fins, params);
          const auto w = hydro::thrust_window(e.time_s, impulse, params);
          windows.push_back(w);
          thrust_until = std::max(thrust_until, w.t_end);
          peak_speed = 0.0;
          peak_omega = 0.0;
        }
        out.events.push_back(std::move(e));
        record = true;
      }
      quiescent = seq.quiescent(t + dt, env.water);
    }

    hydro::Load load;
    if (!windows.empty()) {
      load = hydro::load_over(windows, t, dt);
      std::erase_if(windows, [&](const hydro::ThrustWindow& w) { return w.t_end <= t + dt; });
    }
    state = hydro::step(state, params, load, dt);

    const double speed = std::sqrt(state.vx * state.vx + state.vy * state.vy);
    peak_speed = std::max(peak_speed, speed);
    peak_omega = std::max(peak_omega, std::abs(state.omega));

    const double t_next = t + dt;
    t_now = t_next;
    const bool done = quiescent && t_next >= thrust_until &&
                      speed <= sim.rest_fraction * peak_speed &&
                      std::abs(state.omega) <= sim.rest_fraction * peak_omega;
    if (record || done || (sample_every > 0 && (k + 1) % sample_every == 0)) {
      out.trajectory.push_back({t_next, state, env.water.at(t_next)});
    }
    if (done) {
      settled = true;
      break;
    }
  }
  if (!settled && out.trajectory.back().t_s != t_now) {
    out.trajectory.push_back({t_now, state, env.water.at(t_now)});
  }
  out.summary = summarize(out.trajectory, out.events, design.body_length_m, settled);
  return out;
}

RunResult run(const Scenario& sc) {
  return run(sc.design, sc.environment, sc.hydro, sc.simulation);
}

namespace {

const TrajectorySample& sample_at(const std::vector<TrajectorySample>& traj, double t) {
  const auto it = std::lower_bound(traj.begin(), traj.end(), t,
                                   [](const TrajectorySample& s, double v) { return s.t_s < v; });
  if (it == traj.end() || it->t_s != t) {
    throw std::logic_error(fmt::format("trajectory has no sample at event time {}", t));
  }
  return *it;
}

double rad2deg(double r) { return r * 180.0 / std::numbers::pi; }

}  // namespace

Summary summarize(const std::vector<TrajectorySample>& traj,
                  const std::vector<actuation::Event>& events, double body_length_m,
                  bool settled) {
  Summary s;
  if (traj.empty()) return s;
  const auto& first = traj.front();
  const auto& last = traj.back();
  s.end_time_s = last.t_s;
  s.settled = settled;
  s.displacement_bl = std::hypot(last.state.x - first.state.x, last.state.y - first.state.y) /
                      body_length_m;
  s.final_heading_deg = rad2deg(last.state.theta - first.state.theta);

  std::vector<const actuation::Event*> snaps;
  for (const auto& e : events) {
    switch (e.kind) {
      case actuation::EventKind::snap:
        ++s.forward_snaps;
        snaps.push_back(&e);
        break;
      case actuation::EventKind::reverse_snap:
        ++s.reverse_snaps;
        snaps.push_back(&e);
        break;
      case actuation::EventKind::cargo_release:
        s.cargo_released = true;
        break;
      case actuation::EventKind::muscle_active:
        break;
    }
  }
  s.no_snap = s.forward_snaps == 0;
  s.has_return = s.reverse_snaps > 0;
  if (s.has_return) s.return_error_bl = s.displacement_bl;

  for (std::size_t i = 0; i < snaps.size(); ++i) {
    const auto& a = sample_at(traj, snaps[i]->time_s);
    const auto& b = i + 1 < snaps.size() ? sample_at(traj, snaps[i + 1]->time_s) : last;
    Stroke k;
    k.pair_id = snaps[i]->pair_id;
    k.direction = snaps[i]->kind == actuation::EventKind::snap ? actuation::Direction::forward
                                                               : actuation::Direction::reverse;
    k.t_start_s = a.t_s;
    k.t_end_s = b.t_s;
    k.distance_bl = std::hypot(b.state.x - a.state.x, b.state.y - a.state.y) / body_length_m;
    k.dtheta_deg = rad2deg(b.state.theta - a.state.theta);
    s.strokes.push_back(k);
  }
  return s;
}

}  // namespace snapswim::scenario
