#include <doctest.h>

#include <cmath>

#include "snapswim/error.hpp"
#include "snapswim/scenario/output.hpp"
#include "snapswim/scenario/run.hpp"
#include "snapswim/scenario/sweep.hpp"
#include "support.hpp"

using namespace snapswim;
using namespace snapswim::scenario;
using test_support::shipped_scenario;
using test_support::source_path;

namespace {

Scenario mirrored_scenario(Scenario sc) {
  auto& d = sc.design;
  std::array<hydro::Fin, 4> fins;
  for (FinSlot s : kAllFinSlots) {
    fins[static_cast<int>(mirrored(s))] = reference_fin(mirrored(s), d.fin(s).present);
  }
  d.fins = fins;
  for (auto& p : d.pairs) {
    for (auto& s : p.attached_fins) s = mirrored(s);
  }
  return sc;
}

std::vector<actuation::EventKind> kinds(const RunResult& r) {
  std::vector<actuation::EventKind> out;
  for (const auto& e : r.events) out.push_back(e.kind);
  return out;
}

}  // namespace

TEST_CASE("single stroke reproduces the calibration anchor") {
  const auto r = run(shipped_scenario("single_stroke"));
  CHECK(r.summary.forward_snaps == 1);
  CHECK(r.summary.settled);
  CHECK(r.summary.displacement_bl == doctest::Approx(1.15).epsilon(1e-3));
  CHECK(std::abs(r.summary.final_heading_deg) < 0.5);
}

TEST_CASE("runs are deterministic") {
  const auto sc = shipped_scenario("three_fin");
  const auto a = run(sc);
  const auto b = run(sc);
  CHECK(trajectory_csv(a.trajectory) == trajectory_csv(b.trajectory));
  CHECK(event_log(a.events) == event_log(b.events));
  CHECK(summary_text(a.summary) == summary_text(b.summary));
}

TEST_CASE("mirrored layout negates the trajectory") {
  const auto sc = shipped_scenario("two_fin_diagonal");
  const auto a = run(sc);
  const auto b = run(mirrored_scenario(sc));
  REQUIRE(a.trajectory.size() == b.trajectory.size());
  for (std::size_t i = 0; i < a.trajectory.size(); ++i) {
    const auto& s = a.trajectory[i].state;
    const auto& m = b.trajectory[i].state;
    CHECK(std::abs(s.x - m.x) < 1e-9);
    CHECK(std::abs(s.y + m.y) < 1e-9);
    CHECK(std::abs(s.theta + m.theta) < 1e-9);
  }
  REQUIRE(a.summary.strokes.size() == 2);
  CHECK(a.summary.strokes[0].dtheta_deg > 0);
  CHECK(a.summary.strokes[1].dtheta_deg < 0);
}

TEST_CASE("symmetric layouts keep their heading") {
  for (const char* name : {"single_stroke", "two_stroke_4fin"}) {
    const auto r = run(shipped_scenario(name));
    CHECK(std::abs(r.summary.final_heading_deg) < 0.5);
  }
}

TEST_CASE("halving dt barely moves the result") {
  auto sc = shipped_scenario("single_stroke");
  const double coarse = run(sc).summary.displacement_bl;
  sc.simulation.dt_s /= 2;
  const double fine = run(sc).summary.displacement_bl;
  CHECK(std::abs(fine - coarse) / fine < 5e-3);
}

TEST_CASE("displacement does not depend on muscle thickness") {
  auto sc = shipped_scenario("single_stroke");
  double lo = 1e9, hi = 0;
  for (double t : {1.2, 1.4, 1.6}) {
    sc.design.pairs[0].forward_muscle.beam_thickness_mm = t;
    const double d = run(sc).summary.displacement_bl;
    lo = std::min(lo, d);
    hi = std::max(hi, d);
  }
  CHECK((hi - lo) / lo < 0.02);
}

TEST_CASE("event order does not depend on water temperature") {
  auto sc = shipped_scenario("two_stroke_4fin");
  const auto base = kinds(run(sc));
  for (double temp : {65.0, 75.0}) {
    sc.environment.water = actuation::ThermalSchedule::constant(temp);
    CHECK(kinds(run(sc)) == base);
  }
}

TEST_CASE("cold water: no snap, run ends immediately") {
  auto sc = shipped_scenario("single_stroke");
  sc.environment.water = actuation::ThermalSchedule::constant(30.0);
  const auto r = run(sc);
  CHECK(r.summary.no_snap);
  CHECK(r.events.empty());
  CHECK(r.summary.displacement_bl == 0.0);
}

TEST_CASE("emit and parse round-trip") {
  for (const char* name :
       {"single_stroke", "two_stroke_4fin", "three_fin", "two_fin_diagonal", "reverse_cargo"}) {
    const auto sc = shipped_scenario(name);
    const auto again = parse_scenario(config::Document::parse(emit_scenario(sc)));
    CHECK(again.design == sc.design);
    CHECK(again.environment == sc.environment);
    CHECK(again.simulation == sc.simulation);
    CHECK(again.hydro.body_drag_coeff == sc.hydro.body_drag_coeff);
    CHECK(emit_scenario(again) == emit_scenario(sc));
  }
}

TEST_CASE("config errors name the key and line") {
  const std::string base =
      "[robot]\nmass_kg = -1\n[pairs.0]\nthickness_mm = 1.2\nmaterial = VeroWhitePlus\n"
      "[fins]\nrear_left = 0\n";
  try {
    parse_scenario(config::Document::parse(base));
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.key() == "mass_kg");
    CHECK(e.line() == 2);
  }
  CHECK_THROWS_AS(parse_scenario(config::Document::parse("[robto]\n")), ConfigError);
  CHECK_THROWS_AS(
      parse_scenario(config::Document::parse(
          "[pairs.0]\nthickness_mm = 1.2\nmaterial = Nope\n[fins]\nrear_left = 0\n")),
      ConfigError);
  CHECK_THROWS_AS(
      parse_scenario(config::Document::parse(
          "[pairs.0]\nthickness_mm = 1.2\nmaterial = VeroWhitePlus\n[fins]\nrear_left = 3\n")),
      ConfigError);
  CHECK_THROWS_AS(load_scenario(source_path("scenarios/missing.cfg")), ConfigError);
}

TEST_CASE("schedule text") {
  const auto s = parse_schedule("0:35, 6000:35, 6300:60");
  CHECK(s.points().size() == 3);
  CHECK(format_schedule(s) == "0:35, 6000:35, 6300:60");
  CHECK_THROWS_AS(parse_schedule("0:35, x"), DomainError);
  CHECK_THROWS_AS(parse_schedule("10:35, 5:40"), DomainError);
}

TEST_CASE("uncalibrated runs are refused") {
  auto sc = load_scenario(source_path("scenarios/single_stroke.cfg"));
  CHECK_THROWS_AS(run(sc), CalibrationError);
}

TEST_CASE("sweep variants") {
  const auto doc = config::Document::load(source_path("scenarios/single_stroke.cfg"));
  const auto spec = parse_vary("thickness_mm=1.2,1.6");
  CHECK(spec.key == "thickness_mm");
  CHECK(spec.values == std::vector<std::string>{"1.2", "1.6"});
  const auto v = vary(doc, "pairs.0.thickness_mm", "1.4");
  CHECK(v.section("pairs.0").number("thickness_mm") == 1.4);
  CHECK_THROWS_AS(vary(doc, "no_such_key", "1"), ConfigError);
  CHECK_THROWS_AS(parse_vary("thickness_mm="), ConfigError);
  CHECK_THROWS_AS(parse_vary("thickness_mm=1.2,,1.4"), ConfigError);

  const auto cal = load_calibration(source_path("calibration/reference.cal"));
  const auto rows = sweep(doc, spec, cal, 2);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].value == "1.2");
  const auto csv = sweep_csv(spec.key, rows);
  CHECK(csv.rfind("thickness_mm,displacement_bl,final_heading_deg,forward_snaps,no_snap,end_time_s\n",
                  0) == 0);
}

TEST_CASE("output formats") {
  const auto r = run(shipped_scenario("single_stroke"));
  CHECK(trajectory_csv(r.trajectory).rfind("t_s,x_m,y_m,theta_rad,vx,vy,omega,Twater_C\n", 0) == 0);
  const auto log = event_log(r.events);
  CHECK(log.find("event=Snap pair=0") != std::string::npos);
  const auto svg = trajectory_svg(r, 0.1);
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(summary_text(r.summary).find("stroke1_distance_bl=") != std::string::npos);
}
