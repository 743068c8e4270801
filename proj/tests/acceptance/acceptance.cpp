// Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any fail.

#include <chrono>
#include <cmath>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "snapswim/error.hpp"
#include "snapswim/mech/profile.hpp"
#include "snapswim/mission/synthesize.hpp"
#include "snapswim/parallel.hpp"
#include "snapswim/muscle/muscle.hpp"
#include "snapswim/scenario/calibration.hpp"
#include "snapswim/scenario/output.hpp"
#include "snapswim/scenario/sweep.hpp"

using namespace snapswim;

namespace {

std::string source_path(const std::string& rel) {
  return std::string(SNAPSWIM_SOURCE_DIR) + "/" + rel;
}

scenario::Calibration shipped_calibration() {
  return scenario::load_calibration(source_path("calibration/reference.cal"));
}

scenario::Scenario shipped(const std::string& name) {
  auto sc = scenario::load_scenario(source_path("scenarios/" + name + ".cfg"));
  scenario::apply_calibration(sc, shipped_calibration());
  return sc;
}

struct Verdict {
  bool pass = false;
  std::string detail;
};

// Every artifact that must be reproducible byte for byte.
std::vector<std::string> artifacts;

void keep(const scenario::RunResult& r) {
  artifacts.push_back(scenario::trajectory_csv(r.trajectory));
  artifacts.push_back(scenario::event_log(r.events));
  artifacts.push_back(scenario::summary_text(r.summary));
}

Verdict oracle_equivalence() {
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> uh(1, 10), ulr(1.5, 6), uk(0.1, 10), ukt(0, 10);
  double worst = 0.0;
  const int geometries = 64;
  for (int g = 0; g < geometries; ++g) {
    mech::TrussGeometry geom{uh(rng), 0, uk(rng), ukt(rng)};
    geom.half_span_mm = geom.rise_mm * ulr(rng);
    const double h = 1e-6 * geom.rise_mm;
    for (int i = 0; i < 1024; ++i) {
      const double v = geom.travel_mm() * i / 1023.0;
      auto e = [&](double x) { return mech::strain_energy(geom, x); };
      // Central difference inside, second-order one-sided at the ends.
      double fd;
      if (i == 0) {
        fd = 2 * (-3 * e(v) + 4 * e(v + h) - e(v + 2 * h)) / (2 * h);
      } else if (i == 1023) {
        fd = 2 * (3 * e(v) - 4 * e(v - h) + e(v - 2 * h)) / (2 * h);
      } else {
        fd = 2 * (e(v + h) - e(v - h)) / (2 * h);
      }
      const double p = mech::load_displacement(geom, v);
      // Relative to the curve's own force scale where P itself crosses zero.
      const double scale = std::max(std::abs(p), 1e-2 * geom.support_stiffness * geom.rise_mm +
                                                      1e-2 * geom.joint_stiffness / geom.half_span_mm);
      worst = std::max(worst, std::abs(p - fd) / scale);
    }
  }
  return {worst < 1e-5, fmt::format("{} geometries x 1024 points, max rel err {:.2e}", geometries, worst)};
}

Verdict symmetric_truss() {
  double root_err = 0.0, peak_err = 0.0;
  for (double h : {2.0, 3.5, 5.0, 7.0}) {
    for (double l : {15.0, 20.0, 30.0}) {
      const auto p = mech::barriers({h, l, 4.0, 0.0});
      if (p.equilibria.size() != 3) return {false, "not three equilibria"};
      root_err = std::max({root_err, std::abs(p.equilibria[0]), std::abs(p.equilibria[1] - h),
                           std::abs(p.equilibria[2] - 2 * h)});
      peak_err = std::max(peak_err, std::abs(std::abs(p.forward_peak_force) -
                                             std::abs(p.reverse_peak_force)) /
                                        std::abs(p.forward_peak_force));
    }
  }
  return {root_err < 1e-9 && peak_err < 1e-10,
          fmt::format("root err {:.1e} mm, peak asymmetry {:.1e}", root_err, peak_err)};
}

Verdict asymmetry() {
  int ok = 0, total = 0;
  for (int i = 0; i < 10; ++i) {
    for (int j = 0; j < 10; ++j) {
      const double h = 4.0 + 0.2 * i;
      const double kt = 0.5 + 0.5 * j;
      const mech::TrussGeometry g{h, 20.0, 4.0, kt};
      ++total;
      try {
        const auto p = mech::barriers(g);
        if (std::abs(p.reverse_peak_force) < std::abs(p.forward_peak_force) &&
            mech::strain_energy(g, p.second_stable()) > mech::strain_energy(g, p.first_stable())) {
          ++ok;
        }
      } catch (const NotBistableError&) {
      }
    }
  }
  return {ok == total, fmt::format("{}/{} geometries (H 4..5.8 mm, k_theta 0.5..5)", ok, total)};
}

Verdict trigger_threshold() {
  const auto prof = mech::barriers(scenario::reference_truss());
  const auto vero = muscle::MaterialDb::builtin().get("VeroWhitePlus");
  bool ok = true;
  std::string detail;
  for (double t : {0.6, 0.8, 1.0, 1.2, 1.4, 1.6, 1.8, 2.0}) {
    const bool fires = muscle::can_trigger({t, vero}, prof);
    ok = ok && fires == (t >= 1.2);
    detail += fmt::format("{}{}={}", detail.empty() ? "" : " ", t, fires ? "T" : "F");
  }
  return {ok, detail};
}

Verdict calibration_anchors() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto r = scenario::calibrate(shipped("single_stroke"), shipped("three_fin"));
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const auto cal = shipped_calibration();
  const bool matches_file = r.coeffs.body_drag_coeff == cal.body_drag_coeff &&
                            r.coeffs.rotational_drag_coeff == cal.rotational_drag_coeff;
  artifacts.push_back(scenario::calibration_text(r));
  const bool ok = std::abs(r.single_stroke_bl - 1.15) / 1.15 < 1e-3 &&
                  std::abs(r.turn_deg - 23.85) / 23.85 < 1e-3 && secs < 10.0 && matches_file;
  return {ok, fmt::format("single {:.6f} l, turn {:.5f} deg, {:.1f} s, shipped file {}",
                          r.single_stroke_bl, r.turn_deg, secs, matches_file ? "matches" : "differs")};
}

Verdict predictions() {
  const auto two = scenario::run(shipped("two_stroke_4fin"));
  const auto diag = scenario::run(shipped("two_fin_diagonal"));
  keep(two);
  keep(diag);
  const double d = two.summary.displacement_bl;
  if (diag.summary.strokes.size() != 2) return {false, "diagonal robot did not make two strokes"};
  const double a1 = diag.summary.strokes[0].dtheta_deg;
  const double a2 = diag.summary.strokes[1].dtheta_deg;
  const bool ok = std::abs(d - 1.9) <= 0.15 * 1.9 && std::abs(a1 - 21.64) <= 5.0 &&
                  std::abs(a2 + 21.45) <= 5.0;
  return {ok, fmt::format("two-stroke {:.4f} l, diagonal {:+.3f} / {:+.3f} deg", d, a1, a2)};
}

Verdict thickness_invariance() {
  const auto doc = config::Document::load(source_path("scenarios/single_stroke.cfg"));
  const auto spec = scenario::parse_vary("thickness_mm=1.2,1.4,1.6");
  const auto rows = scenario::sweep(doc, spec, shipped_calibration(), default_workers());
  artifacts.push_back(scenario::sweep_csv(spec.key, rows));
  double lo = 1e300, hi = 0;
  for (const auto& r : rows) {
    lo = std::min(lo, r.summary.displacement_bl);
    hi = std::max(hi, r.summary.displacement_bl);
  }
  const double spread = (hi - lo) / lo;
  return {spread < 0.02, fmt::format("{} rows, spread {:.3f}%", rows.size(), 100 * spread)};
}

Verdict sequencing() {
  std::vector<std::pair<actuation::EventKind, int>> reference;
  std::string detail;
  bool ok = true;
  for (double dt_ms : {1.0, 5.0, 10.0}) {
    auto sc = shipped("two_stroke_4fin");
    sc.simulation.dt_s = dt_ms * 1e-3;
    const auto r = scenario::run(sc);
    if (dt_ms == 5.0) keep(r);
    std::vector<std::pair<actuation::EventKind, int>> order;
    double rear = -1, front = -1;
    for (const auto& e : r.events) {
      order.emplace_back(e.kind, e.pair_id);
      if (e.kind == actuation::EventKind::snap) (e.pair_id == 0 ? rear : front) = e.time_s;
    }
    ok = ok && rear > 0 && front > rear;
    if (reference.empty()) reference = order;
    ok = ok && order == reference;
    detail += fmt::format("{}dt={}ms rear {:.3f} s front {:.3f} s", detail.empty() ? "" : "; ",
                          dt_ms, rear, front);
  }
  return {ok, detail};
}

Verdict reverse_cargo() {
  const auto r = scenario::run(shipped("reverse_cargo"));
  keep(r);
  std::vector<actuation::EventKind> kinds;
  for (const auto& e : r.events) {
    if (e.kind != actuation::EventKind::muscle_active) kinds.push_back(e.kind);
  }
  const bool order = kinds == std::vector<actuation::EventKind>{actuation::EventKind::snap,
                                                                 actuation::EventKind::cargo_release,
                                                                 actuation::EventKind::reverse_snap};
  const double dist = r.summary.displacement_bl;
  return {order && dist < 0.35,
          fmt::format("order {}, final distance {:.4f} l", order ? "snap/release/reverse" : "wrong", dist)};
}

Verdict synthesis() {
  mission::SynthesisOptions opt;
  const auto cal = shipped_calibration();
  opt.hydro.body_drag_coeff = cal.body_drag_coeff;
  opt.hydro.rotational_drag_coeff = cal.rotational_drag_coeff;
  opt.workers = default_workers();
  auto owners = [](std::initializer_list<std::pair<FinSlot, int>> fins) {
    std::array<int, 4> out = {-1, -1, -1, -1};
    for (auto [s, o] : fins) out[static_cast<int>(s)] = o;
    return out;
  };

  const auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  std::string detail;
  std::size_t enumerated = 0;
  auto solve = [&](const char* text) {
    const auto report = mission::synthesize(mission::parse(text), opt);
    artifacts.push_back(mission::emit_design(report.best));
    enumerated += report.enumerated;
    return report.best;
  };
  try {
    const auto a = solve("FORWARD 0.5; TURN 23");
    ok = ok && a.key.fin_owner == owners({{FinSlot::front_right, 1},
                                          {FinSlot::rear_left, 0},
                                          {FinSlot::rear_right, 0}});
    const auto b = solve("TURN 21; TURN -21");
    ok = ok && b.key.fin_owner == owners({{FinSlot::front_left, 1}, {FinSlot::rear_right, 0}});
    const auto c = solve("FORWARD 1.0; DROP; RETURN");
    ok = ok && c.key.pairs() == 1 && c.key.material[0] == "FLX9895" &&
         c.key.reverse_material == std::optional<std::string>("VeroWhitePlus") && c.key.gripper;
    detail = fmt::format("scores {:.4f} / {:.4f} / {:.4f}", a.score, b.score, c.score);
  } catch (const std::exception& e) {
    return {false, e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  ok = ok && secs < 120.0;
  return {ok, fmt::format("{}, {} candidates in {:.1f} s", detail, enumerated, secs)};
}

struct Criterion {
  int id;
  const char* name;
  std::function<Verdict()> check;
};

const std::vector<Criterion> kCriteria = {
    {1, "load law equals twice the energy derivative", oracle_equivalence},
    {2, "symmetric truss analytics", symmetric_truss},
    {3, "joint stiffness asymmetry", asymmetry},
    {4, "trigger threshold", trigger_threshold},
    {5, "calibration anchors", calibration_anchors},
    {6, "predicted two-stroke and diagonal results", predictions},
    {7, "thickness invariance", thickness_invariance},
    {8, "series sequencing", sequencing},
    {9, "reverse cargo", reverse_cargo},
    {10, "synthesis regression", synthesis},
};

Verdict run_timed(const Criterion& c, double& secs) {
  const auto t0 = std::chrono::steady_clock::now();
  Verdict v;
  try {
    v = c.check();
  } catch (const std::exception& e) {
    v = {false, fmt::format("exception: {}", e.what())};
  }
  secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return v;
}

}  // namespace

int main() {
  int failures = 0;
  for (const auto& c : kCriteria) {
    double secs = 0;
    const auto v = run_timed(c, secs);
    // Criterion 1 carries its own runtime bound.
    const bool pass = v.pass && (c.id != 1 || secs < 1.0);
    failures += pass ? 0 : 1;
    fmt::print("{} {:>2} {} ({:.2f} s): {}\n", pass ? "PASS" : "FAIL", c.id, c.name, secs, v.detail);
    std::fflush(stdout);
  }

  // Second full pass; every artifact must come out byte-identical.
  const auto t0 = std::chrono::steady_clock::now();
  const auto first = artifacts;
  artifacts.clear();
  for (const auto& c : kCriteria) {
    double secs = 0;
    run_timed(c, secs);
  }
  std::size_t same = 0;
  for (std::size_t i = 0; i < std::min(first.size(), artifacts.size()); ++i) {
    same += first[i] == artifacts[i] ? 1 : 0;
  }
  const bool pass = !first.empty() && first.size() == artifacts.size() && same == first.size();
  failures += pass ? 0 : 1;
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  fmt::print("{} 11 determinism ({:.2f} s): {}/{} artifacts byte-identical across two runs\n",
             pass ? "PASS" : "FAIL", secs, same, first.size());
  return failures == 0 ? 0 : 1;
}
