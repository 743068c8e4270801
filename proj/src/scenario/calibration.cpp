#include "snapswim/scenario/calibration.hpp"

#include <cmath>
#include <functional>

#include <fmt/format.h>

#include "snapswim/error.hpp"
#include "snapswim/scenario/run.hpp"

namespace snapswim::scenario {

namespace {

struct Solve {
  double x;
  double value;
  int iterations;
};

// f is decreasing in x; bisect log(x) on [lo, hi] until |f - target| is
// within rel_tol of target.
Solve bisect_log(const std::function<double(double)>& f, double lo, double hi, double target,
                 double rel_tol, const char* what) {
  const double f_lo = f(lo);
  const double f_hi = f(hi);
  if (!(f_lo > target && f_hi < target)) {
    throw CalibrationError(fmt::format(
        "{}: target {} not bracketed by [{}, {}] (values {} .. {})", what, target, lo, hi, f_lo, f_hi));
  }
  double a = std::log(lo), b = std::log(hi);
  Solve best{lo, f_lo, 0};
  for (int it = 1; it <= 200; ++it) {
    const double m = 0.5 * (a + b);
    const double x = std::exp(m);
    const double v = f(x);
    if (std::abs(v - target) < std::abs(best.value - target)) best = {x, v, it};
    best.iterations = it;
    if (std::abs(v - target) <= rel_tol * std::abs(target) || b - a < 1e-14) break;
    if (v > target) {
      a = m;
    } else {
      b = m;
    }
  }
  return best;
}

}  // namespace

CalibrationResult calibrate(const Scenario& single_stroke, const Scenario& turn_scenario,
                            const CalibrationTargets& targets) {
  Scenario single = single_stroke;
  single.simulation.sample_interval_s = 0.0;
  single.hydro.rotational_drag_coeff = 1.0;  // the single stroke is straight
  const auto distance = [&](double cd) {
    single.hydro.body_drag_coeff = cd;
    return run(single).summary.displacement_bl;
  };
  const Solve drag =
      bisect_log(distance, 1e-3, 1e3, targets.single_stroke_bl, targets.rel_tol, "body drag");

  Scenario turn = turn_scenario;
  turn.simulation.sample_interval_s = 0.0;
  turn.hydro.body_drag_coeff = drag.x;
  const auto angle = [&](double cr) {
    turn.hydro.rotational_drag_coeff = cr;
    const auto s = run(turn).summary;
    if (s.strokes.size() <= targets.turn_stroke) {
      throw CalibrationError(fmt::format("turn scenario produced {} strokes, need stroke {}",
                                         s.strokes.size(), targets.turn_stroke + 1));
    }
    return s.strokes[targets.turn_stroke].dtheta_deg;
  };
  const Solve yaw = bisect_log(angle, 1e-9, 1.0, targets.turn_deg, targets.rel_tol, "yaw drag");

  CalibrationResult r;
  r.coeffs = {drag.x, yaw.x};
  r.single_stroke_bl = drag.value;
  r.turn_deg = yaw.value;
  r.single_stroke_residual_rel =
      std::abs(drag.value - targets.single_stroke_bl) / targets.single_stroke_bl;
  r.turn_residual_rel = std::abs(yaw.value - targets.turn_deg) / std::abs(targets.turn_deg);
  r.drag_iterations = drag.iterations;
  r.turn_iterations = yaw.iterations;
  return r;
}

std::string calibration_text(const CalibrationResult& r) {
  config::Document doc;
  auto& c = doc.add_section("calibration");
  c.set("body_drag_coeff", config::format_number(r.coeffs.body_drag_coeff));
  c.set("rotational_drag_coeff", config::format_number(r.coeffs.rotational_drag_coeff));
  auto& res = doc.add_section("residuals");
  res.set("single_stroke_bl", fmt::format("{:.9g}", r.single_stroke_bl));
  res.set("single_stroke_residual_rel", fmt::format("{:.3e}", r.single_stroke_residual_rel));
  res.set("turn_deg", fmt::format("{:.9g}", r.turn_deg));
  res.set("turn_residual_rel", fmt::format("{:.3e}", r.turn_residual_rel));
  res.set("drag_iterations", std::to_string(r.drag_iterations));
  res.set("turn_iterations", std::to_string(r.turn_iterations));
  return "# Fitted drag coefficients. Regenerate with `snapswim calibrate`.\n" + doc.to_text();
}

}  // namespace snapswim::scenario
