#pragma once

#include <string>

#include "snapswim/scenario/design.hpp"

namespace snapswim::scenario {

struct CalibrationTargets {
  double single_stroke_bl = 1.15;
  double turn_deg = 23.85;
  std::size_t turn_stroke = 1;  // zero-based stroke index in the turn scenario
  double rel_tol = 1e-6;
};

struct CalibrationResult {
  Calibration coeffs;
  double single_stroke_bl = 0.0;
  double turn_deg = 0.0;
  double single_stroke_residual_rel = 0.0;
  double turn_residual_rel = 0.0;
  int drag_iterations = 0;
  int turn_iterations = 0;
};

// Two one-dimensional bisections in log space: body drag against the
// single-stroke distance, then quadratic yaw drag against the turn of the
// given stroke. Throws CalibrationError when a target is not bracketed.
CalibrationResult calibrate(const Scenario& single_stroke, const Scenario& turn_scenario,
                            const CalibrationTargets& targets = {});

// [calibration] and [residuals] sections, readable by load_calibration.
std::string calibration_text(const CalibrationResult& r);

}  // namespace snapswim::scenario
