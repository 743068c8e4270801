#pragma once

#include <string>
#include <vector>

#include "snapswim/actuation/sequencer.hpp"
#include "snapswim/scenario/design.hpp"

namespace snapswim::scenario {

struct TrajectorySample {
  double t_s = 0.0;
  hydro::BodyState state;
  double water_c = 0.0;
};

// One snap and the coasting that follows it, up to the next snap or the end
// of the run.
struct Stroke {
  int pair_id = 0;
  actuation::Direction direction = actuation::Direction::forward;
  double t_start_s = 0.0;
  double t_end_s = 0.0;
  double distance_bl = 0.0;  // straight-line travel over the window
  double dtheta_deg = 0.0;
};

struct Summary {
  double displacement_bl = 0.0;  // final distance from the start point
  double return_error_bl = 0.0;  // same, reported for runs with a reverse stroke
  bool has_return = false;
  double final_heading_deg = 0.0;
  std::vector<Stroke> strokes;
  int forward_snaps = 0;
  int reverse_snaps = 0;
  bool cargo_released = false;
  bool no_snap = true;
  double end_time_s = 0.0;
  bool settled = false;  // ended at rest rather than at the horizon
};

struct RunResult {
  std::vector<TrajectorySample> trajectory;
  std::vector<actuation::Event> events;
  Summary summary;
};

// Advances water temperature, muscles and body on one clock. The run ends
// once no further actuation is possible, all thrust has been delivered and
// the body has settled, or at the horizon. Requires calibrated drag.
RunResult run(const RobotDesign& design, const Environment& env, const hydro::HydroParams& hydro,
              const SimulationSettings& sim);
RunResult run(const Scenario& sc);

// Metrics from a finished trajectory and its event log. Every stroke start
// and the end of the run are sampled exactly, so this is pure bookkeeping.
Summary summarize(const std::vector<TrajectorySample>& trajectory,
                  const std::vector<actuation::Event>& events, double body_length_m,
                  bool settled);

}  // namespace snapswim::scenario
