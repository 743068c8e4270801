#pragma once

#include <filesystem>
#include <string>

#include "snapswim/scenario/run.hpp"

namespace snapswim::scenario {

// Flat `key=value` lines; stroke entries are `stroke<N>_<field>=...`.
std::string summary_text(const Summary& s);

// Header `t_s,x_m,y_m,theta_rad,vx,vy,omega,Twater_C`.
std::string trajectory_csv(const std::vector<TrajectorySample>& traj);
std::string event_log(const std::vector<actuation::Event>& events);
// Minimal path plot in body lengths with one marker per snap or release.
std::string trajectory_svg(const RunResult& r, double body_length_m);

// trajectory.csv, events.log, summary.txt, trajectory.svg
void write_outputs(const std::filesystem::path& dir, const RunResult& r, double body_length_m);
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace snapswim::scenario
