#pragma once

// Shared-clock driver for every muscle in a robot: thermal exposure, series
// gating, recovery ramps, snap detection and gripper release.

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "snapswim/actuation/pair.hpp"
#include "snapswim/muscle/material.hpp"

namespace snapswim::actuation {

// Piecewise-linear water temperature, held constant outside its points.
class ThermalSchedule {
 public:
  ThermalSchedule() = default;
  explicit ThermalSchedule(std::vector<std::pair<double, double>> points);
  static ThermalSchedule constant(double temp_c) { return ThermalSchedule({{0.0, temp_c}}); }

  double at(double t_s) const;
  // Highest temperature reached at or after t_s.
  double max_from(double t_s) const;
  const std::vector<std::pair<double, double>>& points() const { return points_; }

  friend bool operator==(const ThermalSchedule&, const ThermalSchedule&) = default;

 private:
  std::vector<std::pair<double, double>> points_;
};

struct Gripper {
  muscle::Material material;
  double cargo_mass_kg = 0.0;
  bool held = true;

  friend bool operator==(const Gripper&, const Gripper&) = default;
};

enum class Topology { independent, series };
std::string_view topology_name(Topology t);

enum class EventKind { muscle_active, snap, cargo_release, reverse_snap };
std::string_view event_name(EventKind k);

struct Event {
  double time_s = 0.0;
  EventKind kind = EventKind::muscle_active;
  int pair_id = -1;  // -1 for the gripper
  double energy_nmm = 0.0;
  std::optional<SnapEvent> snap;  // set for snap and reverse_snap
};

// `t_s=<t> event=<kind> pair=<id> energy_Nmm=<e>`
std::string format_event(const Event& e);

class ActuationSequencer {
 public:
  ActuationSequencer(std::vector<ActuatorPair> pairs, std::optional<Gripper> gripper,
                     Topology topology);

  // Advances every muscle over [t, t + dt] with the water at the midpoint
  // temperature; returns events stamped t + dt in deterministic order.
  std::vector<Event> step(double t_s, double dt_s, const ThermalSchedule& water);

  // True once nothing can happen any more at or after t_s under `water`.
  bool quiescent(double t_s, const ThermalSchedule& water) const;

  const std::vector<ActuatorPair>& pairs() const { return pairs_; }
  const std::vector<mech::BistableProfile>& profiles() const { return profiles_; }
  const std::optional<Gripper>& gripper() const { return gripper_; }

 private:
  struct Clock {
    double progress = 0.0;  // accumulated exposure / activation time
    bool gate_open = false;
    bool active = false;
    double extent = 0.0;
    bool stalled = false;   // reached full extent without snapping
  };

  static bool accumulate(Clock& c, const muscle::MuscleSpec& spec, double temp_c, double dt_s);
  bool clock_pending(const Clock& c, const muscle::MuscleSpec& spec, double max_temp) const;

  std::vector<ActuatorPair> pairs_;
  std::vector<mech::BistableProfile> profiles_;
  std::vector<Clock> forward_;
  std::vector<Clock> reverse_;
  std::optional<Gripper> gripper_;
  Topology topology_;
};

}  // namespace snapswim::actuation
