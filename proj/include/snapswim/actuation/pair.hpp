#pragma once

// Muscle / bistable-element pair: quasi-static constrained recovery, snap
// detection, and the design predicates for chained and reversing pairs.

#include <optional>
#include <string_view>
#include <vector>

#include "snapswim/fin_slot.hpp"
#include "snapswim/mech/profile.hpp"
#include "snapswim/muscle/muscle.hpp"

namespace snapswim::actuation {

enum class Phase { programmed, relaxing, snapped, reversed };
enum class Direction { forward, reverse };

std::string_view phase_name(Phase p);

struct ActuatorPair {
  mech::TrussGeometry truss;
  muscle::MuscleSpec forward_muscle;
  std::optional<muscle::MuscleSpec> reverse_muscle;
  double shuttle_position_mm = 0.0;
  Phase phase = Phase::programmed;
  std::vector<FinSlot> attached_fins;
  // Time for an active muscle to sweep from its programmed to its printed shape.
  double recovery_s = 2.0;
  // Set once the reverse stroke has pushed the forward muscle back into its
  // programmed shape; it is not re-armed.
  bool forward_reprogrammed = false;

  void validate() const;
  friend bool operator==(const ActuatorPair&, const ActuatorPair&) = default;
};

struct SnapEvent {
  double time_s = 0.0;
  int pair_id = 0;
  Direction direction = Direction::forward;
  double released_energy_nmm = 0.0;
  double stroke_length_mm = 0.0;
};

struct Advance {
  ActuatorPair pair;
  std::optional<SnapEvent> snap;
};

// Moves the shuttle to the first force balance ahead of it for a forward
// muscle at normalized recovery `extent`; snaps to the second stable root when
// no balance remains before the unstable root. Requires phase == relaxing.
Advance advance_pair(const ActuatorPair& pair, double extent, const mech::BistableProfile& profile,
                     int pair_id = 0, double time_s = 0.0);

// Reverse counterpart: the reverse muscle pushes a snapped pair back toward
// the first stable root. Requires phase == snapped and a reverse muscle.
Advance advance_reverse(const ActuatorPair& pair, double extent,
                        const mech::BistableProfile& profile, int pair_id = 0,
                        double time_s = 0.0);

// F_Act,1 + |F_Bi,max| > F_Act,2 > |F_Bi,min| for a rear pair driving a front
// pair in series. F_Bi,max is the forward peak of the rear element, F_Bi,min
// the reverse peak of the front element.
bool chain_condition(const ActuatorPair& rear, const ActuatorPair& front);
bool chain_condition(const ActuatorPair& rear, const mech::BistableProfile& rear_profile,
                     const ActuatorPair& front, const mech::BistableProfile& front_profile);

// Reverse muscle force exceeds |F_Bi,min| plus what is left of the forward
// muscle's push at the snapped position. Requires phase == snapped.
bool reverse_condition(const ActuatorPair& pair);
bool reverse_condition(const ActuatorPair& pair, const mech::BistableProfile& profile);

}  // namespace snapswim::actuation
