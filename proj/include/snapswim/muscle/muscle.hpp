#pragma once

// Lumped model of a 3D-printed shape-memory muscle (a pair of curved beams).

#include <optional>

#include "snapswim/muscle/material.hpp"

namespace snapswim::mech {
struct BistableProfile;
}

namespace snapswim::muscle {

inline constexpr double kMinThicknessMm = 0.4;
inline constexpr double kMaxThicknessMm = 2.0;
inline constexpr double kAmbientC = 20.0;
// Recovery starts once the beam core is within this margin of T_g.
inline constexpr double kTransitionBandC = 5.0;
inline constexpr int kTriggerGridPoints = 256;

enum class Orientation { forward_driver, reverse_driver };

struct MuscleSpec {
  double beam_thickness_mm = 0.0;
  Material material;
  double programmed_stroke_mm = 6.0;
  Orientation orientation = Orientation::forward_driver;

  void validate() const;
  friend bool operator==(const MuscleSpec&, const MuscleSpec&) = default;
};

// Blocked recovery force, N: linear through (0.6 mm, 0.2 N) and (1.6 mm, 2.1 N).
double recovery_force(const MuscleSpec& spec);
double recovery_force_for_thickness(double thickness_mm);

// Force along the recovery path; x = -1 is the programmed shape, x = 0 the
// printed shape. Decays linearly to zero at the printed shape.
double force_profile(const MuscleSpec& spec, double x);

// Seconds until recovery starts in water held at `water_c`, or nullopt when
// the water never reaches T_g. Conduction into a slab from ambient: the time
// for the core to come within kTransitionBandC of T_g,
//   tau = c * t^2 * ln((T_w - T_amb) / (T_w - T_g + band)).
std::optional<double> activation_time(const MuscleSpec& spec, double water_c);

// Whether F_SMP(x) > F_Bi(x) along the forward sweep (V from the first stable
// root to the unstable root mapped onto x in [-1, 0]), on a 256-point grid.
// The endpoint x = 0 is excluded: both forces vanish there.
bool can_trigger(const MuscleSpec& spec, const mech::BistableProfile& profile);

// Same test for a reverse-driver muscle pushing from the second stable root
// back over the unstable root.
bool can_trigger_reverse(const MuscleSpec& spec, const mech::BistableProfile& profile);

}  // namespace snapswim::muscle
