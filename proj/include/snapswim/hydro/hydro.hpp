#pragma once

// Planar rigid-body swimmer. World frame x/y in m, heading CCW from +x.
// Body frame: +x toward the head, +y to the left.

#include <array>
#include <limits>
#include <vector>

#include "snapswim/actuation/pair.hpp"
#include "snapswim/fin_slot.hpp"

namespace snapswim::hydro {

inline constexpr double kRestSpeed = 1e-6;
inline constexpr double kMaxStepS = 0.010;
// Velocities below this are set to zero.
inline constexpr double kNegligibleRate = 1e-200;

struct BodyState {
  double x = 0.0, y = 0.0, theta = 0.0;
  double vx = 0.0, vy = 0.0, omega = 0.0;

  bool finite() const;
  bool at_rest() const;
};

struct Fin {
  FinSlot slot = FinSlot::rear_left;
  double offset_x_m = 0.0;
  double offset_y_m = 0.0;
  double area_m2 = 0.0;
  double paddle_drag_coeff = 0.0;
  bool present = false;

  friend bool operator==(const Fin&, const Fin&) = default;
};

struct HydroParams {
  double body_mass_kg = 0.05;
  double rotational_inertia_kgm2 = 4.5e-5;
  double water_density = 1000.0;
  // Fitted by calibration; NaN until then.
  double body_drag_coeff = std::numeric_limits<double>::quiet_NaN();
  double rotational_drag_coeff = std::numeric_limits<double>::quiet_NaN();
  // Linear yaw damping, N*m*s; settles residual spin that quadratic drag
  // alone leaves decaying as 1/t.
  double rotational_damping = 9e-6;
  double reference_area_m2 = 3e-3;
  double snap_duration_s = 0.05;
  double efficiency = 0.5;

  bool calibrated() const;
  // Throws DomainError on non-positive or non-finite values; drag
  // coefficients are only checked when `require_calibrated`.
  void validate(bool require_calibrated = true) const;
};

// Body-frame impulse (N*s) and angular impulse (N*m*s) from one snap.
struct Impulse {
  double jx = 0.0;
  double jy = 0.0;
  double angular = 0.0;
};

// Fin speed is stroke / snap_duration. Each fin pushes water backward on a
// forward snap (thrust +x) and forward on a reverse snap; torque is r x F.
// Scaled down if needed so the kinetic energy imparted from rest does not
// exceed efficiency * released energy.
Impulse snap_impulse(const actuation::SnapEvent& event, const std::vector<Fin>& fins_on_pair,
                     const HydroParams& params);

// Constant body-frame force and torque over [t_start, t_end).
struct ThrustWindow {
  double t_start = 0.0;
  double t_end = 0.0;
  double fx = 0.0;
  double fy = 0.0;
  double torque = 0.0;
};

ThrustWindow thrust_window(double t_start, const Impulse& impulse, const HydroParams& params);

// Sum of window forces over [t, t + dt], weighted by overlap fraction.
struct Load {
  double fx = 0.0, fy = 0.0, torque = 0.0;
};
Load load_over(const std::vector<ThrustWindow>& windows, double t, double dt);

// One semi-implicit step: velocities first with drag linearized at the old
// speed, then positions from the new velocities. Throws SimulationDiverged
// on a non-finite result.
BodyState step(const BodyState& s, const HydroParams& p, const Load& load, double dt);

struct Sample {
  double t = 0.0;
  BodyState state;
};

// Fixed-step integration from `state` at t = 0 until every thrust window has
// ended and the body is at rest, or until the horizon. Samples every step.
std::vector<Sample> integrate(const BodyState& state, const HydroParams& params,
                              const std::vector<ThrustWindow>& thrusts, double dt, double horizon);

}  // namespace snapswim::hydro
