#include "snapswim/hydro/hydro.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "snapswim/error.hpp"

namespace snapswim::hydro {

bool BodyState::finite() const {
  return std::isfinite(x) && std::isfinite(y) && std::isfinite(theta) && std::isfinite(vx) &&
         std::isfinite(vy) && std::isfinite(omega);
}

bool BodyState::at_rest() const {
  return std::abs(vx) < kRestSpeed && std::abs(vy) < kRestSpeed && std::abs(omega) < kRestSpeed;
}

bool HydroParams::calibrated() const {
  return std::isfinite(body_drag_coeff) && std::isfinite(rotational_drag_coeff);
}

void HydroParams::validate(bool require_calibrated) const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw DomainError(fmt::format("{} must be positive and finite, got {}", name, v));
    }
  };
  positive(body_mass_kg, "body mass");
  positive(rotational_inertia_kgm2, "rotational inertia");
  positive(water_density, "water density");
  positive(reference_area_m2, "reference area");
  positive(snap_duration_s, "snap duration");
  if (!(rotational_damping >= 0.0) || !std::isfinite(rotational_damping)) {
    throw DomainError(fmt::format("rotational damping must be >= 0, got {}", rotational_damping));
  }
  if (!(efficiency > 0.0 && efficiency <= 1.0)) {
    throw DomainError(fmt::format("efficiency must lie in (0, 1], got {}", efficiency));
  }
  if (require_calibrated) {
    if (!calibrated()) throw CalibrationError("hydro parameters are not calibrated");
    positive(body_drag_coeff, "body drag coefficient");
    positive(rotational_drag_coeff, "rotational drag coefficient");
  }
}

Impulse snap_impulse(const actuation::SnapEvent& event, const std::vector<Fin>& fins,
                     const HydroParams& p) {
  if (!(event.released_energy_nmm > 0.0)) {
    throw DomainError(fmt::format("snap energy must be positive, got {}", event.released_energy_nmm));
  }
  const double v_fin = event.stroke_length_mm * 1e-3 / p.snap_duration_s;
  const double sense = event.direction == actuation::Direction::forward ? 1.0 : -1.0;
  Impulse j;
  for (const Fin& f : fins) {
    if (!f.present) continue;
    const double fx = sense * 0.5 * p.water_density * f.paddle_drag_coeff * f.area_m2 * v_fin * v_fin;
    j.jx += fx * p.snap_duration_s;
    j.angular += -f.offset_y_m * fx * p.snap_duration_s;
  }
  const double ke = (j.jx * j.jx + j.jy * j.jy) / (2.0 * p.body_mass_kg) +
                    j.angular * j.angular / (2.0 * p.rotational_inertia_kgm2);
  const double budget = p.efficiency * event.released_energy_nmm * 1e-3;
  if (ke > budget) {
    const double s = std::sqrt(budget / ke);
    j.jx *= s;
    j.jy *= s;
    j.angular *= s;
  }
  return j;
}

ThrustWindow thrust_window(double t_start, const Impulse& j, const HydroParams& p) {
  const double d = p.snap_duration_s;
  return {t_start, t_start + d, j.jx / d, j.jy / d, j.angular / d};
}

Load load_over(const std::vector<ThrustWindow>& windows, double t, double dt) {
  Load out;
  for (const auto& w : windows) {
    const double overlap = std::min(t + dt, w.t_end) - std::max(t, w.t_start);
    if (overlap <= 0.0) continue;
    const double frac = overlap / dt;
    out.fx += frac * w.fx;
    out.fy += frac * w.fy;
    out.torque += frac * w.torque;
  }
  return out;
}

BodyState step(const BodyState& s, const HydroParams& p, const Load& load, double dt) {
  const double m = p.body_mass_kg;
  const double inertia = p.rotational_inertia_kgm2;
  const double c = 0.5 * p.water_density * p.body_drag_coeff * p.reference_area_m2;
  double fx = 0.0;
  double fy = 0.0;
  if (load.fx != 0.0 || load.fy != 0.0) {
    const double ct = std::cos(s.theta);
    const double st = std::sin(s.theta);
    fx = load.fx * ct - load.fy * st;
    fy = load.fx * st + load.fy * ct;
  }

  BodyState n = s;
  const double speed = std::sqrt(s.vx * s.vx + s.vy * s.vy);
  const double lin = 1.0 + dt * c * speed / m;
  n.vx = (s.vx + dt * fx / m) / lin;
  n.vy = (s.vy + dt * fy / m) / lin;
  const double ang =
      1.0 + dt * (p.rotational_drag_coeff * std::abs(s.omega) + p.rotational_damping) / inertia;
  n.omega = (s.omega + dt * load.torque / inertia) / ang;
  // Spin under linear damping decays exponentially into subnormal range,
  // which is slow to compute and physically meaningless.
  if (std::abs(n.omega) < kNegligibleRate) n.omega = 0.0;
  if (std::abs(n.vx) < kNegligibleRate) n.vx = 0.0;
  if (std::abs(n.vy) < kNegligibleRate) n.vy = 0.0;
  n.x = s.x + dt * n.vx;
  n.y = s.y + dt * n.vy;
  n.theta = s.theta + dt * n.omega;
  if (!n.finite()) {
    throw SimulationDiverged(fmt::format(
        "non-finite body state (x={}, y={}, theta={}, vx={}, vy={}, omega={})", n.x, n.y, n.theta,
        n.vx, n.vy, n.omega));
  }
  return n;
}

std::vector<Sample> integrate(const BodyState& state, const HydroParams& params,
                              const std::vector<ThrustWindow>& thrusts, double dt, double horizon) {
  if (!(dt > 0.0 && dt <= kMaxStepS + 1e-15)) {
    throw DomainError(fmt::format("time step {} s outside (0, {}]", dt, kMaxStepS));
  }
  params.validate();
  double last_thrust = 0.0;
  for (const auto& w : thrusts) last_thrust = std::max(last_thrust, w.t_end);

  std::vector<Sample> out{{0.0, state}};
  BodyState s = state;
  for (long k = 0;; ++k) {
    const double t = static_cast<double>(k) * dt;
    if (t >= horizon) break;
    if (t >= last_thrust && s.at_rest()) break;
    s = step(s, params, load_over(thrusts, t, dt), dt);
    out.push_back({static_cast<double>(k + 1) * dt, s});
  }
  return out;
}

}  // namespace snapswim::hydro
