#include "snapswim/actuation/pair.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "snapswim/error.hpp"

namespace snapswim::actuation {

std::string_view phase_name(Phase p) {
  switch (p) {
    case Phase::programmed:
      return "programmed";
    case Phase::relaxing:
      return "relaxing";
    case Phase::snapped:
      return "snapped";
    case Phase::reversed:
      return "reversed";
  }
  return "?";
}

void ActuatorPair::validate() const {
  truss.validate();
  forward_muscle.validate();
  if (reverse_muscle) reverse_muscle->validate();
  if (!(shuttle_position_mm >= 0.0 && shuttle_position_mm <= truss.travel_mm())) {
    throw DomainError(fmt::format("shuttle position {} mm outside [0, {}]", shuttle_position_mm,
                                  truss.travel_mm()));
  }
  if (!(recovery_s > 0.0) || !std::isfinite(recovery_s)) {
    throw DomainError(fmt::format("recovery time must be positive, got {}", recovery_s));
  }
}

namespace {

constexpr int kGrid = muscle::kTriggerGridPoints;

// Force balance along one push. The shuttle travels from `from` (x = -1)
// toward the unstable root `to` (x = 0); `sense` flips the element load so
// that a positive value always resists the push.
struct Push {
  const mech::TrussGeometry& geom;
  double force;  // blocked force of the pushing muscle
  double from;
  double to;
  double sense;

  double v_at(double x) const { return from + (x + 1.0) * (to - from); }
  double x_at(double v) const { return std::clamp((v - from) / (to - from) - 1.0, -1.0, 0.0); }

  // Net push at x for recovery extent e: muscle contact force minus resistance.
  double net(double x, double e) const {
    const double muscle = force * std::max(0.0, e - 1.0 - x);
    return muscle - sense * mech::load_displacement(geom, v_at(x));
  }

  // Largest position reachable from x0: the first balance point ahead, or
  // nullopt when the muscle pushes past the unstable root.
  std::optional<double> stall(double x0, double e) const {
    if (!(net(x0, e) > 0.0)) return x0;
    for (int j = 0; j < kGrid - 1; ++j) {
      const double xj = -1.0 + static_cast<double>(j) / (kGrid - 1);
      if (xj <= x0) continue;
      if (net(xj, e) > 0.0) continue;
      double lo = std::max(x0, -1.0 + static_cast<double>(j - 1) / (kGrid - 1));
      double hi = xj;
      for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (net(mid, e) > 0.0) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      return hi;
    }
    return std::nullopt;
  }
};

void check_extent(double extent) {
  if (!(extent >= 0.0 && extent <= 1.0)) {
    throw DomainError(fmt::format("muscle extent {} outside [0, 1]", extent));
  }
}

}  // namespace

Advance advance_pair(const ActuatorPair& pair, double extent, const mech::BistableProfile& profile,
                     int pair_id, double time_s) {
  if (pair.phase != Phase::relaxing) {
    throw std::logic_error(fmt::format("advance_pair: pair {} is {}, expected relaxing", pair_id,
                                       phase_name(pair.phase)));
  }
  check_extent(extent);
  const Push push{profile.geometry, muscle::recovery_force(pair.forward_muscle),
                  profile.first_stable(), profile.unstable(), 1.0};
  Advance out{pair, std::nullopt};
  const auto x = push.stall(push.x_at(pair.shuttle_position_mm), extent);
  if (x) {
    out.pair.shuttle_position_mm = push.v_at(*x);
    return out;
  }
  out.pair.shuttle_position_mm = profile.second_stable();
  out.pair.phase = Phase::snapped;
  out.snap = SnapEvent{time_s, pair_id, Direction::forward, profile.reverse_energy_barrier,
                       profile.forward_stroke()};
  return out;
}

Advance advance_reverse(const ActuatorPair& pair, double extent,
                        const mech::BistableProfile& profile, int pair_id, double time_s) {
  if (pair.phase != Phase::snapped) {
    throw std::logic_error(fmt::format("advance_reverse: pair {} is {}, expected snapped",
                                       pair_id, phase_name(pair.phase)));
  }
  if (!pair.reverse_muscle) {
    throw std::logic_error(fmt::format("advance_reverse: pair {} has no reverse muscle", pair_id));
  }
  check_extent(extent);
  const Push push{profile.geometry, muscle::recovery_force(*pair.reverse_muscle),
                  profile.second_stable(), profile.unstable(), -1.0};
  Advance out{pair, std::nullopt};
  const auto x = push.stall(push.x_at(pair.shuttle_position_mm), extent);
  if (x) {
    out.pair.shuttle_position_mm = push.v_at(*x);
    return out;
  }
  out.pair.shuttle_position_mm = profile.first_stable();
  out.pair.phase = Phase::reversed;
  out.pair.forward_reprogrammed = true;
  out.snap = SnapEvent{time_s, pair_id, Direction::reverse, profile.forward_energy_barrier,
                       profile.reverse_stroke()};
  return out;
}

bool chain_condition(const ActuatorPair& rear, const mech::BistableProfile& rear_profile,
                     const ActuatorPair& front, const mech::BistableProfile& front_profile) {
  const double f1 = muscle::recovery_force(rear.forward_muscle);
  const double f2 = muscle::recovery_force(front.forward_muscle);
  const double bi_max = std::abs(rear_profile.forward_peak_force);
  const double bi_min = std::abs(front_profile.reverse_peak_force);
  return f1 + bi_max > f2 && f2 > bi_min;
}

bool chain_condition(const ActuatorPair& rear, const ActuatorPair& front) {
  return chain_condition(rear, mech::barriers(rear.truss), front, mech::barriers(front.truss));
}

bool reverse_condition(const ActuatorPair& pair, const mech::BistableProfile& profile) {
  if (pair.phase != Phase::snapped) {
    throw std::logic_error(
        fmt::format("reverse_condition: pair is {}, expected snapped", phase_name(pair.phase)));
  }
  if (!pair.reverse_muscle) return false;
  // The forward muscle has followed the shuttle to its printed shape by the
  // time the element sits in its second well, so its residual push is the
  // profile value at x = 0 unless the shuttle is held short of that.
  const double residual = muscle::force_profile(pair.forward_muscle, 0.0);
  return muscle::recovery_force(*pair.reverse_muscle) >
         std::abs(profile.reverse_peak_force) + residual;
}

bool reverse_condition(const ActuatorPair& pair) {
  return reverse_condition(pair, mech::barriers(pair.truss));
}

}  // namespace snapswim::actuation
