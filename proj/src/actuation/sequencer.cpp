#include "snapswim/actuation/sequencer.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "snapswim/error.hpp"

namespace snapswim::actuation {

ThermalSchedule::ThermalSchedule(std::vector<std::pair<double, double>> points)
    : points_(std::move(points)) {
  if (points_.empty()) throw DomainError("temperature schedule needs at least one point");
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (!std::isfinite(points_[i].first) || !std::isfinite(points_[i].second)) {
      throw DomainError("temperature schedule values must be finite");
    }
    if (i > 0 && !(points_[i].first > points_[i - 1].first)) {
      throw DomainError("temperature schedule times must be strictly increasing");
    }
  }
}

double ThermalSchedule::at(double t) const {
  if (points_.empty()) throw DomainError("empty temperature schedule");
  if (t <= points_.front().first) return points_.front().second;
  if (t >= points_.back().first) return points_.back().second;
  const auto it = std::upper_bound(points_.begin(), points_.end(), t,
                                   [](double v, const auto& p) { return v < p.first; });
  const auto& [t1, c1] = *it;
  const auto& [t0, c0] = *(it - 1);
  return c0 + (c1 - c0) * (t - t0) / (t1 - t0);
}

double ThermalSchedule::max_from(double t) const {
  double m = at(t);
  for (const auto& [ti, ci] : points_) {
    if (ti > t) m = std::max(m, ci);
  }
  return m;
}

std::string_view topology_name(Topology t) {
  return t == Topology::series ? "series" : "independent";
}

std::string_view event_name(EventKind k) {
  switch (k) {
    case EventKind::muscle_active:
      return "MuscleActive";
    case EventKind::snap:
      return "Snap";
    case EventKind::cargo_release:
      return "CargoRelease";
    case EventKind::reverse_snap:
      return "ReverseSnap";
  }
  return "?";
}

std::string format_event(const Event& e) {
  return fmt::format("t_s={:.6f} event={} pair={} energy_Nmm={:.6f}", e.time_s, event_name(e.kind),
                     e.pair_id, e.energy_nmm);
}

ActuationSequencer::ActuationSequencer(std::vector<ActuatorPair> pairs,
                                       std::optional<Gripper> gripper, Topology topology)
    : pairs_(std::move(pairs)), gripper_(std::move(gripper)), topology_(topology) {
  if (pairs_.empty()) throw DomainError("a robot needs at least one actuator pair");
  if (topology_ == Topology::series && pairs_.size() < 2) {
    throw DomainError("series topology needs at least two pairs");
  }
  profiles_.reserve(pairs_.size());
  for (auto& p : pairs_) {
    p.validate();
    profiles_.push_back(mech::barriers(p.truss));
  }
  forward_.resize(pairs_.size());
  reverse_.resize(pairs_.size());
  for (std::size_t i = 0; i < pairs_.size(); ++i) {
    forward_[i].gate_open = topology_ == Topology::independent || i == 0;
    reverse_[i].gate_open = true;
    if (pairs_[i].phase != Phase::programmed) forward_[i].active = true;
  }
}

bool ActuationSequencer::accumulate(Clock& c, const muscle::MuscleSpec& spec, double temp_c,
                                    double dt_s) {
  const auto tau = muscle::activation_time(spec, temp_c);
  if (!tau) return false;
  if (*tau <= 0.0) {
    c.progress = 1.0;
  } else {
    c.progress += dt_s / *tau;
  }
  return c.progress >= 1.0;
}

std::vector<Event> ActuationSequencer::step(double t, double dt, const ThermalSchedule& water) {
  std::vector<Event> events;
  const double t_end = t + dt;
  const double temp_mid = water.at(t + 0.5 * dt);
  std::vector<std::size_t> gates_to_open;

  for (std::size_t i = 0; i < pairs_.size(); ++i) {
    ActuatorPair& pair = pairs_[i];
    const auto& profile = profiles_[i];
    const int id = static_cast<int>(i);
    Clock& fwd = forward_[i];
    Clock& rev = reverse_[i];

    // Forward muscle: ramp if already active, otherwise accumulate exposure.
    if (pair.phase == Phase::relaxing && !fwd.stalled) {
      fwd.extent = std::min(1.0, fwd.extent + dt / pair.recovery_s);
      auto adv = advance_pair(pair, fwd.extent, profile, id, t_end);
      pair = std::move(adv.pair);
      if (adv.snap) {
        events.push_back({t_end, EventKind::snap, id, adv.snap->released_energy_nmm, adv.snap});
        if (topology_ == Topology::series && i + 1 < pairs_.size()) gates_to_open.push_back(i + 1);
      } else if (fwd.extent >= 1.0) {
        fwd.stalled = true;
      }
    } else if (pair.phase == Phase::programmed && fwd.gate_open && !fwd.active) {
      if (accumulate(fwd, pair.forward_muscle, temp_mid, dt)) {
        fwd.active = true;
        pair.phase = Phase::relaxing;
        events.push_back({t_end, EventKind::muscle_active, id, 0.0, std::nullopt});
      }
    }

    if (!pair.reverse_muscle || pair.phase == Phase::reversed) continue;
    // The reverse muscle heats from the start but only meets the shuttle
    // once the forward snap has carried it into contact.
    if (rev.active) {
      if (pair.phase == Phase::snapped && !rev.stalled) {
        rev.extent = std::min(1.0, rev.extent + dt / pair.recovery_s);
        auto adv = advance_reverse(pair, rev.extent, profile, id, t_end);
        pair = std::move(adv.pair);
        if (adv.snap) {
          events.push_back(
              {t_end, EventKind::reverse_snap, id, adv.snap->released_energy_nmm, adv.snap});
        } else if (rev.extent >= 1.0) {
          rev.stalled = true;
        }
      }
    } else if (accumulate(rev, *pair.reverse_muscle, temp_mid, dt)) {
      rev.active = true;
      events.push_back({t_end, EventKind::muscle_active, id, 0.0, std::nullopt});
    }
  }
  for (std::size_t i : gates_to_open) forward_[i].gate_open = true;

  if (gripper_ && gripper_->held && water.at(t_end) >= gripper_->material.glass_transition_c) {
    gripper_->held = false;
    events.push_back({t_end, EventKind::cargo_release, -1, 0.0, std::nullopt});
  }
  return events;
}

bool ActuationSequencer::clock_pending(const Clock& c, const muscle::MuscleSpec& spec,
                                       double max_temp) const {
  if (c.active) return !c.stalled;
  return max_temp >= spec.material.glass_transition_c;
}

bool ActuationSequencer::quiescent(double t, const ThermalSchedule& water) const {
  const double max_temp = water.max_from(t);
  // Pairs are scanned in order, so a gated pair is only reached once its
  // predecessor can no longer snap.
  for (std::size_t i = 0; i < pairs_.size(); ++i) {
    const ActuatorPair& pair = pairs_[i];
    const Clock& fwd = forward_[i];
    bool may_snap = false;
    switch (pair.phase) {
      case Phase::programmed:
        may_snap = fwd.gate_open && clock_pending(fwd, pair.forward_muscle, max_temp);
        break;
      case Phase::relaxing:
        may_snap = !fwd.stalled;
        break;
      case Phase::snapped:
      case Phase::reversed:
        break;
    }
    if (may_snap) return false;
    if (pair.reverse_muscle && pair.phase == Phase::snapped &&
        clock_pending(reverse_[i], *pair.reverse_muscle, max_temp)) {
      return false;
    }
  }
  if (gripper_ && gripper_->held && max_temp >= gripper_->material.glass_transition_c) {
    return false;
  }
  return true;
}

}  // namespace snapswim::actuation
