#include "snapswim/mission/synthesize.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include <fmt/format.h>

#include "snapswim/actuation/pair.hpp"
#include "snapswim/parallel.hpp"

namespace snapswim::mission {

using scenario::RobotDesign;

int CandidateKey::fins() const {
  return static_cast<int>(std::count_if(fin_owner.begin(), fin_owner.end(),
                                        [](int o) { return o >= 0; }));
}

namespace {

std::vector<int> present_slots(const CandidateKey& k) {
  std::vector<int> out;
  for (int s = 0; s < 4; ++s) {
    if (k.fin_owner[s] >= 0) out.push_back(s);
  }
  return out;
}

}  // namespace

bool tie_break_less(const CandidateKey& a, const CandidateKey& b) {
  const auto ka = std::make_tuple(a.pairs(), a.fins(), present_slots(a), a.fin_owner,
                                  a.thickness_mm, a.material, a.reverse_thickness_mm.has_value(),
                                  a.reverse_thickness_mm.value_or(0.0),
                                  a.reverse_material.value_or(""), a.gripper);
  const auto kb = std::make_tuple(b.pairs(), b.fins(), present_slots(b), b.fin_owner,
                                  b.thickness_mm, b.material, b.reverse_thickness_mm.has_value(),
                                  b.reverse_thickness_mm.value_or(0.0),
                                  b.reverse_material.value_or(""), b.gripper);
  return ka < kb;
}

std::string describe(const CandidateKey& k) {
  std::string fins;
  for (FinSlot s : kAllFinSlots) {
    const int o = k.fin_owner[static_cast<int>(s)];
    if (o < 0) continue;
    if (!fins.empty()) fins += ',';
    fins += fmt::format("{}:{}", slot_name(s), o);
  }
  std::string out = fmt::format("pairs={} fins={}", k.pairs(), fins);
  for (int i = 0; i < k.pairs(); ++i) {
    out += fmt::format(" pair{}={}mm/{}", i, k.thickness_mm[i], k.material[i]);
  }
  if (k.reverse_thickness_mm) {
    out += fmt::format(" reverse={}mm/{}", *k.reverse_thickness_mm, *k.reverse_material);
  }
  if (k.gripper) out += " gripper";
  return out;
}

scenario::Environment mission_environment(const Mission& m) {
  scenario::Environment env;
  if (m.has_drop() || m.has_return()) {
    env.water = actuation::ThermalSchedule({{0.0, 35.0}, {6000.0, 35.0}, {6300.0, 60.0}});
  } else {
    env.water = actuation::ThermalSchedule::constant(60.0);
  }
  return env;
}

scenario::Scenario build_scenario(const CandidateKey& key, const Mission& m,
                                  const SynthesisOptions& opt) {
  const auto db = muscle::MaterialDb::builtin();
  scenario::Scenario sc;
  sc.name = "synthesized";
  RobotDesign& d = sc.design;
  for (int i = 0; i < key.pairs(); ++i) {
    actuation::ActuatorPair p;
    p.truss = scenario::reference_truss();
    p.forward_muscle.beam_thickness_mm = key.thickness_mm[i];
    p.forward_muscle.material = db.get(key.material[i]);
    if (i == 0 && key.reverse_thickness_mm) {
      muscle::MuscleSpec r;
      r.beam_thickness_mm = *key.reverse_thickness_mm;
      r.material = db.get(*key.reverse_material);
      r.orientation = muscle::Orientation::reverse_driver;
      p.reverse_muscle = r;
    }
    d.pairs.push_back(std::move(p));
  }
  for (FinSlot s : kAllFinSlots) {
    const int owner = key.fin_owner[static_cast<int>(s)];
    d.fin(s) = scenario::reference_fin(s, owner >= 0);
    if (owner >= 0) d.pairs[owner].attached_fins.push_back(s);
  }
  d.topology = key.pairs() > 1 ? actuation::Topology::series : actuation::Topology::independent;
  if (key.gripper) {
    d.gripper = actuation::Gripper{db.get(opt.gripper_material), opt.cargo_mass_kg, true};
  }
  sc.environment = mission_environment(m);
  sc.hydro = opt.hydro;
  sc.simulation = opt.simulation;
  return sc;
}

CandidateKey key_of(const RobotDesign& d) {
  CandidateKey k;
  for (std::size_t i = 0; i < d.pairs.size(); ++i) {
    const auto& p = d.pairs[i];
    k.thickness_mm.push_back(p.forward_muscle.beam_thickness_mm);
    k.material.push_back(p.forward_muscle.material.name);
    for (FinSlot s : p.attached_fins) k.fin_owner[static_cast<int>(s)] = static_cast<int>(i);
    if (p.reverse_muscle) {
      k.reverse_thickness_mm = p.reverse_muscle->beam_thickness_mm;
      k.reverse_material = p.reverse_muscle->material.name;
    }
  }
  k.gripper = d.gripper.has_value();
  return k;
}

bool feasible(const CandidateKey& key, const RobotDesign& d) {
  std::vector<mech::BistableProfile> profiles;
  for (std::size_t i = 0; i < d.pairs.size(); ++i) {
    if (d.pairs[i].attached_fins.empty()) return false;
    profiles.push_back(mech::barriers(d.pairs[i].truss));
    if (!muscle::can_trigger(d.pairs[i].forward_muscle, profiles.back())) return false;
  }
  if (d.topology == actuation::Topology::series) {
    for (std::size_t i = 0; i + 1 < d.pairs.size(); ++i) {
      if (!actuation::chain_condition(d.pairs[i], profiles[i], d.pairs[i + 1], profiles[i + 1])) {
        return false;
      }
    }
  }
  if (key.reverse_thickness_mm) {
    actuation::ActuatorPair snapped = d.pairs[0];
    snapped.phase = actuation::Phase::snapped;
    snapped.shuttle_position_mm = profiles[0].second_stable();
    if (!muscle::can_trigger_reverse(*snapped.reverse_muscle, profiles[0])) return false;
    if (!actuation::reverse_condition(snapped, profiles[0])) return false;
  }
  return true;
}

double score(const Mission& m, const scenario::RunResult& r, double body_length_m,
             double angle_scale) {
  (void)body_length_m;  // stroke distances are already in body lengths
  struct Action {
    actuation::EventKind kind;
    const scenario::Stroke* stroke;
  };
  std::vector<Action> actions;
  std::size_t stroke = 0;
  for (const auto& e : r.events) {
    switch (e.kind) {
      case actuation::EventKind::snap:
      case actuation::EventKind::reverse_snap:
        actions.push_back({e.kind, &r.summary.strokes.at(stroke++)});
        break;
      case actuation::EventKind::cargo_release:
        actions.push_back({e.kind, nullptr});
        break;
      case actuation::EventKind::muscle_active:
        break;
    }
  }
  double total = 0.0;
  const std::size_t n = std::max(actions.size(), m.statements.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (i >= actions.size() || i >= m.statements.size()) {
      total += 1.0;
      continue;
    }
    const auto& s = m.statements[i];
    const auto& a = actions[i];
    switch (s.kind) {
      case Kind::forward:
        if (a.kind != actuation::EventKind::snap) {
          total += 1.0;
        } else {
          total += std::abs(a.stroke->distance_bl - s.value) +
                   std::abs(a.stroke->dtheta_deg) / angle_scale;
        }
        break;
      case Kind::turn:
        if (a.kind != actuation::EventKind::snap) {
          total += 1.0;
        } else {
          total += std::abs(a.stroke->dtheta_deg - s.value) / angle_scale;
        }
        break;
      case Kind::drop:
        total += a.kind == actuation::EventKind::cargo_release ? 0.0 : 1.0;
        break;
      case Kind::return_home:
        total += a.kind == actuation::EventKind::reverse_snap ? 0.0 : 1.0;
        break;
    }
  }
  return total;
}

std::vector<CandidateKey> enumerate(const Mission& m) {
  std::vector<CandidateKey> out;
  const bool ret = m.has_return();
  const bool drop = m.has_drop();
  constexpr int rear_left = static_cast<int>(FinSlot::rear_left);
  constexpr int rear_right = static_cast<int>(FinSlot::rear_right);

  auto with_extras = [&](CandidateKey k) {
    k.gripper = drop;
    if (!ret) {
      out.push_back(std::move(k));
      return;
    }
    for (double rt : kThicknessesMm) {
      for (auto rm : kMaterials) {
        k.reverse_thickness_mm = rt;
        k.reverse_material = std::string(rm);
        out.push_back(k);
      }
    }
  };

  // One pair drives rear fins only.
  for (int mask = 1; mask < 4; ++mask) {
    for (double t : kThicknessesMm) {
      for (auto mat : kMaterials) {
        CandidateKey k;
        if (mask & 1) k.fin_owner[rear_left] = 0;
        if (mask & 2) k.fin_owner[rear_right] = 0;
        k.thickness_mm = {t};
        k.material = {std::string(mat)};
        with_extras(std::move(k));
      }
    }
  }
  // Reverse strokes are only catalogued for single-pair robots.
  if (ret) return out;
  // Two pairs in series: rear slots on pair 0, front slots on pair 1.
  for (int mask = 1; mask < 16; ++mask) {
    for (double t0 : kThicknessesMm) {
      for (double t1 : kThicknessesMm) {
        for (auto m0 : kMaterials) {
          for (auto m1 : kMaterials) {
            CandidateKey k;
            for (FinSlot s : kAllFinSlots) {
              const int i = static_cast<int>(s);
              if (mask & (1 << i)) {
                k.fin_owner[i] = (s == FinSlot::front_left || s == FinSlot::front_right) ? 1 : 0;
              }
            }
            k.thickness_mm = {t0, t1};
            k.material = {std::string(m0), std::string(m1)};
            with_extras(std::move(k));
          }
        }
      }
    }
  }
  return out;
}

SynthesisReport synthesize(const Mission& m, const SynthesisOptions& opt) {
  opt.hydro.validate();
  const auto keys = enumerate(m);
  std::vector<DesignCandidate> candidates;
  for (const auto& k : keys) {
    auto sc = build_scenario(k, m, opt);
    if (!feasible(k, sc.design)) continue;
    candidates.push_back({k, std::move(sc), 0.0, {}});
  }
  parallel_for(candidates.size(), opt.workers, [&](std::size_t i) {
    auto& c = candidates[i];
    const auto r = scenario::run(c.scenario);
    c.score = score(m, r, c.scenario.design.body_length_m, opt.angle_scale_deg);
    c.summary = r.summary;
  });

  SynthesisReport report;
  report.enumerated = keys.size();
  report.simulated = candidates.size();
  const auto best = std::min_element(
      candidates.begin(), candidates.end(), [](const DesignCandidate& a, const DesignCandidate& b) {
        if (a.score != b.score) return a.score < b.score;
        return tie_break_less(a.key, b.key);
      });
  if (best == candidates.end() || !(best->score < opt.threshold)) {
    throw InfeasibleMission(fmt::format(
        "no design realizes the mission: best score {} (threshold {}) over {} candidates",
        best == candidates.end() ? NAN : best->score, opt.threshold, candidates.size()));
  }
  report.best = *best;
  return report;
}

std::string emit_design(const DesignCandidate& c) {
  return fmt::format("# {}\n# score={:.9g}\n", describe(c.key), c.score) +
         scenario::emit_scenario(c.scenario);
}

}  // namespace snapswim::mission
