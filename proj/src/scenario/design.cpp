#include "snapswim/scenario/design.hpp"

#include <cmath>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "snapswim/error.hpp"

namespace snapswim::scenario {

namespace {

constexpr double kFinArea = 1.8e-3;
constexpr double kFinDragCoeff = 2.0;
constexpr double kFrontX = 0.03;
constexpr double kRearX = -0.03;
constexpr double kLateralY = 0.02;

bool is_front(FinSlot s) { return s == FinSlot::front_left || s == FinSlot::front_right; }
bool is_left(FinSlot s) { return s == FinSlot::front_left || s == FinSlot::rear_left; }

using config::format_number;

// Reads a value that must be strictly positive; reports the key's line.
double positive(const config::Section& sec, std::string_view key, double fallback,
                const std::string& source) {
  const double v = sec.number_or(key, fallback);
  if (!(v > 0.0) || !std::isfinite(v)) {
    const auto* e = sec.find(key);
    throw ConfigError(source, e ? e->line : sec.line(), std::string(key),
                      fmt::format("must be positive, got {}", v));
  }
  return v;
}

double positive(const config::Section* sec, std::string_view key, double fallback,
                const std::string& source) {
  return sec ? positive(*sec, key, fallback, source) : fallback;
}

const muscle::Material& material_named(const muscle::MaterialDb& db, const config::Section& sec,
                                       std::string_view key, const std::string& source) {
  const std::string name = sec.string(key);
  if (!db.contains(name)) {
    throw ConfigError(source, sec.find(key)->line, std::string(key),
                      fmt::format("unknown material '{}'", name));
  }
  return db.get(name);
}

}  // namespace

void RobotDesign::validate() const {
  if (!(body_length_m > 0.0) || !(mass_kg > 0.0) || !(rotational_inertia_kgm2 > 0.0)) {
    throw DomainError("body length, mass and inertia must be positive");
  }
  if (pairs.empty()) throw DomainError("a robot needs at least one actuator pair");
  if (topology == actuation::Topology::series && pairs.size() < 2) {
    throw DomainError("series topology needs at least two pairs");
  }
  for (const auto& p : pairs) {
    p.validate();
    for (FinSlot s : p.attached_fins) {
      if (!fin(s).present) {
        throw DomainError(fmt::format("pair drives fin {} which is not present", slot_name(s)));
      }
    }
  }
  for (FinSlot s : kAllFinSlots) {
    const hydro::Fin& f = fin(s);
    if (f.slot != s) throw DomainError("fin table out of slot order");
    if (!f.present) continue;
    int owners = 0;
    for (const auto& p : pairs) {
      for (FinSlot a : p.attached_fins) owners += a == s ? 1 : 0;
    }
    if (owners != 1) {
      throw DomainError(
          fmt::format("fin {} must be driven by exactly one existing pair", slot_name(s)));
    }
    if (!(f.area_m2 > 0.0) || !(f.paddle_drag_coeff > 0.0)) {
      throw DomainError(fmt::format("fin {} needs positive area and drag coefficient",
                                    slot_name(s)));
    }
    const hydro::Fin& m = fin(mirrored(s));
    if (f.offset_x_m != m.offset_x_m || f.offset_y_m != -m.offset_y_m) {
      throw DomainError(fmt::format("fin {} is not mirrored across the centerline", slot_name(s)));
    }
  }
  if (gripper) {
    gripper->material.validate();
    if (!(gripper->cargo_mass_kg >= 0.0) || !std::isfinite(gripper->cargo_mass_kg)) {
      throw DomainError("cargo mass must be non-negative");
    }
  }
}

std::vector<hydro::Fin> RobotDesign::fins_of_pair(std::size_t pair) const {
  std::vector<hydro::Fin> out;
  for (FinSlot s : pairs.at(pair).attached_fins) out.push_back(fin(s));
  return out;
}

int RobotDesign::fin_count() const {
  int n = 0;
  for (const auto& f : fins) n += f.present ? 1 : 0;
  return n;
}

void SimulationSettings::validate() const {
  if (!(dt_s > 0.0 && dt_s <= hydro::kMaxStepS + 1e-15)) {
    throw DomainError(fmt::format("time step {} s outside (0, {}]", dt_s, hydro::kMaxStepS));
  }
  if (!(horizon_s > 0.0)) throw DomainError("horizon must be positive");
  if (!(sample_interval_s >= 0.0)) throw DomainError("sample interval must be >= 0");
  if (!(rest_fraction > 0.0 && rest_fraction < 1.0)) {
    throw DomainError("rest fraction must lie in (0, 1)");
  }
}

mech::TrussGeometry reference_truss() { return {5.0, 20.0, 4.0, 4.0}; }

hydro::Fin reference_fin(FinSlot slot, bool present) {
  return {slot, is_front(slot) ? kFrontX : kRearX, is_left(slot) ? kLateralY : -kLateralY,
          kFinArea, kFinDragCoeff, present};
}

actuation::ThermalSchedule parse_schedule(const std::string& text) {
  std::vector<std::pair<double, double>> points;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) {
      throw DomainError(fmt::format("schedule point '{}' is not t_s:temp_c", item));
    }
    try {
      std::size_t used = 0;
      const std::string ts = item.substr(0, colon);
      const std::string cs = item.substr(colon + 1);
      const double t = std::stod(ts, &used);
      if (ts.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(ts);
      const double c = std::stod(cs, &used);
      if (cs.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(cs);
      points.emplace_back(t, c);
    } catch (const std::logic_error&) {
      throw DomainError(fmt::format("schedule point '{}' is not t_s:temp_c", item));
    }
  }
  return actuation::ThermalSchedule(std::move(points));
}

std::string format_schedule(const actuation::ThermalSchedule& s) {
  std::string out;
  for (const auto& [t, c] : s.points()) {
    if (!out.empty()) out += ", ";
    out += format_number(t) + ":" + format_number(c);
  }
  return out;
}

Scenario parse_scenario(const config::Document& doc) {
  const std::string& src = doc.source();
  static const std::set<std::string> known_sections = {
      "scenario", "robot", "fins", "gripper", "environment", "hydro", "simulation"};
  for (const auto& sec : doc.sections()) {
    const std::string& n = sec.name();
    if (known_sections.count(n) || n.rfind("pairs.", 0) == 0 || n.rfind("materials.", 0) == 0) {
      continue;
    }
    throw ConfigError(src, sec.line(), n, "unknown section");
  }

  Scenario sc;
  sc.extra_materials = muscle::MaterialDb::from_document(doc);
  muscle::MaterialDb db = muscle::MaterialDb::builtin();
  for (const auto& m : sc.extra_materials.all()) db.add(m);

  if (const auto* s = doc.find("scenario")) {
    s->require_known({"name"});
    sc.name = s->string_or("name", "");
  }

  RobotDesign& d = sc.design;
  const auto& robot = doc.section("robot");
  robot.require_known({"body_length_m", "mass_kg", "rotational_inertia_kgm2", "topology"});
  d.body_length_m = positive(robot, "body_length_m", d.body_length_m, src);
  d.mass_kg = positive(robot, "mass_kg", d.mass_kg, src);
  d.rotational_inertia_kgm2 = positive(robot, "rotational_inertia_kgm2", d.rotational_inertia_kgm2, src);
  const std::string topo = robot.string_or("topology", "independent");
  if (topo == "series") {
    d.topology = actuation::Topology::series;
  } else if (topo != "independent") {
    throw ConfigError(src, robot.find("topology")->line, "topology",
                      "expected 'independent' or 'series'");
  }

  const auto pair_sections = doc.with_prefix("pairs");
  if (pair_sections.empty()) throw ConfigError(src, 0, "pairs.0", "missing required section");
  for (std::size_t i = 0; i < pair_sections.size(); ++i) {
    const auto& ps = *pair_sections[i];
    if (ps.name() != fmt::format("pairs.{}", i)) {
      throw ConfigError(src, ps.line(), ps.name(),
                        fmt::format("pair sections must be numbered 0, 1, ... in order; expected "
                                    "pairs.{}",
                                    i));
    }
    ps.require_known({"rise_mm", "half_span_mm", "support_stiffness_n_per_mm",
                      "joint_stiffness_nmm_per_rad", "thickness_mm", "material",
                      "programmed_stroke_mm", "recovery_s", "reverse_thickness_mm",
                      "reverse_material"});
    actuation::ActuatorPair p;
    const auto ref = reference_truss();
    p.truss.rise_mm = ps.number_or("rise_mm", ref.rise_mm);
    p.truss.half_span_mm = ps.number_or("half_span_mm", ref.half_span_mm);
    p.truss.support_stiffness = ps.number_or("support_stiffness_n_per_mm", ref.support_stiffness);
    p.truss.joint_stiffness = ps.number_or("joint_stiffness_nmm_per_rad", ref.joint_stiffness);
    p.forward_muscle.beam_thickness_mm = ps.number("thickness_mm");
    p.forward_muscle.material = material_named(db, ps, "material", src);
    p.forward_muscle.programmed_stroke_mm = positive(ps, "programmed_stroke_mm", 6.0, src);
    p.recovery_s = positive(ps, "recovery_s", p.recovery_s, src);
    if (ps.has("reverse_thickness_mm") != ps.has("reverse_material")) {
      throw ConfigError(src, ps.line(), ps.name(),
                        "reverse_thickness_mm and reverse_material go together");
    }
    if (ps.has("reverse_thickness_mm")) {
      muscle::MuscleSpec r;
      r.beam_thickness_mm = ps.number("reverse_thickness_mm");
      r.material = material_named(db, ps, "reverse_material", src);
      r.programmed_stroke_mm = p.forward_muscle.programmed_stroke_mm;
      r.orientation = muscle::Orientation::reverse_driver;
      p.reverse_muscle = r;
    }
    try {
      p.validate();
      mech::barriers(p.truss);
    } catch (const std::exception& e) {
      throw ConfigError(src, ps.line(), ps.name(), e.what());
    }
    d.pairs.push_back(std::move(p));
  }

  const auto& fins = doc.section("fins");
  fins.require_known({"front_left", "front_right", "rear_left", "rear_right", "area_m2",
                      "paddle_drag_coeff", "front_x_m", "rear_x_m", "lateral_y_m"});
  const double area = positive(fins, "area_m2", kFinArea, src);
  const double cfin = positive(fins, "paddle_drag_coeff", kFinDragCoeff, src);
  const double front_x = fins.number_or("front_x_m", kFrontX);
  const double rear_x = fins.number_or("rear_x_m", kRearX);
  const double lateral = positive(fins, "lateral_y_m", kLateralY, src);
  for (FinSlot s : kAllFinSlots) {
    hydro::Fin f{s, is_front(s) ? front_x : rear_x, is_left(s) ? lateral : -lateral, area, cfin,
                 false};
    const std::string key(slot_name(s));
    if (fins.has(key)) {
      const long owner = fins.integer(key);
      if (owner < 0 || owner >= static_cast<long>(d.pairs.size())) {
        throw ConfigError(src, fins.find(key)->line, key,
                          fmt::format("refers to pair {} but the robot has {} pairs", owner,
                                      d.pairs.size()));
      }
      f.present = true;
      d.pairs[owner].attached_fins.push_back(s);
    }
    d.fins[static_cast<int>(s)] = f;
  }

  if (const auto* g = doc.find("gripper")) {
    g->require_known({"material", "cargo_mass_kg"});
    actuation::Gripper grip;
    grip.material = material_named(db, *g, "material", src);
    grip.cargo_mass_kg = g->number("cargo_mass_kg");
    if (!(grip.cargo_mass_kg >= 0.0) || !std::isfinite(grip.cargo_mass_kg)) {
      throw ConfigError(src, g->find("cargo_mass_kg")->line, "cargo_mass_kg",
                        "must be non-negative");
    }
    d.gripper = grip;
  }

  const auto& env = doc.section("environment");
  env.require_known({"schedule", "water_density_kg_m3"});
  try {
    sc.environment.water = parse_schedule(env.string("schedule"));
  } catch (const DomainError& e) {
    throw ConfigError(src, env.find("schedule")->line, "schedule", e.what());
  }
  sc.environment.water_density_kg_m3 = positive(env, "water_density_kg_m3", 1000.0, src);

  hydro::HydroParams& h = sc.hydro;
  const auto* hs = doc.find("hydro");
  if (hs) {
    hs->require_known({"reference_area_m2", "snap_duration_s", "efficiency",
                       "rotational_damping_nms", "body_drag_coeff", "rotational_drag_coeff"});
  }
  h.reference_area_m2 = positive(hs, "reference_area_m2", h.reference_area_m2, src);
  h.snap_duration_s = positive(hs, "snap_duration_s", h.snap_duration_s, src);
  h.efficiency = positive(hs, "efficiency", h.efficiency, src);
  if (h.efficiency > 1.0) {
    throw ConfigError(src, hs->find("efficiency")->line, "efficiency", "must not exceed 1");
  }
  if (hs) {
    h.rotational_damping = hs->number_or("rotational_damping_nms", h.rotational_damping);
    if (!(h.rotational_damping >= 0.0)) {
      throw ConfigError(src, hs->find("rotational_damping_nms")->line, "rotational_damping_nms",
                        "must be non-negative");
    }
    if (hs->has("body_drag_coeff")) h.body_drag_coeff = positive(*hs, "body_drag_coeff", 0, src);
    if (hs->has("rotational_drag_coeff")) {
      h.rotational_drag_coeff = positive(*hs, "rotational_drag_coeff", 0, src);
    }
  }
  h.water_density = sc.environment.water_density_kg_m3;
  h.body_mass_kg = d.mass_kg;
  h.rotational_inertia_kgm2 = d.rotational_inertia_kgm2;

  SimulationSettings& sim = sc.simulation;
  if (const auto* ss = doc.find("simulation")) {
    ss->require_known({"dt_ms", "horizon_s", "sample_interval_s", "rest_fraction"});
    sim.dt_s = positive(*ss, "dt_ms", sim.dt_s * 1e3, src) * 1e-3;
    sim.horizon_s = positive(*ss, "horizon_s", sim.horizon_s, src);
    sim.sample_interval_s = ss->number_or("sample_interval_s", sim.sample_interval_s);
    sim.rest_fraction = positive(*ss, "rest_fraction", sim.rest_fraction, src);
    try {
      sim.validate();
    } catch (const DomainError& e) {
      throw ConfigError(src, ss->line(), "simulation", e.what());
    }
  }

  try {
    d.validate();
  } catch (const DomainError& e) {
    throw ConfigError(src, 0, "robot", e.what());
  }
  return sc;
}

Scenario load_scenario(const std::string& path) {
  return parse_scenario(config::Document::load(path));
}

config::Document to_document(const Scenario& sc) {
  config::Document doc;
  const RobotDesign& d = sc.design;
  if (!sc.name.empty()) doc.add_section("scenario").set("name", sc.name);

  auto& robot = doc.add_section("robot");
  robot.set("body_length_m", format_number(d.body_length_m));
  robot.set("mass_kg", format_number(d.mass_kg));
  robot.set("rotational_inertia_kgm2", format_number(d.rotational_inertia_kgm2));
  robot.set("topology", std::string(actuation::topology_name(d.topology)));

  for (std::size_t i = 0; i < d.pairs.size(); ++i) {
    const auto& p = d.pairs[i];
    auto& ps = doc.add_section(fmt::format("pairs.{}", i));
    ps.set("rise_mm", format_number(p.truss.rise_mm));
    ps.set("half_span_mm", format_number(p.truss.half_span_mm));
    ps.set("support_stiffness_n_per_mm", format_number(p.truss.support_stiffness));
    ps.set("joint_stiffness_nmm_per_rad", format_number(p.truss.joint_stiffness));
    ps.set("thickness_mm", format_number(p.forward_muscle.beam_thickness_mm));
    ps.set("material", p.forward_muscle.material.name);
    ps.set("programmed_stroke_mm", format_number(p.forward_muscle.programmed_stroke_mm));
    ps.set("recovery_s", format_number(p.recovery_s));
    if (p.reverse_muscle) {
      ps.set("reverse_thickness_mm", format_number(p.reverse_muscle->beam_thickness_mm));
      ps.set("reverse_material", p.reverse_muscle->material.name);
    }
  }

  auto& fins = doc.add_section("fins");
  for (FinSlot s : kAllFinSlots) {
    for (std::size_t i = 0; i < d.pairs.size(); ++i) {
      for (FinSlot a : d.pairs[i].attached_fins) {
        if (a == s) fins.set(std::string(slot_name(s)), std::to_string(i));
      }
    }
  }
  const hydro::Fin& fl = d.fin(FinSlot::front_left);
  const hydro::Fin& rl = d.fin(FinSlot::rear_left);
  fins.set("area_m2", format_number(fl.area_m2));
  fins.set("paddle_drag_coeff", format_number(fl.paddle_drag_coeff));
  fins.set("front_x_m", format_number(fl.offset_x_m));
  fins.set("rear_x_m", format_number(rl.offset_x_m));
  fins.set("lateral_y_m", format_number(fl.offset_y_m));

  if (d.gripper) {
    auto& g = doc.add_section("gripper");
    g.set("material", d.gripper->material.name);
    g.set("cargo_mass_kg", format_number(d.gripper->cargo_mass_kg));
  }

  auto& env = doc.add_section("environment");
  env.set("schedule", format_schedule(sc.environment.water));
  env.set("water_density_kg_m3", format_number(sc.environment.water_density_kg_m3));

  auto& h = doc.add_section("hydro");
  h.set("reference_area_m2", format_number(sc.hydro.reference_area_m2));
  h.set("snap_duration_s", format_number(sc.hydro.snap_duration_s));
  h.set("efficiency", format_number(sc.hydro.efficiency));
  h.set("rotational_damping_nms", format_number(sc.hydro.rotational_damping));
  if (std::isfinite(sc.hydro.body_drag_coeff)) {
    h.set("body_drag_coeff", format_number(sc.hydro.body_drag_coeff));
  }
  if (std::isfinite(sc.hydro.rotational_drag_coeff)) {
    h.set("rotational_drag_coeff", format_number(sc.hydro.rotational_drag_coeff));
  }

  auto& sim = doc.add_section("simulation");
  sim.set("dt_ms", format_number(sc.simulation.dt_s * 1e3));
  sim.set("horizon_s", format_number(sc.simulation.horizon_s));
  sim.set("sample_interval_s", format_number(sc.simulation.sample_interval_s));
  sim.set("rest_fraction", format_number(sc.simulation.rest_fraction));

  for (const auto& m : sc.extra_materials.all()) {
    auto& ms = doc.add_section("materials." + m.name);
    ms.set("tg_c", format_number(m.glass_transition_c));
    ms.set("diffusivity_s_per_mm2", format_number(m.diffusivity_s_per_mm2));
  }
  return doc;
}

std::string emit_scenario(const Scenario& sc) { return to_document(sc).to_text(); }

Calibration load_calibration(const std::string& path) {
  const auto doc = config::Document::load(path);
  const auto& sec = doc.section("calibration");
  Calibration c;
  c.body_drag_coeff = positive(sec, "body_drag_coeff", 0.0, doc.source());
  c.rotational_drag_coeff = positive(sec, "rotational_drag_coeff", 0.0, doc.source());
  return c;
}

void apply_calibration(Scenario& sc, const Calibration& cal) {
  if (!std::isfinite(sc.hydro.body_drag_coeff)) sc.hydro.body_drag_coeff = cal.body_drag_coeff;
  if (!std::isfinite(sc.hydro.rotational_drag_coeff)) {
    sc.hydro.rotational_drag_coeff = cal.rotational_drag_coeff;
  }
}

}  // namespace snapswim::scenario
