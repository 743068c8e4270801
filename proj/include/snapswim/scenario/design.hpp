#pragma once

// Robot, environment and simulation settings, and their config-file form.
//
// Scenario file schema (units in key names):
//
//   [scenario]      name
//   [robot]         body_length_m, mass_kg, rotational_inertia_kgm2,
//                   topology = independent | series
//   [pairs.N]       rise_mm, half_span_mm, support_stiffness_n_per_mm,
//                   joint_stiffness_nmm_per_rad, thickness_mm, material,
//                   programmed_stroke_mm, recovery_s,
//                   reverse_thickness_mm, reverse_material (optional pair)
//   [fins]          front_left / front_right / rear_left / rear_right = pair
//                   index (omit for an absent fin); area_m2,
//                   paddle_drag_coeff, front_x_m, rear_x_m, lateral_y_m
//   [gripper]       material, cargo_mass_kg (optional section)
//   [environment]   schedule = t_s:temp_c, ... ; water_density_kg_m3
//   [hydro]         reference_area_m2, snap_duration_s, efficiency,
//                   rotational_damping_nms, body_drag_coeff,
//                   rotational_drag_coeff (drag keys override calibration)
//   [simulation]    dt_ms, horizon_s, sample_interval_s, rest_fraction
//   [materials.X]   tg_c, diffusivity_s_per_mm2 (extends the built-ins)

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "snapswim/actuation/sequencer.hpp"
#include "snapswim/config/kv.hpp"
#include "snapswim/hydro/hydro.hpp"
#include "snapswim/muscle/material.hpp"

namespace snapswim::scenario {

struct RobotDesign {
  double body_length_m = 0.10;
  double mass_kg = 0.05;
  double rotational_inertia_kgm2 = 4.5e-5;
  std::vector<actuation::ActuatorPair> pairs;
  std::array<hydro::Fin, 4> fins;  // indexed by FinSlot
  std::optional<actuation::Gripper> gripper;
  actuation::Topology topology = actuation::Topology::independent;

  // Throws DomainError; covers pair, fin and gripper invariants.
  void validate() const;
  const hydro::Fin& fin(FinSlot s) const { return fins[static_cast<int>(s)]; }
  hydro::Fin& fin(FinSlot s) { return fins[static_cast<int>(s)]; }
  std::vector<hydro::Fin> fins_of_pair(std::size_t pair) const;
  int fin_count() const;

  friend bool operator==(const RobotDesign&, const RobotDesign&) = default;
};

struct Environment {
  actuation::ThermalSchedule water = actuation::ThermalSchedule::constant(60.0);
  double water_density_kg_m3 = 1000.0;

  friend bool operator==(const Environment&, const Environment&) = default;
};

struct SimulationSettings {
  double dt_s = 0.005;
  double horizon_s = 20000.0;
  // Periodic trajectory samples; 0 keeps only event and end samples.
  double sample_interval_s = 0.5;
  // A stroke has settled once speed and spin fall below this fraction of
  // their peaks since the last snap.
  double rest_fraction = 1e-4;

  void validate() const;
  friend bool operator==(const SimulationSettings&, const SimulationSettings&) = default;
};

struct Scenario {
  std::string name;
  RobotDesign design;
  Environment environment;
  hydro::HydroParams hydro;
  SimulationSettings simulation;
  muscle::MaterialDb extra_materials;  // [materials.X] sections of the file
};

// Reference hardware shared by the shipped scenarios and synthesis.
mech::TrussGeometry reference_truss();
hydro::Fin reference_fin(FinSlot slot, bool present);

Scenario parse_scenario(const config::Document& doc);
Scenario load_scenario(const std::string& path);
config::Document to_document(const Scenario& sc);
std::string emit_scenario(const Scenario& sc);

// "0:35, 6000:35, 6300:60"
actuation::ThermalSchedule parse_schedule(const std::string& text);
std::string format_schedule(const actuation::ThermalSchedule& s);

// Fitted drag coefficients, stored in their own file.
struct Calibration {
  double body_drag_coeff = 0.0;
  double rotational_drag_coeff = 0.0;
};

Calibration load_calibration(const std::string& path);
// Fills drag coefficients the scenario file did not set itself.
void apply_calibration(Scenario& sc, const Calibration& cal);

}  // namespace snapswim::scenario
