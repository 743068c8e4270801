#pragma once

// Exhaustive design search: every fin layout, muscle thickness and material
// combination of up to two pairs that passes the actuation predicates is
// simulated and scored against the mission.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "snapswim/mission/mission.hpp"
#include "snapswim/scenario/design.hpp"
#include "snapswim/scenario/run.hpp"

namespace snapswim::mission {

inline constexpr std::array<double, 3> kThicknessesMm = {1.2, 1.4, 1.6};
inline constexpr std::array<std::string_view, 2> kMaterials = {"VeroWhitePlus", "FLX9895"};

// Identity of a candidate; also its tie-break order after the score.
struct CandidateKey {
  std::array<int, 4> fin_owner = {-1, -1, -1, -1};  // pair index per FinSlot, -1 absent
  std::vector<double> thickness_mm;                 // forward muscle per pair
  std::vector<std::string> material;
  std::optional<double> reverse_thickness_mm;       // on pair 0
  std::optional<std::string> reverse_material;
  bool gripper = false;

  int pairs() const { return static_cast<int>(thickness_mm.size()); }
  int fins() const;
  friend bool operator==(const CandidateKey&, const CandidateKey&) = default;
};

// Fewer pairs, fewer fins, slot order, then thicknesses and materials.
bool tie_break_less(const CandidateKey& a, const CandidateKey& b);
std::string describe(const CandidateKey& k);

struct SynthesisOptions {
  hydro::HydroParams hydro;  // calibrated
  scenario::SimulationSettings simulation{0.005, 20000.0, 0.0, 1e-4};
  double cargo_mass_kg = 0.0025;
  std::string gripper_material = "VeroWhitePlus";
  double threshold = 1.0;
  double angle_scale_deg = 30.0;
  unsigned workers = 1;
};

struct DesignCandidate {
  CandidateKey key;
  scenario::Scenario scenario;  // ready to simulate or emit
  double score = 0.0;
  scenario::Summary summary;
};

struct SynthesisReport {
  DesignCandidate best;
  std::size_t enumerated = 0;  // before predicate filtering
  std::size_t simulated = 0;
};

class InfeasibleMission : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Environment used to evaluate a mission: a 35 C hold then a ramp to 60 C
// when it drops or returns, otherwise constant 60 C water.
scenario::Environment mission_environment(const Mission& m);

scenario::Scenario build_scenario(const CandidateKey& key, const Mission& m,
                                  const SynthesisOptions& opt);

// Recovers the key from a parsed design; inverse of build_scenario.
CandidateKey key_of(const scenario::RobotDesign& d);

// Whether the candidate passes can_trigger, chain_condition (series) and
// the reverse predicates.
bool feasible(const CandidateKey& key, const scenario::RobotDesign& d);

// Statements are matched in order with the run's actions (Snap,
// CargoRelease, ReverseSnap). Forward: |distance - d| + |dtheta| / scale;
// Turn: |dtheta - a| / scale; Drop and Return: 0 when matched. Each
// mismatched, missing or surplus action adds 1.
double score(const Mission& m, const scenario::RunResult& r, double body_length_m,
             double angle_scale_deg = 30.0);

std::vector<CandidateKey> enumerate(const Mission& m);

// Throws InfeasibleMission when no candidate scores below the threshold.
SynthesisReport synthesize(const Mission& m, const SynthesisOptions& opt);

std::string emit_design(const DesignCandidate& c);

}  // namespace snapswim::mission
