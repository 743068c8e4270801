#pragma once

#include <string>
#include <vector>

#include "snapswim/mech/truss.hpp"

namespace snapswim::mech {

inline constexpr int kDefaultScanSamples = 2048;
inline constexpr double kRootForceTolerance = 1e-9;  // N

// Uniform grid of `intervals + 1` points covering [0, 2H].
std::vector<double> displacement_grid(const TrussGeometry& geom, int intervals);

// Roots of the load curve on [0, 2H], ascending. A dense sign-change scan
// brackets every crossing; bisection refines each to |P| < 1e-9 N. One root
// means monostable, three mean stable / unstable / stable.
std::vector<double> equilibria(const TrussGeometry& geom, int intervals = kDefaultScanSamples);

struct BistableProfile {
  TrussGeometry geometry;
  std::vector<double> displacement_grid;  // mm
  std::vector<double> load_curve;         // N
  std::vector<double> equilibria;         // mm, ascending: first, unstable, second
  double forward_peak_force = 0.0;        // max P between first and unstable root (> 0)
  double reverse_peak_force = 0.0;        // min P between unstable and second root (< 0)
  double forward_energy_barrier = 0.0;    // E(unstable) - E(first), N*mm
  double reverse_energy_barrier = 0.0;    // E(unstable) - E(second), N*mm

  double first_stable() const { return equilibria.front(); }
  double unstable() const { return equilibria[1]; }
  double second_stable() const { return equilibria.back(); }
  // E(second stable) - E(first stable).
  double stable_energy_gap() const { return forward_energy_barrier - reverse_energy_barrier; }
  double forward_stroke() const { return second_stable() - unstable(); }
  double reverse_stroke() const { return unstable() - first_stable(); }
};

// Throws NotBistableError when the geometry has a single equilibrium.
BistableProfile barriers(const TrussGeometry& geom, int intervals = kDefaultScanSamples);

// CSV with header `V_mm,P_N,E_Nmm`, one row per grid sample.
std::string profile_csv(const TrussGeometry& geom, int intervals = kDefaultScanSamples);

}  // namespace snapswim::mech
