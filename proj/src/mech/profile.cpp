#include "snapswim/mech/profile.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "snapswim/error.hpp"
#include "snapswim/mech/kernels.hpp"

namespace snapswim::mech {

namespace {

// Samples whose load magnitude falls below this are treated as exact zeros
// during the sign scan (symmetric trusses hit P = 0 at grid points up to
// rounding).
constexpr double kZeroBand = 1e-12;

int sign_of(double p) {
  if (std::abs(p) <= kZeroBand) return 0;
  return p > 0.0 ? 1 : -1;
}

double bisect(const TrussGeometry& g, double a, double b) {
  double pa = load_displacement(g, a);
  double pb = load_displacement(g, b);
  for (int iter = 0; iter < 200; ++iter) {
    const double m = 0.5 * (a + b);
    if (m <= a || m >= b) break;
    const double pm = load_displacement(g, m);
    if (pm == 0.0) return m;
    if ((pm > 0.0) == (pa > 0.0)) {
      a = m;
      pa = pm;
    } else {
      b = m;
      pb = pm;
    }
  }
  return std::abs(pa) <= std::abs(pb) ? a : b;
}

// Golden-section search for the extremum of P on [a, b]; `sense` is +1 for
// a maximum and -1 for a minimum. Returns the extreme value.
double refine_extremum(const TrussGeometry& g, double a, double b, double sense) {
  constexpr double inv_phi = 0.61803398874989484820;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = sense * load_displacement(g, c);
  double fd = sense * load_displacement(g, d);
  for (int iter = 0; iter < 120 && (b - a) > 1e-15 * (1.0 + std::abs(b)); ++iter) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = sense * load_displacement(g, c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = sense * load_displacement(g, d);
    }
  }
  return sense * std::max(fc, fd);
}

double grid_extremum(const TrussGeometry& g, const std::vector<double>& grid,
                     const std::vector<double>& load, double lo, double hi, double sense) {
  std::size_t best = grid.size();
  double best_value = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] <= lo || grid[i] >= hi) continue;
    const double s = sense * load[i];
    if (best == grid.size() || s > best_value) {
      best = i;
      best_value = s;
    }
  }
  if (best == grid.size()) {
    // Roots closer together than one grid step.
    return refine_extremum(g, lo, hi, sense);
  }
  const double a = std::max(lo, grid[best > 0 ? best - 1 : 0]);
  const double b = std::min(hi, grid[std::min(best + 1, grid.size() - 1)]);
  const double refined = refine_extremum(g, a, b, sense);
  const double sampled = sense * best_value;
  return sense > 0.0 ? std::max(refined, sampled) : std::min(refined, sampled);
}

}  // namespace

std::vector<double> displacement_grid(const TrussGeometry& g, int intervals) {
  if (intervals < 2) throw DomainError("grid needs at least two intervals");
  const double travel = g.travel_mm();
  std::vector<double> grid(static_cast<std::size_t>(intervals) + 1);
  for (int i = 0; i <= intervals; ++i) {
    grid[static_cast<std::size_t>(i)] = travel * i / intervals;
  }
  grid.back() = travel;
  return grid;
}

std::vector<double> equilibria(const TrussGeometry& g, int intervals) {
  g.validate();
  const auto grid = displacement_grid(g, intervals);
  std::vector<double> load(grid.size());
  kernels::load_curve(g, grid, load);

  // P(0) = 0 for every geometry: the fabricated state is always an equilibrium.
  std::vector<double> roots{0.0};
  const std::size_t n = grid.size();
  std::size_t i = 1;
  while (i < n) {
    const int s = sign_of(load[i]);
    if (s == 0) {
      // Collapse a run of near-zero samples onto its smallest |P|.
      std::size_t best = i;
      std::size_t j = i;
      while (j < n && sign_of(load[j]) == 0) {
        if (std::abs(load[j]) < std::abs(load[best])) best = j;
        ++j;
      }
      roots.push_back(grid[best]);
      i = j;
      continue;
    }
    const int prev = sign_of(load[i - 1]);
    if (prev != 0 && prev != s) {
      double a = grid[i - 1];
      double b = grid[i];
      // The vector kernel and the scalar law can disagree in the last bits
      // right next to a root; widen the bracket until the scalar law agrees.
      std::size_t lo = i - 1;
      std::size_t hi = i;
      while ((load_displacement(g, a) > 0.0) == (load_displacement(g, b) > 0.0)) {
        if (lo > 0) --lo;
        if (hi + 1 < n) ++hi;
        a = grid[lo];
        b = grid[hi];
        if (lo == 0 && hi + 1 == n) break;
      }
      roots.push_back(bisect(g, a, b));
    }
    ++i;
  }

  std::sort(roots.begin(), roots.end());
  const double merge = 1e-9 * g.rise_mm;
  roots.erase(std::unique(roots.begin(), roots.end(),
                          [merge](double x, double y) { return std::abs(x - y) <= merge; }),
              roots.end());
  return roots;
}

BistableProfile barriers(const TrussGeometry& g, int intervals) {
  auto roots = equilibria(g, intervals);
  if (roots.size() != 3) {
    throw NotBistableError(
        roots.size() == 1
            ? fmt::format("truss (H={}, L={}, k={}, k_theta={}) is monostable", g.rise_mm,
                          g.half_span_mm, g.support_stiffness, g.joint_stiffness)
            : fmt::format("truss has {} equilibria; expected 3", roots.size()));
  }

  BistableProfile prof;
  prof.geometry = g;
  prof.displacement_grid = displacement_grid(g, intervals);
  prof.load_curve.resize(prof.displacement_grid.size());
  kernels::load_curve(g, prof.displacement_grid, prof.load_curve);
  prof.equilibria = std::move(roots);

  const double r1 = prof.first_stable();
  const double u = prof.unstable();
  const double r3 = prof.second_stable();
  prof.forward_peak_force = grid_extremum(g, prof.displacement_grid, prof.load_curve, r1, u, 1.0);
  prof.reverse_peak_force = grid_extremum(g, prof.displacement_grid, prof.load_curve, u, r3, -1.0);

  const double e_unstable = strain_energy(g, u);
  prof.forward_energy_barrier = e_unstable - strain_energy(g, r1);
  prof.reverse_energy_barrier = e_unstable - strain_energy(g, r3);
  return prof;
}

std::string profile_csv(const TrussGeometry& g, int intervals) {
  g.validate();
  const auto grid = displacement_grid(g, intervals);
  std::vector<double> load(grid.size());
  std::vector<double> energy(grid.size());
  kernels::load_curve(g, grid, load);
  kernels::energy_curve(g, grid, energy);
  std::string out = "V_mm,P_N,E_Nmm\n";
  for (std::size_t i = 0; i < grid.size(); ++i) {
    out += fmt::format("{:.9g},{:.9g},{:.9g}\n", grid[i], load[i], energy[i]);
  }
  return out;
}

}  // namespace snapswim::mech
