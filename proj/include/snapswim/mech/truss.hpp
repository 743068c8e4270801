#pragma once

// Idealized bistable truss: a rigid inclined bar of rise H and half-span L,
// supported by a linear spring k and torsional joint springs k_theta.
// Units throughout: mm, N, N*mm. The shuttle displacement V is defined on
// [0, 2H]; V = 0 is the fabricated state.

namespace snapswim::mech {

struct TrussGeometry {
  double rise_mm = 0.0;                  // H
  double half_span_mm = 0.0;             // L
  double support_stiffness = 0.0;        // k, N/mm
  double joint_stiffness = 0.0;          // k_theta, N*mm/rad

  // Throws DomainError when an invariant is violated.
  void validate() const;
  double travel_mm() const { return 2.0 * rise_mm; }

  friend bool operator==(const TrussGeometry&, const TrussGeometry&) = default;
};

struct Shortening {
  double projected_length;  // L1 = sqrt(2HV + L^2 - V^2)
  double shortening;        // d = L1 - L
};

// All of these throw DomainError for V outside [0, 2H].
Shortening projected_shortening(const TrussGeometry& geom, double v_mm);
double strain_energy(const TrussGeometry& geom, double v_mm);
double load_displacement(const TrussGeometry& geom, double v_mm);

}  // namespace snapswim::mech
