#pragma once

// Batched evaluation of the truss load and strain energy over displacement
// grids. Every kernel has a scalar reference implementation; an AVX2 variant
// is selected at runtime when the CPU supports it. Setting the environment
// variable SNAPSWIM_SIMD=scalar forces the reference path.

#include <span>
#include <string_view>

#include "snapswim/mech/truss.hpp"

namespace snapswim::mech::kernels {

enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa);

// Best ISA supported by this CPU and build, honouring SNAPSWIM_SIMD.
Isa active_isa();
bool isa_available(Isa isa);

// Inputs must lie in [0, 2H]; the caller validates the grid once. Output
// spans must have the same size as the input.
void load_curve(const TrussGeometry& geom, std::span<const double> v, std::span<double> p);
void energy_curve(const TrussGeometry& geom, std::span<const double> v, std::span<double> e);

// Explicit variants, used by the equivalence tests.
void load_curve(Isa isa, const TrussGeometry& geom, std::span<const double> v,
                std::span<double> p);
void energy_curve(Isa isa, const TrussGeometry& geom, std::span<const double> v,
                  std::span<double> e);

namespace detail {
void load_curve_scalar(const TrussGeometry& geom, std::span<const double> v, std::span<double> p);
void energy_curve_scalar(const TrussGeometry& geom, std::span<const double> v,
                         std::span<double> e);
#if defined(SNAPSWIM_WITH_AVX2)
void load_curve_avx2(const TrussGeometry& geom, std::span<const double> v, std::span<double> p);
void energy_curve_avx2(const TrussGeometry& geom, std::span<const double> v, std::span<double> e);
// Vector arctangent, exposed for its own accuracy test.
void atan_avx2(std::span<const double> x, std::span<double> out);
#endif
}  // namespace detail

}  // namespace snapswim::mech::kernels
