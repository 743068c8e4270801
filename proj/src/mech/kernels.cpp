#include "snapswim/mech/kernels.hpp"

#include <cassert>
#include <cmath>
#include <cstdlib>
#include <cstring>

namespace snapswim::mech::kernels {

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return "scalar";
    case Isa::avx2:
      return "avx2";
  }
  return "unknown";
}

bool isa_available(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
#if defined(SNAPSWIM_WITH_AVX2) && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
  }
  return false;
}

Isa active_isa() {
  static const Isa chosen = [] {
    const char* forced = std::getenv("SNAPSWIM_SIMD");
    if (forced != nullptr && std::strcmp(forced, "scalar") == 0) return Isa::scalar;
    return isa_available(Isa::avx2) ? Isa::avx2 : Isa::scalar;
  }();
  return chosen;
}

namespace detail {

void load_curve_scalar(const TrussGeometry& g, std::span<const double> v, std::span<double> p) {
  const double h = g.rise_mm;
  const double l = g.half_span_mm;
  const double alpha0 = std::atan(h / l);
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double vi = v[i];
    const double l1 = std::sqrt(2.0 * h * vi + l * l - vi * vi);
    const double dalpha = std::atan((h - vi) / l1) - alpha0;
    p[i] = -2.0 / l1 * (g.support_stiffness * (l - l1) * (h - vi) + g.joint_stiffness * dalpha);
  }
}

void energy_curve_scalar(const TrussGeometry& g, std::span<const double> v, std::span<double> e) {
  const double h = g.rise_mm;
  const double l = g.half_span_mm;
  const double alpha0 = std::atan(h / l);
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double vi = v[i];
    const double l1 = std::sqrt(2.0 * h * vi + l * l - vi * vi);
    const double d = l1 - l;
    const double dalpha = std::atan((h - vi) / l1) - alpha0;
    e[i] = 0.5 * g.support_stiffness * d * d + 0.5 * g.joint_stiffness * dalpha * dalpha;
  }
}

}  // namespace detail

void load_curve(Isa isa, const TrussGeometry& geom, std::span<const double> v,
                std::span<double> p) {
  assert(v.size() == p.size());
#if defined(SNAPSWIM_WITH_AVX2)
  if (isa == Isa::avx2 && isa_available(Isa::avx2)) {
    detail::load_curve_avx2(geom, v, p);
    return;
  }
#else
  (void)isa;
#endif
  detail::load_curve_scalar(geom, v, p);
}

void energy_curve(Isa isa, const TrussGeometry& geom, std::span<const double> v,
                  std::span<double> e) {
  assert(v.size() == e.size());
#if defined(SNAPSWIM_WITH_AVX2)
  if (isa == Isa::avx2 && isa_available(Isa::avx2)) {
    detail::energy_curve_avx2(geom, v, e);
    return;
  }
#else
  (void)isa;
#endif
  detail::energy_curve_scalar(geom, v, e);
}

void load_curve(const TrussGeometry& geom, std::span<const double> v, std::span<double> p) {
  load_curve(active_isa(), geom, v, p);
}

void energy_curve(const TrussGeometry& geom, std::span<const double> v, std::span<double> e) {
  energy_curve(active_isa(), geom, v, e);
}

}  // namespace snapswim::mech::kernels
