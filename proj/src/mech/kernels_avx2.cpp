// Built with -mavx2 -mfma. Only reached through the runtime dispatcher.

#include <immintrin.h>

#include <cmath>

#include "snapswim/mech/kernels.hpp"

namespace snapswim::mech::kernels::detail {

namespace {

constexpr std::size_t kLanes = 4;

// Cephes-style arctangent: range reduction onto |x| <= 0.66 followed by a
// degree 4/5 rational approximation. Agrees with std::atan to a few ulp.
inline __m256d atan_pd(__m256d x) {
  const __m256d sign_mask = _mm256_set1_pd(-0.0);
  const __m256d sign = _mm256_and_pd(x, sign_mask);
  __m256d ax = _mm256_andnot_pd(sign_mask, x);

  const __m256d t3p8 = _mm256_set1_pd(2.41421356237309504880);
  const __m256d mid_limit = _mm256_set1_pd(0.66);
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d morebits = _mm256_set1_pd(6.123233995736765886130e-17);

  const __m256d big = _mm256_cmp_pd(ax, t3p8, _CMP_GT_OQ);
  const __m256d mid = _mm256_andnot_pd(big, _mm256_cmp_pd(ax, mid_limit, _CMP_GT_OQ));

  const __m256d x_big = _mm256_div_pd(_mm256_set1_pd(-1.0), ax);
  const __m256d x_mid = _mm256_div_pd(_mm256_sub_pd(ax, one), _mm256_add_pd(ax, one));
  __m256d xr = _mm256_blendv_pd(ax, x_mid, mid);
  xr = _mm256_blendv_pd(xr, x_big, big);

  __m256d base = _mm256_and_pd(mid, _mm256_set1_pd(0.78539816339744830962));
  base = _mm256_blendv_pd(base, _mm256_set1_pd(1.57079632679489661923), big);
  __m256d extra = _mm256_and_pd(mid, _mm256_set1_pd(0.5 * 6.123233995736765886130e-17));
  extra = _mm256_blendv_pd(extra, morebits, big);

  const __m256d z = _mm256_mul_pd(xr, xr);
  __m256d num = _mm256_set1_pd(-8.750608600031904122785e-1);
  num = _mm256_fmadd_pd(num, z, _mm256_set1_pd(-1.615753718733365076637e1));
  num = _mm256_fmadd_pd(num, z, _mm256_set1_pd(-7.500855792314704667340e1));
  num = _mm256_fmadd_pd(num, z, _mm256_set1_pd(-1.228866684490136173410e2));
  num = _mm256_fmadd_pd(num, z, _mm256_set1_pd(-6.485021904942025371773e1));
  __m256d den = _mm256_add_pd(z, _mm256_set1_pd(2.485846490142306297962e1));
  den = _mm256_fmadd_pd(den, z, _mm256_set1_pd(1.650270098316988542046e2));
  den = _mm256_fmadd_pd(den, z, _mm256_set1_pd(4.328810604912902668951e2));
  den = _mm256_fmadd_pd(den, z, _mm256_set1_pd(4.853903996359136964868e2));
  den = _mm256_fmadd_pd(den, z, _mm256_set1_pd(1.945506571482613964425e2));

  const __m256d ratio = _mm256_div_pd(_mm256_mul_pd(z, num), den);
  __m256d r = _mm256_fmadd_pd(xr, ratio, xr);
  r = _mm256_add_pd(r, extra);
  r = _mm256_add_pd(base, r);
  return _mm256_or_pd(r, sign);
}

struct Lane {
  __m256d l1;
  __m256d h_minus_v;
  __m256d dalpha;
};

inline Lane truss_lane(__m256d v, __m256d h, __m256d two_h, __m256d l_sq, __m256d alpha0) {
  // 2HV + L^2 - V^2 evaluated in the same order as the scalar reference.
  const __m256d radicand = _mm256_sub_pd(_mm256_add_pd(_mm256_mul_pd(two_h, v), l_sq),
                                         _mm256_mul_pd(v, v));
  const __m256d l1 = _mm256_sqrt_pd(radicand);
  const __m256d hv = _mm256_sub_pd(h, v);
  const __m256d dalpha = _mm256_sub_pd(atan_pd(_mm256_div_pd(hv, l1)), alpha0);
  return {l1, hv, dalpha};
}

}  // namespace

void atan_avx2(std::span<const double> x, std::span<double> out) {
  std::size_t i = 0;
  for (; i + kLanes <= x.size(); i += kLanes) {
    _mm256_storeu_pd(out.data() + i, atan_pd(_mm256_loadu_pd(x.data() + i)));
  }
  if (i < x.size()) {
    alignas(32) double in_tail[kLanes] = {0.0, 0.0, 0.0, 0.0};
    alignas(32) double out_tail[kLanes];
    for (std::size_t j = i; j < x.size(); ++j) in_tail[j - i] = x[j];
    _mm256_store_pd(out_tail, atan_pd(_mm256_load_pd(in_tail)));
    for (std::size_t j = i; j < x.size(); ++j) out[j] = out_tail[j - i];
  }
}

void load_curve_avx2(const TrussGeometry& g, std::span<const double> v, std::span<double> p) {
  const __m256d h = _mm256_set1_pd(g.rise_mm);
  const __m256d two_h = _mm256_set1_pd(2.0 * g.rise_mm);
  const __m256d l = _mm256_set1_pd(g.half_span_mm);
  const __m256d l_sq = _mm256_set1_pd(g.half_span_mm * g.half_span_mm);
  const __m256d alpha0 = _mm256_set1_pd(std::atan(g.rise_mm / g.half_span_mm));
  const __m256d k = _mm256_set1_pd(g.support_stiffness);
  const __m256d kt = _mm256_set1_pd(g.joint_stiffness);
  const __m256d minus_two = _mm256_set1_pd(-2.0);

  const std::size_t n = v.size();
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const Lane lane = truss_lane(_mm256_loadu_pd(v.data() + i), h, two_h, l_sq, alpha0);
    const __m256d spring = _mm256_mul_pd(_mm256_mul_pd(k, _mm256_sub_pd(l, lane.l1)), lane.h_minus_v);
    const __m256d bracket = _mm256_add_pd(spring, _mm256_mul_pd(kt, lane.dalpha));
    _mm256_storeu_pd(p.data() + i, _mm256_mul_pd(_mm256_div_pd(minus_two, lane.l1), bracket));
  }
  if (i < n) load_curve_scalar(g, v.subspan(i), p.subspan(i));
}

void energy_curve_avx2(const TrussGeometry& g, std::span<const double> v, std::span<double> e) {
  const __m256d h = _mm256_set1_pd(g.rise_mm);
  const __m256d two_h = _mm256_set1_pd(2.0 * g.rise_mm);
  const __m256d l = _mm256_set1_pd(g.half_span_mm);
  const __m256d l_sq = _mm256_set1_pd(g.half_span_mm * g.half_span_mm);
  const __m256d alpha0 = _mm256_set1_pd(std::atan(g.rise_mm / g.half_span_mm));
  const __m256d half_k = _mm256_set1_pd(0.5 * g.support_stiffness);
  const __m256d half_kt = _mm256_set1_pd(0.5 * g.joint_stiffness);

  const std::size_t n = v.size();
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const Lane lane = truss_lane(_mm256_loadu_pd(v.data() + i), h, two_h, l_sq, alpha0);
    const __m256d d = _mm256_sub_pd(lane.l1, l);
    const __m256d stretch = _mm256_mul_pd(_mm256_mul_pd(half_k, d), d);
    const __m256d twist = _mm256_mul_pd(_mm256_mul_pd(half_kt, lane.dalpha), lane.dalpha);
    _mm256_storeu_pd(e.data() + i, _mm256_add_pd(stretch, twist));
  }
  if (i < n) energy_curve_scalar(g, v.subspan(i), e.subspan(i));
}

}  // namespace snapswim::mech::kernels::detail
