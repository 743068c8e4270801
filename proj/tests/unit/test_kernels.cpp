#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "snapswim/mech/kernels.hpp"

using namespace snapswim::mech;

namespace {

std::vector<double> grid(const TrussGeometry& g, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = g.travel_mm() * i / (n - 1);
  return v;
}

}  // namespace

TEST_CASE("scalar kernel matches the pointwise law exactly") {
  const TrussGeometry g{5, 20, 4, 4};
  const auto v = grid(g, 1001);
  std::vector<double> p(v.size()), e(v.size());
  kernels::load_curve(kernels::Isa::scalar, g, v, p);
  kernels::energy_curve(kernels::Isa::scalar, g, v, e);
  for (std::size_t i = 0; i < v.size(); ++i) {
    CHECK(p[i] == load_displacement(g, v[i]));
    CHECK(e[i] == strain_energy(g, v[i]));
  }
}

TEST_CASE("avx2 kernels agree with the scalar reference") {
  if (!kernels::isa_available(kernels::Isa::avx2)) {
    MESSAGE("avx2 unavailable; skipped");
    return;
  }
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> uh(1, 10), ul(10, 40), uk(0, 10);
  for (int trial = 0; trial < 50; ++trial) {
    const TrussGeometry g{uh(rng), ul(rng), uk(rng) + 0.1, uk(rng)};
    // Odd length exercises the tail loop.
    const auto v = grid(g, 1027);
    std::vector<double> ps(v.size()), pv(v.size()), es(v.size()), ev(v.size());
    kernels::load_curve(kernels::Isa::scalar, g, v, ps);
    kernels::load_curve(kernels::Isa::avx2, g, v, pv);
    kernels::energy_curve(kernels::Isa::scalar, g, v, es);
    kernels::energy_curve(kernels::Isa::avx2, g, v, ev);
    const double pscale = g.support_stiffness * g.rise_mm + g.joint_stiffness;
    for (std::size_t i = 0; i < v.size(); ++i) {
      CHECK(std::abs(ps[i] - pv[i]) <= 1e-12 * pscale);
      CHECK(std::abs(es[i] - ev[i]) <= 1e-12 * (std::abs(es[i]) + pscale * g.rise_mm));
    }
  }
}

#if defined(SNAPSWIM_WITH_AVX2)
TEST_CASE("vector arctangent is accurate to a few ulp") {
  if (!kernels::isa_available(kernels::Isa::avx2)) return;
  std::vector<double> x;
  for (int i = -20000; i <= 20000; ++i) x.push_back(i * 1e-3);
  for (double s : {1e-300, 1e-12, 1e6, 1e300}) {
    x.push_back(s);
    x.push_back(-s);
  }
  x.push_back(0.0);
  std::vector<double> out(x.size());
  kernels::detail::atan_avx2(x, out);
  double worst = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double ref = std::atan(x[i]);
    if (ref != 0.0) worst = std::max(worst, std::abs(out[i] - ref) / std::abs(ref));
  }
  CHECK(worst < 1e-15);
}
#endif

TEST_CASE("empty input is a no-op") {
  std::vector<double> v, p;
  kernels::load_curve({5, 20, 4, 4}, v, p);
  CHECK(p.empty());
}
