#include "snapswim/mech/truss.hpp"

#include <cmath>

#include <fmt/format.h>

#include "snapswim/error.hpp"

namespace snapswim::mech {

void TrussGeometry::validate() const {
  if (!(rise_mm > 0.0) || !std::isfinite(rise_mm)) {
    throw DomainError(fmt::format("truss rise must be positive, got {}", rise_mm));
  }
  if (!(half_span_mm > 0.0) || !std::isfinite(half_span_mm)) {
    throw DomainError(fmt::format("truss half span must be positive, got {}", half_span_mm));
  }
  if (!(support_stiffness >= 0.0) || !std::isfinite(support_stiffness)) {
    throw DomainError(fmt::format("support stiffness must be >= 0, got {}", support_stiffness));
  }
  if (!(joint_stiffness >= 0.0) || !std::isfinite(joint_stiffness)) {
    throw DomainError(fmt::format("joint stiffness must be >= 0, got {}", joint_stiffness));
  }
  if (support_stiffness == 0.0 && joint_stiffness == 0.0) {
    throw DomainError("support and joint stiffness cannot both be zero");
  }
}

namespace {

void check_range(const TrussGeometry& g, double v) {
  if (!(v >= 0.0 && v <= g.travel_mm())) {
    throw DomainError(
        fmt::format("displacement {} mm outside shuttle travel [0, {}]", v, g.travel_mm()));
  }
}

}  // namespace

Shortening projected_shortening(const TrussGeometry& g, double v) {
  check_range(g, v);
  const double h = g.rise_mm;
  const double l = g.half_span_mm;
  const double radicand = 2.0 * h * v + l * l - v * v;
  if (radicand < 0.0) {
    throw DomainError(fmt::format("negative radicand at V = {} mm", v));
  }
  const double l1 = std::sqrt(radicand);
  return {l1, l1 - l};
}

double strain_energy(const TrussGeometry& g, double v) {
  const auto [l1, d] = projected_shortening(g, v);
  const double dalpha = std::atan((g.rise_mm - v) / l1) - std::atan(g.rise_mm / g.half_span_mm);
  return 0.5 * g.support_stiffness * d * d + 0.5 * g.joint_stiffness * dalpha * dalpha;
}

double load_displacement(const TrussGeometry& g, double v) {
  const auto [l1, d] = projected_shortening(g, v);
  const double h = g.rise_mm;
  const double l = g.half_span_mm;
  const double dalpha = std::atan((h - v) / l1) - std::atan(h / l);
  return -2.0 / l1 * (g.support_stiffness * (l - l1) * (h - v) + g.joint_stiffness * dalpha);
}

}  // namespace snapswim::mech
