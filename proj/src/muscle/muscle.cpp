#include "snapswim/muscle/muscle.hpp"

#include <cmath>
#include <vector>

#include <fmt/format.h>

#include "snapswim/error.hpp"
#include "snapswim/mech/kernels.hpp"
#include "snapswim/mech/profile.hpp"

namespace snapswim::muscle {

void MuscleSpec::validate() const {
  if (!(beam_thickness_mm >= kMinThicknessMm && beam_thickness_mm <= kMaxThicknessMm)) {
    throw DomainError(fmt::format("muscle thickness {} mm outside model range [{}, {}]",
                                  beam_thickness_mm, kMinThicknessMm, kMaxThicknessMm));
  }
  if (!(programmed_stroke_mm > 0.0) || !std::isfinite(programmed_stroke_mm)) {
    throw DomainError(fmt::format("programmed stroke must be positive, got {}",
                                  programmed_stroke_mm));
  }
  material.validate();
}

double recovery_force_for_thickness(double t) {
  if (!(t >= kMinThicknessMm && t <= kMaxThicknessMm)) {
    throw DomainError(fmt::format("muscle thickness {} mm outside model range [{}, {}]", t,
                                  kMinThicknessMm, kMaxThicknessMm));
  }
  return 0.2 + 1.9 * (t - 0.6);
}

double recovery_force(const MuscleSpec& spec) {
  return recovery_force_for_thickness(spec.beam_thickness_mm);
}

double force_profile(const MuscleSpec& spec, double x) {
  if (!(x >= -1.0 && x <= 0.0)) {
    throw DomainError(fmt::format("normalized muscle position {} outside [-1, 0]", x));
  }
  return recovery_force(spec) * (-x);
}

std::optional<double> activation_time(const MuscleSpec& spec, double water_c) {
  spec.validate();
  const double tg = spec.material.glass_transition_c;
  if (!(water_c >= tg)) return std::nullopt;
  const double ratio = (water_c - kAmbientC) / (water_c - tg + kTransitionBandC);
  // T_g at or below ambient: the programmed shape is not held, recovery is immediate.
  if (!(ratio > 1.0)) return 0.0;
  const double t = spec.beam_thickness_mm;
  return spec.material.diffusivity_s_per_mm2 * t * t * std::log(ratio);
}

namespace {

// F_SMP(x) > F_Bi(V(x)) on grid points x_j = -1 + j/255, j < 255, where V
// sweeps linearly from `from` to `to` and `sense` flips the load sign for
// reverse pushes.
bool dominates(double force, const mech::BistableProfile& p, double from, double to,
               double sense) {
  constexpr int n = kTriggerGridPoints;
  std::vector<double> v(n - 1);
  std::vector<double> x(n - 1);
  for (int j = 0; j < n - 1; ++j) {
    x[j] = -1.0 + static_cast<double>(j) / (n - 1);
    v[j] = from + (x[j] + 1.0) * (to - from);
  }
  std::vector<double> load(v.size());
  mech::kernels::load_curve(p.geometry, v, load);
  for (std::size_t j = 0; j < v.size(); ++j) {
    if (!(force * (-x[j]) > sense * load[j])) return false;
  }
  return true;
}

}  // namespace

bool can_trigger(const MuscleSpec& spec, const mech::BistableProfile& profile) {
  return dominates(recovery_force(spec), profile, profile.first_stable(), profile.unstable(), 1.0);
}

bool can_trigger_reverse(const MuscleSpec& spec, const mech::BistableProfile& profile) {
  return dominates(recovery_force(spec), profile, profile.second_stable(), profile.unstable(),
                   -1.0);
}

}  // namespace snapswim::muscle
