#include <doctest.h>

#include <cmath>

#include "snapswim/error.hpp"
#include "snapswim/mech/profile.hpp"
#include "snapswim/muscle/muscle.hpp"

using namespace snapswim::muscle;
using snapswim::DomainError;

namespace {

MuscleSpec spec(double t, const char* material = "VeroWhitePlus") {
  return MuscleSpec{t, MaterialDb::builtin().get(material)};
}

}  // namespace

TEST_CASE("recovery force anchors and ratio") {
  CHECK(recovery_force_for_thickness(0.6) == doctest::Approx(0.2));
  CHECK(recovery_force_for_thickness(1.6) == doctest::Approx(2.1));
  CHECK(recovery_force_for_thickness(1.2) == doctest::Approx(1.34));
  CHECK(recovery_force_for_thickness(1.6) / recovery_force_for_thickness(1.2) ==
        doctest::Approx(1.567).epsilon(1e-3));
  // Linear extrapolation goes negative below 0.495 mm; still monotone.
  double last = -1e9;
  for (double t = kMinThicknessMm; t <= kMaxThicknessMm; t += 0.05) {
    CHECK(recovery_force_for_thickness(t) > last);
    last = recovery_force_for_thickness(t);
  }
  CHECK_THROWS_AS(recovery_force_for_thickness(0.3), DomainError);
  CHECK_THROWS_AS(recovery_force_for_thickness(2.1), DomainError);
}

TEST_CASE("force profile decays to zero at the printed shape") {
  const auto s = spec(1.2);
  CHECK(force_profile(s, -1.0) == doctest::Approx(recovery_force(s)));
  CHECK(force_profile(s, 0.0) == 0.0);
  CHECK_THROWS_AS(force_profile(s, 0.1), DomainError);
}

TEST_CASE("activation time") {
  CHECK(activation_time(spec(1.2), 60.0).value() == doctest::Approx(30.0).epsilon(1e-6));
  CHECK_FALSE(activation_time(spec(1.2), 59.9).has_value());
  CHECK(activation_time(spec(1.6), 60.0).value() > activation_time(spec(1.2), 60.0).value());
  CHECK(activation_time(spec(1.2, "FLX9895"), 60.0).value() <
        activation_time(spec(1.2), 60.0).value());
  CHECK(activation_time(spec(1.2, "Agilus30"), 10.0).value() == 0.0);
  CHECK(activation_time(spec(1.2, "FLX9895"), 35.0).has_value());
}

TEST_CASE("trigger threshold on the reference truss") {
  const auto p = snapswim::mech::barriers({5, 20, 4, 4});
  for (double t : {0.6, 0.8, 1.0}) CHECK_FALSE(can_trigger(spec(t), p));
  for (double t : {1.2, 1.4, 1.6, 2.0}) CHECK(can_trigger(spec(t), p));
  // Monotone in thickness: once true, stays true.
  bool seen = false;
  for (double t = 0.6; t <= 2.0; t += 0.01) {
    const bool ok = can_trigger(spec(t), p);
    if (seen) CHECK(ok);
    seen = seen || ok;
  }
}

TEST_CASE("reverse trigger needs less force than forward") {
  const auto p = snapswim::mech::barriers({5, 20, 4, 4});
  for (double t : {1.2, 1.4, 1.6}) CHECK(can_trigger_reverse(spec(t), p));
}

TEST_CASE("material database") {
  const auto db = MaterialDb::builtin();
  CHECK(db.get("VeroWhitePlus").glass_transition_c == 60.0);
  CHECK(db.get("FLX9895").glass_transition_c == 35.0);
  CHECK_THROWS_AS(db.get("Unobtainium"), snapswim::ConfigError);
  const auto again = MaterialDb::load(std::string(SNAPSWIM_SOURCE_DIR) + "/data/materials.cfg");
  CHECK(again.all() == db.all());
}
