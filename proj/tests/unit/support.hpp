#pragma once

#include <string>

#include "snapswim/scenario/design.hpp"

namespace test_support {

inline std::string source_path(const std::string& rel) {
  return std::string(SNAPSWIM_SOURCE_DIR) + "/" + rel;
}

// Shipped scenario with the shipped calibration applied.
inline snapswim::scenario::Scenario shipped_scenario(const std::string& name) {
  auto sc = snapswim::scenario::load_scenario(source_path("scenarios/" + name + ".cfg"));
  snapswim::scenario::apply_calibration(
      sc, snapswim::scenario::load_calibration(source_path("calibration/reference.cal")));
  return sc;
}

}  // namespace test_support
