#include <fmt/format.h>

#include "snapswim/scenario/output.hpp"

namespace snapswim::scenario {

std::string summary_text(const Summary& s) {
  std::string out;
  auto line = [&out](std::string_view key, const auto& value) {
    out += fmt::format("{}={}\n", key, value);
  };
  auto num = [&out](std::string_view key, double value) {
    out += fmt::format("{}={:.9g}\n", key, value);
  };
  num("displacement_bl", s.displacement_bl);
  if (s.has_return) num("return_error_bl", s.return_error_bl);
  num("final_heading_deg", s.final_heading_deg);
  line("forward_snaps", s.forward_snaps);
  line("reverse_snaps", s.reverse_snaps);
  line("cargo_released", s.cargo_released ? "true" : "false");
  line("no_snap", s.no_snap ? "true" : "false");
  line("settled", s.settled ? "true" : "false");
  num("end_time_s", s.end_time_s);
  line("strokes", s.strokes.size());
  for (std::size_t i = 0; i < s.strokes.size(); ++i) {
    const auto& k = s.strokes[i];
    const std::string p = fmt::format("stroke{}_", i + 1);
    line(p + "pair", k.pair_id);
    line(p + "direction", k.direction == actuation::Direction::forward ? "forward" : "reverse");
    num(p + "t_start_s", k.t_start_s);
    num(p + "distance_bl", k.distance_bl);
    num(p + "dtheta_deg", k.dtheta_deg);
  }
  return out;
}

}  // namespace snapswim::scenario
