#include "snapswim/scenario/output.hpp"

#include <algorithm>
#include <fstream>

#include <fmt/format.h>

#include "snapswim/error.hpp"

namespace snapswim::scenario {

std::string trajectory_csv(const std::vector<TrajectorySample>& traj) {
  std::string out = "t_s,x_m,y_m,theta_rad,vx,vy,omega,Twater_C\n";
  for (const auto& s : traj) {
    const auto& b = s.state;
    out += fmt::format("{:.6f},{:.9e},{:.9e},{:.9e},{:.9e},{:.9e},{:.9e},{:.4f}\n", s.t_s, b.x, b.y,
                       b.theta, b.vx, b.vy, b.omega, s.water_c);
  }
  return out;
}

std::string event_log(const std::vector<actuation::Event>& events) {
  std::string out;
  for (const auto& e : events) out += actuation::format_event(e) + "\n";
  return out;
}

std::string trajectory_svg(const RunResult& r, double l) {
  double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
  for (const auto& s : r.trajectory) {
    xmin = std::min(xmin, s.state.x / l);
    xmax = std::max(xmax, s.state.x / l);
    ymin = std::min(ymin, s.state.y / l);
    ymax = std::max(ymax, s.state.y / l);
  }
  const double pad = 0.25;
  xmin -= pad, ymin -= pad, xmax += pad, ymax += pad;
  const double w = xmax - xmin;
  const double h = ymax - ymin;
  const double scale = 480.0 / std::max(w, h);
  auto px = [&](double x) { return (x / l - xmin) * scale + 10.0; };
  auto py = [&](double y) { return (ymax - y / l) * scale + 10.0; };

  std::string out = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{:.0f}\" height=\"{:.0f}\">\n"
      "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n",
      w * scale + 20.0, h * scale + 20.0);
  out += "<path fill=\"none\" stroke=\"#1f5fa8\" stroke-width=\"1.5\" d=\"";
  for (std::size_t i = 0; i < r.trajectory.size(); ++i) {
    const auto& b = r.trajectory[i].state;
    out += fmt::format("{}{:.2f},{:.2f} ", i == 0 ? "M" : "L", px(b.x), py(b.y));
  }
  out += "\"/>\n";
  for (const auto& e : r.events) {
    if (e.kind == actuation::EventKind::muscle_active) continue;
    const auto it = std::lower_bound(
        r.trajectory.begin(), r.trajectory.end(), e.time_s,
        [](const TrajectorySample& s, double t) { return s.t_s < t; });
    if (it == r.trajectory.end()) continue;
    const char* color = e.kind == actuation::EventKind::snap           ? "#c0392b"
                        : e.kind == actuation::EventKind::reverse_snap ? "#8e44ad"
                                                                       : "#27ae60";
    out += fmt::format(
        "<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"4\" fill=\"{}\"><title>{} t={:.3f}s</title>"
        "</circle>\n",
        px(it->state.x), py(it->state.y), color, actuation::event_name(e.kind), e.time_s);
  }
  out += "</svg>\n";
  return out;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError(path.string(), 0, "", "cannot write file");
  f << text;
  if (!f) throw ConfigError(path.string(), 0, "", "write failed");
}

void write_outputs(const std::filesystem::path& dir, const RunResult& r, double body_length_m) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ConfigError(dir.string(), 0, "", "cannot create output directory");
  write_text(dir / "trajectory.csv", trajectory_csv(r.trajectory));
  write_text(dir / "events.log", event_log(r.events));
  write_text(dir / "summary.txt", summary_text(r.summary));
  write_text(dir / "trajectory.svg", trajectory_svg(r, body_length_m));
}

}  // namespace snapswim::scenario
