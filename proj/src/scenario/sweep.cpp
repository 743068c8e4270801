#include "snapswim/scenario/sweep.hpp"

#include <sstream>

#include <fmt/format.h>

#include "snapswim/error.hpp"
#include "snapswim/parallel.hpp"

namespace snapswim::scenario {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

}  // namespace

SweepSpec parse_vary(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos) {
    throw ConfigError("--vary", 0, text, "expected key=v1,v2,...");
  }
  SweepSpec spec;
  spec.key = trim(text.substr(0, eq));
  if (spec.key.empty()) throw ConfigError("--vary", 0, text, "empty key");
  std::stringstream ss(text.substr(eq + 1));
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) throw ConfigError("--vary", 0, spec.key, "empty value in list");
    spec.values.push_back(item);
  }
  if (spec.values.empty()) throw ConfigError("--vary", 0, spec.key, "empty value list");
  return spec;
}

config::Document vary(const config::Document& base, const std::string& key,
                      const std::string& value) {
  config::Document doc = base;
  const auto dot = key.rfind('.');
  if (dot != std::string::npos) {
    config::Section* sec = doc.find(key.substr(0, dot));
    if (!sec) throw ConfigError(base.source(), 0, key, "unknown key: no such section");
    sec->set(key.substr(dot + 1), value);
    return doc;
  }
  bool found = false;
  for (auto& sec : doc.sections()) {
    if (sec.has(key)) {
      sec.set(key, value);
      found = true;
    }
  }
  if (!found) throw ConfigError(base.source(), 0, key, "unknown key: not set by any section");
  return doc;
}

std::vector<SweepRow> sweep(const config::Document& base, const SweepSpec& spec,
                            const std::optional<Calibration>& cal, unsigned workers) {
  if (spec.values.empty()) throw ConfigError("--vary", 0, spec.key, "empty value list");
  // Parse every variant up front so configuration errors surface before any
  // simulation starts.
  std::vector<Scenario> variants;
  for (const auto& v : spec.values) {
    Scenario sc = parse_scenario(vary(base, spec.key, v));
    if (cal) apply_calibration(sc, *cal);
    variants.push_back(std::move(sc));
  }
  std::vector<SweepRow> rows(variants.size());
  parallel_for(variants.size(), workers, [&](std::size_t i) {
    rows[i] = {spec.values[i], run(variants[i]).summary};
  });
  return rows;
}

std::string sweep_csv(const std::string& key, const std::vector<SweepRow>& rows) {
  std::string out = fmt::format(
      "{},displacement_bl,final_heading_deg,forward_snaps,no_snap,end_time_s\n", key);
  for (const auto& r : rows) {
    const auto& s = r.summary;
    out += fmt::format("{},{:.9g},{:.9g},{},{},{:.6f}\n", r.value, s.displacement_bl,
                       s.final_heading_deg, s.forward_snaps, s.no_snap ? "true" : "false",
                       s.end_time_s);
  }
  return out;
}

}  // namespace snapswim::scenario
