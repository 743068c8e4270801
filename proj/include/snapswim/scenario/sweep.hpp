#pragma once

#include <optional>
#include <string>
#include <vector>

#include "snapswim/config/kv.hpp"
#include "snapswim/scenario/run.hpp"

namespace snapswim::scenario {

// `--vary` argument: `key=v1,v2,...`. A bare key applies to every section
// that sets it; `section.key` targets one section.
struct SweepSpec {
  std::string key;
  std::vector<std::string> values;
};

SweepSpec parse_vary(const std::string& text);

struct SweepRow {
  std::string value;
  Summary summary;
};

// Runs one variant per value on a worker pool; rows keep the input order.
// Throws ConfigError for a key no section accepts.
std::vector<SweepRow> sweep(const config::Document& base, const SweepSpec& spec,
                            const std::optional<Calibration>& cal, unsigned workers);

// Variant document with the swept key set to `value`.
config::Document vary(const config::Document& base, const std::string& key,
                      const std::string& value);

std::string sweep_csv(const std::string& key, const std::vector<SweepRow>& rows);

}  // namespace snapswim::scenario
