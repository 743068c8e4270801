#include "snapswim/config/kv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "snapswim/error.hpp"

namespace snapswim {

ConfigError::ConfigError(const std::string& source, int line, const std::string& key,
                         const std::string& message)
    : std::runtime_error(
          line > 0 ? fmt::format("{}:{}: key '{}': {}", source, line, key, message)
                   : (key.empty() ? fmt::format("{}: {}", source, message)
                                  : fmt::format("{}: key '{}': {}", source, key, message))),
      source_(source),
      line_(line),
      key_(key) {}

}  // namespace snapswim

namespace snapswim::config {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool valid_name(std::string_view s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
           c == '_' || c == '.' || c == '-';
  });
}

std::optional<double> parse_double(std::string_view s) {
  s = trim(s);
  if (s.empty()) return std::nullopt;
  if (s.front() == '+') s.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(value)) {
    return std::nullopt;
  }
  return value;
}

}  // namespace

const Entry* Section::find(std::string_view key) const {
  for (const auto& e : entries_) {
    if (e.key == key) return &e;
  }
  return nullptr;
}

Entry* Section::find(std::string_view key) {
  for (auto& e : entries_) {
    if (e.key == key) return &e;
  }
  return nullptr;
}

double Section::number(std::string_view key) const {
  const Entry* e = find(key);
  if (e == nullptr) {
    throw ConfigError(source_, line_, fmt::format("{}.{}", name_, key), "missing required key");
  }
  const auto v = parse_double(e->value);
  if (!v) {
    throw ConfigError(source_, e->line, e->key,
                      fmt::format("expected a number, got '{}'", e->value));
  }
  return *v;
}

double Section::number_or(std::string_view key, double fallback) const {
  return has(key) ? number(key) : fallback;
}

long Section::integer(std::string_view key) const {
  const double v = number(key);
  if (v != std::floor(v) || std::abs(v) > 1e9) {
    const Entry* e = find(key);
    throw ConfigError(source_, e->line, e->key, "expected an integer");
  }
  return static_cast<long>(v);
}

std::string Section::string(std::string_view key) const {
  const Entry* e = find(key);
  if (e == nullptr) {
    throw ConfigError(source_, line_, fmt::format("{}.{}", name_, key), "missing required key");
  }
  return e->value;
}

std::string Section::string_or(std::string_view key, std::string fallback) const {
  const Entry* e = find(key);
  return e != nullptr ? e->value : std::move(fallback);
}

bool Section::boolean_or(std::string_view key, bool fallback) const {
  const Entry* e = find(key);
  if (e == nullptr) return fallback;
  if (e->value == "true") return true;
  if (e->value == "false") return false;
  throw ConfigError(source_, e->line, e->key,
                    fmt::format("expected true or false, got '{}'", e->value));
}

std::vector<double> Section::number_list(std::string_view key) const {
  const Entry* e = find(key);
  if (e == nullptr) {
    throw ConfigError(source_, line_, fmt::format("{}.{}", name_, key), "missing required key");
  }
  std::vector<double> out;
  std::string_view rest = e->value;
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const auto item = trim(rest.substr(0, comma));
    const auto v = parse_double(item);
    if (!v) {
      throw ConfigError(source_, e->line, e->key,
                        fmt::format("expected a comma-separated number list, got '{}'", e->value));
    }
    out.push_back(*v);
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  if (out.empty()) throw ConfigError(source_, e->line, e->key, "empty list");
  return out;
}

void Section::require_known(const std::vector<std::string_view>& allowed) const {
  for (const auto& e : entries_) {
    if (std::find(allowed.begin(), allowed.end(), e.key) == allowed.end()) {
      throw ConfigError(source_, e.line, e.key,
                        fmt::format("unknown key in section [{}]", name_));
    }
  }
}

void Section::set(std::string key, std::string value, int line) {
  if (Entry* e = find(key)) {
    e->value = std::move(value);
    return;
  }
  entries_.push_back(Entry{std::move(key), std::move(value), line});
}

Document Document::parse(std::string_view text, std::string source) {
  Document doc;
  doc.source_ = std::move(source);
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? text.npos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ConfigError(doc.source_, line_no, std::string(line), "unterminated section header");
      }
      const auto name = trim(line.substr(1, line.size() - 2));
      if (!valid_name(name)) {
        throw ConfigError(doc.source_, line_no, std::string(name), "invalid section name");
      }
      if (doc.find(name) != nullptr) {
        throw ConfigError(doc.source_, line_no, std::string(name), "duplicate section");
      }
      doc.sections_.emplace_back(std::string(name), line_no, doc.source_);
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(doc.source_, line_no, std::string(line), "expected 'key = value'");
    }
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (!valid_name(key)) {
      throw ConfigError(doc.source_, line_no, std::string(key), "invalid key name");
    }
    if (doc.sections_.empty()) {
      throw ConfigError(doc.source_, line_no, std::string(key), "key outside of any section");
    }
    auto& sec = doc.sections_.back();
    if (sec.has(key)) {
      throw ConfigError(doc.source_, line_no, std::string(key), "duplicate key");
    }
    if (value.empty()) {
      throw ConfigError(doc.source_, line_no, std::string(key), "empty value");
    }
    sec.set(std::string(key), std::string(value), line_no);
  }
  return doc;
}

Document Document::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path, 0, "", "cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str(), path);
}

const Section* Document::find(std::string_view name) const {
  for (const auto& s : sections_) {
    if (s.name() == name) return &s;
  }
  return nullptr;
}

Section* Document::find(std::string_view name) {
  for (auto& s : sections_) {
    if (s.name() == name) return &s;
  }
  return nullptr;
}

const Section& Document::section(std::string_view name) const {
  const Section* s = find(name);
  if (s == nullptr) {
    throw ConfigError(source_, 0, std::string(name), "missing required section");
  }
  return *s;
}

Section& Document::add_section(std::string name) {
  if (Section* s = find(name)) return *s;
  sections_.emplace_back(std::move(name), 0, source_);
  return sections_.back();
}

std::vector<const Section*> Document::with_prefix(std::string_view prefix) const {
  std::vector<const Section*> out;
  for (const auto& s : sections_) {
    const auto& n = s.name();
    if (n.size() > prefix.size() + 1 && n.compare(0, prefix.size(), prefix) == 0 &&
        n[prefix.size()] == '.') {
      out.push_back(&s);
    }
  }
  return out;
}

std::string Document::to_text() const {
  std::string out;
  for (std::size_t i = 0; i < sections_.size(); ++i) {
    if (i > 0) out += '\n';
    out += fmt::format("[{}]\n", sections_[i].name());
    for (const auto& e : sections_[i].entries()) {
      out += fmt::format("{} = {}\n", e.key, e.value);
    }
  }
  return out;
}

std::string format_number(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc{}) return fmt::format("{:.17g}", value);
  return std::string(buf, ptr);
}

}  // namespace snapswim::config
