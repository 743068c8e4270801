#pragma once

// Sectioned key-value text format shared by scenario, material and
// calibration files:
//
//   # comment
//   [section.name]
//   key = value        # trailing comment
//
// Section and key order is preserved so documents can be written back
// deterministically.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace snapswim::config {

struct Entry {
  std::string key;
  std::string value;
  int line = 0;
};

class Section {
 public:
  Section(std::string name, int line, std::string source)
      : name_(std::move(name)), line_(line), source_(std::move(source)) {}

  const std::string& name() const { return name_; }
  int line() const { return line_; }
  const std::vector<Entry>& entries() const { return entries_; }

  bool has(std::string_view key) const { return find(key) != nullptr; }
  const Entry* find(std::string_view key) const;
  Entry* find(std::string_view key);

  // Typed accessors throw ConfigError naming the key and its line.
  double number(std::string_view key) const;
  double number_or(std::string_view key, double fallback) const;
  long integer(std::string_view key) const;
  std::string string(std::string_view key) const;
  std::string string_or(std::string_view key, std::string fallback) const;
  bool boolean_or(std::string_view key, bool fallback) const;
  std::vector<double> number_list(std::string_view key) const;

  // Rejects keys outside `allowed`; catches typos in hand-written files.
  void require_known(const std::vector<std::string_view>& allowed) const;

  void set(std::string key, std::string value, int line = 0);

 private:
  std::string name_;
  int line_;
  std::string source_;
  std::vector<Entry> entries_;
};

class Document {
 public:
  static Document parse(std::string_view text, std::string source = "<string>");
  static Document load(const std::string& path);

  const std::string& source() const { return source_; }
  const std::vector<Section>& sections() const { return sections_; }
  std::vector<Section>& sections() { return sections_; }

  const Section* find(std::string_view name) const;
  Section* find(std::string_view name);
  const Section& section(std::string_view name) const;
  Section& add_section(std::string name);

  // Sections whose name starts with `prefix` followed by a dot, in file order.
  std::vector<const Section*> with_prefix(std::string_view prefix) const;

  std::string to_text() const;

 private:
  std::string source_ = "<string>";
  std::vector<Section> sections_;
};

// Shortest decimal text that parses back to the identical double.
std::string format_number(double value);

}  // namespace snapswim::config
