#pragma once

#include <stdexcept>
#include <string>

namespace snapswim {

// Displacement or parameter outside the range where a model is defined.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class NotBistableError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or invalid configuration. Carries the offending key and line so
// the CLI can report them; line is 0 when the problem is not tied to a line.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& source, int line, const std::string& key,
              const std::string& message);

  const std::string& source() const { return source_; }
  int line() const { return line_; }
  const std::string& key() const { return key_; }

 private:
  std::string source_;
  int line_;
  std::string key_;
};

class SimulationDiverged : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CalibrationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace snapswim
