#pragma once

// Mission language:
//
//   FORWARD <body lengths>
//   TURN <degrees, positive = left>
//   DROP
//   RETURN
//
// Statements are separated by newlines or ';'. Keywords are
// case-insensitive and '#' starts a comment.

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace snapswim::mission {

enum class Kind { forward, turn, drop, return_home };

struct Statement {
  Kind kind = Kind::forward;
  double value = 0.0;  // body lengths for forward, degrees for turn
  int line = 0;
  int column = 0;

  // Source position is not part of a statement's identity.
  friend bool operator==(const Statement& a, const Statement& b) {
    return a.kind == b.kind && a.value == b.value;
  }
};

struct Mission {
  std::vector<Statement> statements;

  bool has_drop() const;
  bool has_return() const;
  // Turn angles negated.
  Mission mirrored() const;
  friend bool operator==(const Mission&, const Mission&) = default;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, const std::string& message);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

Mission parse(std::string_view text);
// One statement per line; parse(to_text(m)) == m.
std::string to_text(const Mission& m);

}  // namespace snapswim::mission
