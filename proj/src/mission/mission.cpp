#include "snapswim/mission/mission.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>

#include <fmt/format.h>

#include "snapswim/config/kv.hpp"

namespace snapswim::mission {

ParseError::ParseError(int line, int column, const std::string& message)
    : std::runtime_error(fmt::format("mission:{}:{}: {}", line, column, message)),
      line_(line),
      column_(column) {}

bool Mission::has_drop() const {
  return std::any_of(statements.begin(), statements.end(),
                     [](const Statement& s) { return s.kind == Kind::drop; });
}

bool Mission::has_return() const {
  return std::any_of(statements.begin(), statements.end(),
                     [](const Statement& s) { return s.kind == Kind::return_home; });
}

Mission Mission::mirrored() const {
  Mission m = *this;
  for (auto& s : m.statements) {
    if (s.kind == Kind::turn) s.value = -s.value;
  }
  return m;
}

namespace {

struct Token {
  std::string_view text;
  int column;  // 1-based
};

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r'; }

std::vector<Token> tokenize(std::string_view stmt, int first_column) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < stmt.size()) {
    while (i < stmt.size() && is_space(stmt[i])) ++i;
    if (i >= stmt.size()) break;
    const std::size_t start = i;
    while (i < stmt.size() && !is_space(stmt[i])) ++i;
    out.push_back({stmt.substr(start, i - start), first_column + static_cast<int>(start)});
  }
  return out;
}

std::string upper(std::string_view s) {
  std::string u(s);
  for (char& c : u) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return u;
}

double number(const Token& t, int line) {
  double v = 0.0;
  const char* end = t.text.data() + t.text.size();
  const auto [ptr, ec] = std::from_chars(t.text.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v)) {
    throw ParseError(line, t.column, fmt::format("malformed number '{}'", t.text));
  }
  return v;
}

Statement statement(const std::vector<Token>& toks, int line) {
  const std::string kw = upper(toks[0].text);
  Statement s;
  s.line = line;
  s.column = toks[0].column;
  std::size_t args = 0;
  if (kw == "FORWARD") {
    s.kind = Kind::forward;
    args = 1;
  } else if (kw == "TURN") {
    s.kind = Kind::turn;
    args = 1;
  } else if (kw == "DROP") {
    s.kind = Kind::drop;
  } else if (kw == "RETURN") {
    s.kind = Kind::return_home;
  } else {
    throw ParseError(line, toks[0].column, fmt::format("unknown keyword '{}'", toks[0].text));
  }
  if (toks.size() < 1 + args) {
    const auto& last = toks.back();
    throw ParseError(line, last.column + static_cast<int>(last.text.size()),
                     fmt::format("{} expects a number", kw));
  }
  if (toks.size() > 1 + args) {
    throw ParseError(line, toks[1 + args].column,
                     fmt::format("unexpected '{}' after {}", toks[1 + args].text, kw));
  }
  if (args == 1) {
    s.value = number(toks[1], line);
    if (s.kind == Kind::forward && !(s.value > 0.0)) {
      throw ParseError(line, toks[1].column, "FORWARD distance must be positive");
    }
  }
  return s;
}

}  // namespace

Mission parse(std::string_view text) {
  Mission m;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    std::size_t start = 0;
    while (start <= line.size()) {
      const std::size_t semi = line.find(';', start);
      const std::size_t stop = semi == std::string_view::npos ? line.size() : semi;
      const auto toks = tokenize(line.substr(start, stop - start), static_cast<int>(start) + 1);
      if (!toks.empty()) m.statements.push_back(statement(toks, line_no));
      if (semi == std::string_view::npos) break;
      start = semi + 1;
    }
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }

  if (m.statements.empty()) throw ParseError(1, 1, "empty mission");
  int drops = 0;
  for (std::size_t i = 0; i < m.statements.size(); ++i) {
    const auto& s = m.statements[i];
    if (s.kind == Kind::drop && ++drops > 1) {
      throw ParseError(s.line, s.column, "DROP may appear only once");
    }
    if (s.kind == Kind::return_home && i + 1 != m.statements.size()) {
      throw ParseError(s.line, s.column, "RETURN must be the last statement");
    }
  }
  return m;
}

std::string to_text(const Mission& m) {
  std::string out;
  for (const auto& s : m.statements) {
    switch (s.kind) {
      case Kind::forward:
        out += "FORWARD " + config::format_number(s.value);
        break;
      case Kind::turn:
        out += "TURN " + config::format_number(s.value);
        break;
      case Kind::drop:
        out += "DROP";
        break;
      case Kind::return_home:
        out += "RETURN";
        break;
    }
    out += '\n';
  }
  return out;
}

}  // namespace snapswim::mission
