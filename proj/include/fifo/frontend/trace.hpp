#pragma once

// Traces: whitespace-separated action tokens `buffer!message` or
// `buffer?message`, optionally prefixed by the owning process (`client:s!req`).
// `#` comments run to the end of the line.

#include <cctype>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "fifo/frontend/parse.hpp"
#include "fifo/model.hpp"

namespace fifo {

inline Action parse_action_token(const System& s, std::string_view token, std::size_t line = 1, std::size_t column = 1) {
  std::optional<std::string_view> process;
  if (auto colon = token.find(':'); colon != std::string_view::npos) {
    process = token.substr(0, colon);
    token = token.substr(colon + 1);
  }
  auto op = token.find_first_of("!?");
  if (op == std::string_view::npos || op == 0 || op + 1 == token.size())
    throw ParseError(line, column, "malformed action '" + std::string(token) + "'");
  auto buffer = s.find_buffer(token.substr(0, op));
  if (!buffer) throw ParseError(line, column, "unknown buffer '" + std::string(token.substr(0, op)) + "'");
  auto message = s.find_message(token.substr(op + 1));
  if (!message) throw ParseError(line, column, "unknown message '" + std::string(token.substr(op + 1)) + "'");
  Action a{*buffer, token[op] == '!' ? Direction::send : Direction::receive, *message};
  auto owner = s.owner(a);
  if (!owner) throw ParseError(line, column, "no process performs '" + std::string(token) + "'");
  if (process && s.process(*owner).name != *process)
    throw ParseError(line, column, "action '" + std::string(token) + "' belongs to '" + s.process(*owner).name +
                                       "', not '" + std::string(*process) + "'");
  return a;
}

inline Execution parse_trace(const System& s, std::string_view text) {
  Execution out;
  std::size_t line = 1, col = 1, i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (c == '\n') {
      ++line, col = 1, ++i;
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\r') {
      ++col, ++i;
      continue;
    }
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j])) && text[j] != '#') ++j;
    out.push_back(parse_action_token(s, text.substr(i, j - i), line, col));
    col += j - i;
    i = j;
  }
  return out;
}

inline std::string format_trace(const System& s, std::span<const Action> e) {
  std::string out;
  for (std::size_t k = 0; k < e.size(); ++k) {
    if (k) out += " ";
    out += to_token(s, e[k]);
  }
  return out;
}

}  // namespace fifo
