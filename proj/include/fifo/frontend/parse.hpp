#pragma once

// The `.fifo` system description language.
//
//   system    := "system" IDENT ["topology" IDENT] process+
//   process   := "process" IDENT "{" ["states" IDENT+] "initial" IDENT trans* "}"
//   trans     := IDENT "->" IDENT ":" IDENT ("!" | "?") IDENT
//
// `#` starts a comment that runs to the end of the line. Identifiers use
// letters, digits, `_` and `.`. With a `states` clause every state must be
// declared; without one, states are introduced by use.

#include <cctype>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fifo/model.hpp"

namespace fifo {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

namespace detail {

struct Token {
  enum class Kind { ident, arrow, colon, bang, query, lbrace, rbrace, end } kind = Kind::end;
  std::string text;
  std::size_t line = 1;
  std::size_t column = 1;
};

inline bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.'; }

inline std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1, i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    Token t;
    t.line = line;
    t.column = col;
    if (ident_char(c)) {
      std::size_t j = i;
      while (j < text.size() && ident_char(text[j])) ++j;
      t.kind = Token::Kind::ident;
      t.text = std::string(text.substr(i, j - i));
      advance(j - i);
    } else if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') {
      t.kind = Token::Kind::arrow;
      t.text = "->";
      advance(2);
    } else {
      switch (c) {
        case ':': t.kind = Token::Kind::colon; break;
        case '!': t.kind = Token::Kind::bang; break;
        case '?': t.kind = Token::Kind::query; break;
        case '{': t.kind = Token::Kind::lbrace; break;
        case '}': t.kind = Token::Kind::rbrace; break;
        default: throw ParseError(line, col, std::string("unexpected character '") + c + "'");
      }
      t.text = std::string(1, c);
      advance(1);
    }
    out.push_back(std::move(t));
  }
  Token end;
  end.line = line;
  end.column = col;
  out.push_back(end);
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : tokens_(tokenize(text)) {}

  System parse() {
    keyword("system");
    SystemBuilder builder(ident("system name").text);
    std::optional<Token> topology_token;
    std::optional<Topology> topology;
    if (peek_keyword("topology")) {
      next();
      topology_token = ident("topology");
      topology = parse_topology(topology_token->text);
      if (!topology)
        throw ParseError(topology_token->line, topology_token->column, "unknown topology '" + topology_token->text + "'");
      builder.topology(*topology);
    }
    std::set<std::string> names;
    if (!peek_keyword("process")) fail(peek(), "expected 'process'");
    while (peek_keyword("process")) process(builder, names);
    if (peek().kind != Token::Kind::end) fail(peek(), "expected 'process' or end of input");
    auto system = builder.build();
    if (topology && !conforms_to(system, *topology))
      throw ParseError(topology_token->line, topology_token->column,
                       "topology mismatch: declared " + std::string(to_string(*topology)) + " but the system is " +
                           std::string(to_string(classify_topology(system))));
    return system;
  }

 private:
  void process(SystemBuilder& builder, std::set<std::string>& names) {
    keyword("process");
    auto name = ident("process name");
    if (!names.insert(name.text).second) fail(name, "duplicate process '" + name.text + "'");
    builder.process(name.text);
    expect(Token::Kind::lbrace, "'{'");
    std::optional<std::set<std::string>> declared;
    if (peek_keyword("states")) {
      next();
      declared.emplace();
      while (peek().kind == Token::Kind::ident && !peek_keyword("initial")) {
        auto s = next();
        if (!declared->insert(s.text).second) fail(s, "state '" + s.text + "' declared twice");
        builder.state(s.text);
      }
    }
    keyword("initial");
    auto init = ident("initial state");
    check_declared(declared, init);
    builder.initial(init.text);
    while (peek().kind == Token::Kind::ident) {
      auto src = next();
      check_declared(declared, src);
      expect(Token::Kind::arrow, "'->'");
      auto dst = ident("target state");
      check_declared(declared, dst);
      expect(Token::Kind::colon, "':'");
      auto buffer = ident("buffer");
      auto op = next();
      if (op.kind != Token::Kind::bang && op.kind != Token::Kind::query) fail(op, "expected '!' or '?'");
      auto message = ident("message");
      auto dir = op.kind == Token::Kind::bang ? Direction::send : Direction::receive;
      builder.transition(src.text, buffer.text, dir, message.text, dst.text);
    }
    expect(Token::Kind::rbrace, "'}'");
  }

  static void check_declared(const std::optional<std::set<std::string>>& declared, const Token& t) {
    if (declared && !declared->contains(t.text)) fail(t, "undeclared state '" + t.text + "'");
  }

  [[noreturn]] static void fail(const Token& t, const std::string& message) { throw ParseError(t.line, t.column, message); }

  const Token& peek() const { return tokens_[pos_]; }
  Token next() {
    auto t = tokens_[pos_];
    if (pos_ + 1 < tokens_.size()) ++pos_;
    return t;
  }
  bool peek_keyword(std::string_view k) const { return peek().kind == Token::Kind::ident && peek().text == k; }
  void keyword(std::string_view k) {
    if (!peek_keyword(k)) fail(peek(), "expected '" + std::string(k) + "'");
    next();
  }
  Token ident(std::string_view what) {
    if (peek().kind != Token::Kind::ident) fail(peek(), "expected " + std::string(what));
    return next();
  }
  void expect(Token::Kind k, std::string_view what) {
    if (peek().kind != k) fail(peek(), "expected " + std::string(what));
    next();
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline System parse_system(std::string_view text) { return detail::Parser(text).parse(); }

/// Prints a description that parses back to an equal system.
inline std::string print_system(const System& s) {
  std::string out = "system " + s.name();
  if (s.declared_topology()) out += " topology " + std::string(to_string(*s.declared_topology()));
  out += "\n";
  for (const auto& p : s.processes()) {
    const auto& aut = p.automaton;
    out += "\nprocess " + p.name + " {\n  states";
    for (const auto& st : aut.states) out += " " + st;
    out += "\n  initial " + aut.states.at(aut.initial) + "\n";
    for (const auto& t : aut.transitions) {
      out += "  " + aut.states[t.source] + " -> " + aut.states[t.target] + " : " + s.buffer_name(t.action.buffer) +
             (t.action.is_send() ? "!" : "?") + s.message_name(t.action.message) + "\n";
    }
    out += "}\n";
  }
  return out;
}

}  // namespace fifo
