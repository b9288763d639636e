#pragma once

// JSON formats: property automata, configurations, and verdicts.
//
// Property automaton:
//   {"states": [...], "initials": [...], "finals": [...],
//    "transitions": [[src, letter, dst], ...]}
// States are strings or integers. A letter is "CTRL(a,b,c)" (one local state
// name per process), "#", a message name, or "" for an epsilon move.
//
// Configuration:
//   {"control": [state names], "buffers": {"buffer": [messages], ...}}
// Buffers left out are empty.

#include <map>
#include <string>

#include "json.hpp"

#include "fifo/causality.hpp"
#include "fifo/greedy.hpp"
#include "fifo/halfduplex.hpp"
#include "fifo/model.hpp"
#include "fifo/safety.hpp"

namespace fifo {

using json = nlohmann::json;

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline ControlTuple parse_control(const System& s, const std::vector<std::string>& names) {
  if (names.size() != s.process_count())
    throw UnknownControlState("control tuple has " + std::to_string(names.size()) + " components, expected " +
                              std::to_string(s.process_count()));
  ControlTuple out;
  for (std::size_t p = 0; p < names.size(); ++p) {
    auto st = s.process(p).automaton.find_state(names[p]);
    if (!st) throw UnknownControlState("process '" + s.process(p).name + "' has no state '" + names[p] + "'");
    out.push_back(*st);
  }
  return out;
}

/// "a,b,c" or "(a,b,c)", one state name per process.
inline ControlTuple parse_control(const System& s, std::string_view text) {
  if (text.size() >= 2 && text.front() == '(' && text.back() == ')') text = text.substr(1, text.size() - 2);
  std::vector<std::string> names;
  std::size_t pos = 0;
  while (true) {
    auto comma = text.find(',', pos);
    auto part = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    while (!part.empty() && part.front() == ' ') part.remove_prefix(1);
    while (!part.empty() && part.back() == ' ') part.remove_suffix(1);
    names.emplace_back(part);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return parse_control(s, names);
}

inline std::optional<ConfigLetter> parse_config_letter(const System& s, const std::string& text) {
  if (text.empty() || text == "ε") return std::nullopt;
  if (text == "#") return ConfigLetter::separator();
  if (text.starts_with("CTRL(") && text.ends_with(")"))
    return ConfigLetter::of_control(parse_control(s, std::string_view(text).substr(4)));
  auto m = s.find_message(text);
  if (!m) throw FormatError("unknown letter '" + text + "'");
  return ConfigLetter::of_message(*m);
}

inline Property load_property(const System& s, const json& j, std::string name = "nfa") {
  try {
    Property p{std::move(name), PropertyNfa(config_alphabet(s))};
    std::map<std::string, PropertyNfa::State> id;
    auto key = [](const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
    for (const auto& st : j.at("states")) {
      if (!id.emplace(key(st), p.automaton.add_state()).second) throw FormatError("state " + key(st) + " listed twice");
    }
    auto state = [&](const json& v) {
      auto it = id.find(key(v));
      if (it == id.end()) throw FormatError("unknown state " + key(v));
      return it->second;
    };
    for (const auto& st : j.at("initials")) p.automaton.set_initial(state(st));
    for (const auto& st : j.at("finals")) p.automaton.set_final(state(st));
    for (const auto& t : j.at("transitions")) {
      if (!t.is_array() || t.size() != 3) throw FormatError("a transition is [source, letter, target]");
      auto letter = parse_config_letter(s, t[1].get<std::string>());
      if (letter)
        p.automaton.add_transition(state(t[0]), *letter, state(t[2]));
      else
        p.automaton.add_epsilon(state(t[0]), state(t[2]));
    }
    return p;
  } catch (const json::exception& e) {
    throw FormatError(std::string("property automaton: ") + e.what());
  }
}

inline Configuration load_configuration(const System& s, const json& j) {
  try {
    Configuration cfg{parse_control(s, j.at("control").get<std::vector<std::string>>()),
                      std::vector<std::vector<MessageId>>(s.buffer_count())};
    if (j.contains("buffers")) {
      for (const auto& [name, contents] : j.at("buffers").items()) {
        auto b = s.find_buffer(name);
        if (!b) throw FormatError("unknown buffer '" + name + "'");
        for (const auto& m : contents) {
          auto id = s.find_message(m.get<std::string>());
          if (!id) throw FormatError("unknown message '" + m.get<std::string>() + "'");
          cfg.buffers[b->index()].push_back(*id);
        }
      }
    }
    return cfg;
  } catch (const json::exception& e) {
    throw FormatError(std::string("configuration: ") + e.what());
  }
}

inline json to_json(const System& s, const Configuration& cfg) {
  json control = json::array();
  for (std::size_t p = 0; p < cfg.control.size(); ++p) control.push_back(s.process(p).automaton.states.at(cfg.control[p]));
  json buffers = json::object();
  for (std::size_t b = 0; b < cfg.buffers.size(); ++b) {
    json contents = json::array();
    for (auto m : cfg.buffers[b]) contents.push_back(s.message_name(m));
    buffers[s.buffer_name(BufferId(b))] = contents;
  }
  return {{"control", control}, {"buffers", buffers}};
}

inline json to_json(const System& s, std::span<const Action> e) {
  json out = json::array();
  for (const auto& a : e) out.push_back(to_token(s, a));
  return out;
}

inline json to_json(const System& s, const CommWord& w) {
  json out = json::array();
  for (const auto& l : w) out.push_back(to_string(s, l));
  return out;
}

inline json to_json(const System& s, const Communication& c) {
  json out = {{"send", c.send}, {"buffer", s.buffer_name(c.buffer)}, {"message", s.message_name(c.message)}};
  out["receive"] = c.receive ? json(*c.receive) : json(nullptr);
  return out;
}

inline json to_json(const System& s, const GreedyVerdict& v) {
  json cycle = json::array();
  for (const auto& c : v.conflict_cycle) cycle.push_back(to_json(s, c));
  return {{"status", v.greedy ? "Greedy" : "NotGreedy"},
          {"witness_word", to_json(s, v.witness_word)},
          {"witness_actions", to_json(s, std::span<const Action>(v.witness_actions))},
          {"conflict_cycle", cycle}};
}

inline json to_json(const System& s, const SafetyVerdict& v, const std::string& property) {
  json out = {{"status", v.safe ? "Safe" : "Unsafe"},
              {"property", property},
              {"witness_word", to_json(s, v.witness_word)},
              {"witness_actions", to_json(s, std::span<const Action>(v.witness_actions))}};
  out["configuration"] = v.reached ? to_json(s, *v.reached) : json(nullptr);
  return out;
}

inline json to_json(const System& s, const BoundednessVerdict& v) {
  json out = {{"status", v.bounded ? "Bounded" : "Unbounded"}};
  if (v.bounded) {
    json per = json::object();
    for (std::size_t b = 0; b < v.per_buffer.size(); ++b) per[s.buffer_name(BufferId(b))] = v.per_buffer[b];
    out["per_buffer"] = per;
    out["k"] = v.k;
  } else {
    out["stem"] = to_json(s, v.stem);
    out["cycle"] = to_json(s, v.cycle);
    out["growing_buffer"] = v.growing_buffer ? json(s.buffer_name(*v.growing_buffer)) : json(nullptr);
  }
  return out;
}

inline json to_json(const System& s, const HalfDuplexVerdict& v) {
  json out = {{"status", std::string(to_string(v.status))},
              {"bounds", {{"depth", v.bounds.depth}, {"buffer_bound", v.bounds.buffer_bound}, {"max_nodes", v.bounds.max_nodes}}},
              {"explored", v.explored},
              {"budget_exhausted", v.budget_exhausted}};
  out["witness"] = v.witness ? to_json(s, std::span<const Action>(*v.witness)) : json(nullptr);
  return out;
}

}  // namespace fifo
