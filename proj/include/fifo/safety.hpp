#pragma once

// Regular safety properties of greedy systems: configuration words, property
// automata, the pebble automaton, and boundedness.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "fifo/greedy.hpp"
#include "fifo/model.hpp"
#include "fifo/nfa.hpp"

namespace fifo {

/// A letter of a configuration word: a global control tuple, the separator #, or a message.
struct ConfigLetter {
  enum class Kind : std::uint8_t { control, separator, message };
  Kind kind = Kind::separator;
  ControlTuple control;
  MessageId message;

  static ConfigLetter of_control(ControlTuple c) { return {Kind::control, std::move(c), MessageId{}}; }
  static ConfigLetter separator() { return {Kind::separator, {}, MessageId{}}; }
  static ConfigLetter of_message(MessageId m) { return {Kind::message, {}, m}; }

  friend auto operator<=>(const ConfigLetter&, const ConfigLetter&) = default;
};

using ConfigWord = std::vector<ConfigLetter>;
using PropertyNfa = Nfa<ConfigLetter>;

inline std::string to_string(const System& s, const ConfigLetter& l) {
  switch (l.kind) {
    case ConfigLetter::Kind::control: return "CTRL" + control_to_string(s, l.control);
    case ConfigLetter::Kind::separator: return "#";
    case ConfigLetter::Kind::message: return s.message_name(l.message);
  }
  return "?";
}

inline std::string to_string(const System& s, const ConfigWord& w) {
  std::string out;
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (k) out += " ";
    out += to_string(s, w[k]);
  }
  return out;
}

inline ConfigWord encode_configuration(const System&, const Configuration& cfg) {
  ConfigWord out{ConfigLetter::of_control(cfg.control)};
  for (const auto& b : cfg.buffers) {
    out.push_back(ConfigLetter::separator());
    for (auto m : b) out.push_back(ConfigLetter::of_message(m));
  }
  return out;
}

inline std::optional<Configuration> decode_configuration(const System& s, const ConfigWord& w) {
  if (w.empty() || w[0].kind != ConfigLetter::Kind::control) return std::nullopt;
  Configuration cfg{w[0].control, {}};
  for (std::size_t k = 1; k < w.size(); ++k) {
    if (w[k].kind == ConfigLetter::Kind::separator)
      cfg.buffers.emplace_back();
    else if (w[k].kind == ConfigLetter::Kind::message && !cfg.buffers.empty())
      cfg.buffers.back().push_back(w[k].message);
    else
      return std::nullopt;
  }
  if (cfg.buffers.size() != s.buffer_count() || cfg.control.size() != s.process_count()) return std::nullopt;
  return cfg;
}

/// Every product control tuple, the separator, and every message.
inline std::set<ConfigLetter> config_alphabet(const System& s) {
  std::set<ConfigLetter> out;
  for (auto& c : product(s).all_controls()) out.insert(ConfigLetter::of_control(std::move(c)));
  out.insert(ConfigLetter::separator());
  for (std::size_t m = 0; m < s.message_count(); ++m) out.insert(ConfigLetter::of_message(MessageId(m)));
  return out;
}

struct Property {
  std::string name;
  PropertyNfa automaton;

  bool accepts(const System& s, const Configuration& cfg) const { return automaton.accepts(encode_configuration(s, cfg)); }
};

class UnknownControlState : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class TopologyRequirement { mailbox, binary };

class TopologyError : public std::runtime_error {
 public:
  TopologyError(TopologyRequirement r, const std::string& what) : std::runtime_error(what), requirement_(r) {}
  TopologyRequirement requirement() const noexcept { return requirement_; }

 private:
  TopologyRequirement requirement_;
};

class NotGreedySystem : public std::runtime_error {
 public:
  explicit NotGreedySystem(GreedyVerdict v)
      : std::runtime_error("system is not greedy"), verdict_(std::move(v)) {}
  const GreedyVerdict& verdict() const noexcept { return verdict_; }

 private:
  GreedyVerdict verdict_;
};

inline void check_control(const System& s, const ControlTuple& c) {
  if (c.size() != s.process_count())
    throw UnknownControlState("control tuple has " + std::to_string(c.size()) + " components, expected " +
                              std::to_string(s.process_count()));
  for (std::size_t p = 0; p < c.size(); ++p)
    if (c[p] >= s.process(p).automaton.states.size())
      throw UnknownControlState("process '" + s.process(p).name + "' has no state " + std::to_string(c[p]));
}

namespace detail {

/// Constraint on one buffer's contents. With `any`, every content is allowed;
/// otherwise the buffer is empty (if `allow_empty`) or starts with a message in `first`.
struct BufferConstraint {
  bool any = true;
  bool allow_empty = false;
  std::set<MessageId> first;
  friend auto operator<=>(const BufferConstraint&, const BufferConstraint&) = default;
};

/// Adds states reading (# b_i)* under per-buffer constraints. Returns the entry state.
inline PropertyNfa::State add_buffer_chain(const System& s, PropertyNfa& a, const std::vector<BufferConstraint>& cs) {
  const auto entry = a.add_state();
  std::vector<PropertyNfa::State> exits{entry};
  for (const auto& c : cs) {
    const auto start = a.add_state();
    for (auto x : exits) a.add_transition(x, ConfigLetter::separator(), start);
    exits.clear();
    if (c.any) {
      for (std::size_t m = 0; m < s.message_count(); ++m) a.add_transition(start, ConfigLetter::of_message(MessageId(m)), start);
      exits.push_back(start);
      continue;
    }
    const auto rest = a.add_state();
    for (std::size_t m = 0; m < s.message_count(); ++m) a.add_transition(rest, ConfigLetter::of_message(MessageId(m)), rest);
    for (auto m : c.first) a.add_transition(start, ConfigLetter::of_message(m), rest);
    exits.push_back(rest);
    if (c.allow_empty) exits.push_back(start);
  }
  for (auto x : exits) a.set_final(x);
  return entry;
}

inline std::set<MessageId> all_messages_except(const System& s, const std::set<MessageId>& excluded) {
  std::set<MessageId> out;
  for (std::size_t m = 0; m < s.message_count(); ++m)
    if (!excluded.contains(MessageId(m))) out.insert(MessageId(m));
  return out;
}

}  // namespace detail

/// Configurations whose control is `target`, with any buffer contents.
inline Property build_property_reach_control(const System& s, const ControlTuple& target) {
  check_control(s, target);
  Property p{"reach-control " + control_to_string(s, target), PropertyNfa(config_alphabet(s))};
  auto q0 = p.automaton.add_state(true);
  auto chain = detail::add_buffer_chain(s, p.automaton, std::vector<detail::BufferConstraint>(s.buffer_count()));
  p.automaton.add_transition(q0, ConfigLetter::of_control(target), chain);
  return p;
}

/// Exactly the configuration `target`.
inline Property build_property_reach_config(const System& s, const Configuration& target) {
  check_control(s, target.control);
  if (target.buffers.size() != s.buffer_count())
    throw std::invalid_argument("configuration has " + std::to_string(target.buffers.size()) + " buffers, expected " +
                                std::to_string(s.buffer_count()));
  for (const auto& b : target.buffers)
    for (auto m : b)
      if (m.index() >= s.message_count()) throw std::invalid_argument("configuration mentions an unknown message");
  Property p{"reach-config " + to_string(s, target), PropertyNfa(config_alphabet(s))};
  auto q = p.automaton.add_state(true);
  for (const auto& l : encode_configuration(s, target)) {
    auto next = p.automaton.add_state();
    p.automaton.add_transition(q, l, next);
    q = next;
  }
  p.automaton.set_final(q);
  return p;
}

/// A state whose outgoing transitions are all receives. States without any
/// outgoing transition count too.
inline bool is_receiving_state(const System& s, ProcessIndex p, StateIndex l) {
  const auto& aut = s.process(p).automaton;
  for (auto t : s.outgoing(p, l))
    if (aut.transitions[t].action.is_send()) return false;
  return true;
}

inline std::set<MessageId> ready_set(const System& s, ProcessIndex p, StateIndex l) {
  std::set<MessageId> out;
  const auto& aut = s.process(p).automaton;
  for (auto t : s.outgoing(p, l))
    if (aut.transitions[t].action.is_receive()) out.insert(aut.transitions[t].action.message);
  return out;
}

/// Some process sits in a receiving state while the head of its mailbox is outside its ready set.
inline Property build_property_unspecified_reception(const System& s) {
  if (!is_mailbox(s)) throw TopologyError(TopologyRequirement::mailbox, "unspecified reception needs a mailbox system");
  Property prop{"unspecified-reception", PropertyNfa(config_alphabet(s))};
  auto& a = prop.automaton;
  auto q0 = a.add_state(true);
  std::map<std::vector<detail::BufferConstraint>, PropertyNfa::State> chains;
  for (const auto& control : product(s).all_controls()) {
    for (ProcessIndex p = 0; p < s.process_count(); ++p) {
      auto mailbox = mailbox_of(s, p);
      if (!mailbox || !is_receiving_state(s, p, control[p])) continue;
      std::vector<detail::BufferConstraint> cs(s.buffer_count());
      cs[mailbox->index()] = {false, false, detail::all_messages_except(s, ready_set(s, p, control[p]))};
      if (cs[mailbox->index()].first.empty()) continue;
      auto [it, fresh] = chains.try_emplace(cs, 0);
      if (fresh) it->second = detail::add_buffer_chain(s, a, cs);
      a.add_transition(q0, ConfigLetter::of_control(control), it->second);
    }
  }
  return prop;
}

/// Configurations violating progress: the control is not final, yet no action is enabled.
inline Property build_property_progress(const System& s) {
  Property prop{"progress", PropertyNfa(config_alphabet(s))};
  auto& a = prop.automaton;
  auto q0 = a.add_state(true);
  std::map<std::vector<detail::BufferConstraint>, PropertyNfa::State> chains;
  for (const auto& control : product(s).all_controls()) {
    bool final = true, can_send = false;
    std::vector<std::set<MessageId>> heads(s.buffer_count());
    for (ProcessIndex p = 0; p < s.process_count(); ++p) {
      const auto& aut = s.process(p).automaton;
      for (auto t : s.outgoing(p, control[p])) {
        final = false;
        const auto& act = aut.transitions[t].action;
        if (act.is_send())
          can_send = true;
        else
          heads[act.buffer.index()].insert(act.message);
      }
    }
    if (final || can_send) continue;
    std::vector<detail::BufferConstraint> cs(s.buffer_count());
    for (std::size_t i = 0; i < cs.size(); ++i) cs[i] = {false, true, detail::all_messages_except(s, heads[i])};
    auto [it, fresh] = chains.try_emplace(cs, 0);
    if (fresh) it->second = detail::add_buffer_chain(s, a, cs);
    a.add_transition(q0, ConfigLetter::of_control(control), it->second);
  }
  return prop;
}

namespace detail {

struct PebbleState {
  ControlTuple current;
  ControlTuple guessed;
  std::vector<PropertyNfa::State> pebbles;
  std::vector<PropertyNfa::State> initial;
  friend bool operator==(const PebbleState&, const PebbleState&) = default;
};

struct PebbleStateHash {
  std::size_t operator()(const PebbleState& p) const noexcept {
    std::size_t seed = hash_range(p.current);
    hash_combine(seed, hash_range(p.guessed));
    hash_combine(seed, hash_range(p.pebbles));
    hash_combine(seed, hash_range(p.initial));
    return seed;
  }
};

inline std::vector<PropertyNfa::State> step_closed(const PropertyNfa& a, const std::vector<PropertyNfa::State>& from,
                                                   const ConfigLetter& l) {
  std::vector<PropertyNfa::State> next;
  for (auto q : a.epsilon_closure(from))
    for (const auto& e : a.edges(q))
      if (e.letter && *e.letter == l) next.push_back(e.target);
  return a.epsilon_closure(std::move(next));
}

}  // namespace detail

/// A_P: reads the communication word of a greedy execution and accepts when the
/// reached configuration is accepted by the property. One pebble per buffer
/// follows the property automaton over that buffer's unmatched sends.
inline GreedyNfa build_pebble_automaton(const System& s, const Property& property) {
  const auto& A = property.automaton;
  GreedyNfa out(send_alphabet(s));
  const std::size_t n = s.buffer_count();
  const auto sep = ConfigLetter::separator();

  // Candidate starting positions for pebbles 2..n: anything entered right after a #.
  std::vector<PropertyNfa::State> after_separator;
  {
    std::vector<PropertyNfa::State> targets;
    for (PropertyNfa::State q = 0; q < A.state_count(); ++q)
      for (const auto& e : A.edges(q))
        if (e.letter && *e.letter == sep) targets.push_back(e.target);
    after_separator = A.epsilon_closure(std::move(targets));
  }

  std::unordered_map<detail::PebbleState, GreedyNfa::State, detail::PebbleStateHash> id;
  std::vector<detail::PebbleState> states;
  auto is_final = [&](const detail::PebbleState& st) {
    if (st.current != st.guessed) return false;
    if (n == 0) return true;  // the guess already required an accepting state after the control letter
    for (std::size_t i = 0; i + 1 < n; ++i) {
      auto next = detail::step_closed(A, {st.pebbles[i]}, sep);
      if (!std::binary_search(next.begin(), next.end(), st.initial[i + 1])) return false;
    }
    auto last = A.epsilon_closure({st.pebbles[n - 1]});
    return std::any_of(last.begin(), last.end(), [&](auto q) { return A.is_final(q); });
  };
  auto intern = [&](detail::PebbleState st) {
    auto it = id.find(st);
    if (it != id.end()) return it->second;
    auto q = out.add_state(false, is_final(st));
    id.emplace(st, q);
    states.push_back(std::move(st));
    return q;
  };

  const auto initial_property_states = A.epsilon_closure(A.initials());
  std::set<ControlTuple> guesses;
  for (auto q : initial_property_states)
    for (const auto& e : A.edges(q))
      if (e.letter && e.letter->kind == ConfigLetter::Kind::control) guesses.insert(e.letter->control);

  for (const auto& guess : guesses) {
    auto after_control = detail::step_closed(A, initial_property_states, ConfigLetter::of_control(guess));
    if (n == 0) {
      if (std::any_of(after_control.begin(), after_control.end(), [&](auto q) { return A.is_final(q); }))
        out.set_initial(intern({s.initial_control(), guess, {}, {}}));
      continue;
    }
    auto first = detail::step_closed(A, after_control, sep);
    // Enumerate pebble tuples: pebble 1 from `first`, the rest from `after_separator`.
    std::vector<PropertyNfa::State> tuple(n);
    std::vector<std::size_t> pos(n, 0);
    auto choices = [&](std::size_t i) -> const std::vector<PropertyNfa::State>& { return i == 0 ? first : after_separator; };
    bool empty = false;
    for (std::size_t i = 0; i < n; ++i) empty = empty || choices(i).empty();
    if (empty) continue;
    auto advance = [&] {
      for (std::size_t i = n; i-- > 0;) {
        if (++pos[i] < choices(i).size()) return true;
        pos[i] = 0;
      }
      return false;
    };
    do {
      for (std::size_t i = 0; i < n; ++i) tuple[i] = choices(i)[pos[i]];
      out.set_initial(intern({s.initial_control(), guess, tuple, tuple}));
    } while (advance());
  }

  const ProductAutomaton prod(s);
  for (std::size_t next = 0; next < states.size(); ++next) {
    const auto from = static_cast<GreedyNfa::State>(next);
    const auto cur = states[next];
    for (const auto& t : prod.transitions_from(cur.current)) {
      const auto& a = t.action;
      if (!a.is_send()) continue;
      const auto i = a.buffer.index();
      for (auto q : detail::step_closed(A, {cur.pebbles[i]}, ConfigLetter::of_message(a.message))) {
        auto st = cur;
        st.current = t.target;
        st.pebbles[i] = q;
        out.add_transition(from, CommLetter{a.buffer, CommKind::unmatched_send, a.message}, intern(std::move(st)));
      }
      for (const auto& target : prod.successors(t.target, receive_action(a.buffer, a.message))) {
        auto st = cur;
        st.current = target;
        out.add_transition(from, CommLetter{a.buffer, CommKind::matched, a.message}, intern(std::move(st)));
      }
    }
  }
  return out;
}

struct SafetyVerdict {
  bool safe = true;
  CommWord witness_word;
  Execution witness_actions;
  std::optional<Configuration> reached;
};

struct SafetyOptions {
  Adjacency adjacency = Adjacency::full;
  /// Skip the greediness check when the caller has already established it.
  bool assume_greedy = false;
};

inline void require_greedy(const System& s, const SafetyOptions& options) {
  if (options.assume_greedy) return;
  auto v = check_greedy(s, {options.adjacency, false});
  if (!v.greedy) throw NotGreedySystem(std::move(v));
}

inline SafetyVerdict check_safety(const System& s, const Property& property, SafetyOptions options = {}) {
  require_greedy(s, options);
  auto word = find_accepting_word(intersect(build_pebble_automaton(s, property), build_greedy_prefix_automaton(s)));
  SafetyVerdict v;
  if (!word) return v;
  v.safe = false;
  v.witness_word = std::move(*word);
  v.witness_actions = expand(v.witness_word);
  v.reached = run(s, v.witness_actions);
  return v;
}

struct BoundednessVerdict {
  bool bounded = true;
  /// Largest number of messages each buffer can hold (when bounded).
  std::vector<std::size_t> per_buffer;
  std::size_t k = 0;
  /// When unbounded: stem·cycle^n is a greedy communication word for every n,
  /// and each repetition of the cycle leaves one more message in `growing_buffer`.
  CommWord stem;
  CommWord cycle;
  std::optional<BufferId> growing_buffer;
};

inline BoundednessVerdict check_boundedness(const System& s, SafetyOptions options = {}) {
  require_greedy(s, options);
  const auto prefix = build_greedy_prefix_automaton(s);
  const auto erased = erase_letters(prefix, [](const CommLetter& l) { return l.kind == CommKind::unmatched_send; });
  const auto r = finiteness_and_longest(
      erased, [](const CommLetter& l) -> std::optional<std::size_t> { return l.buffer.index(); }, s.buffer_count());
  BoundednessVerdict v;
  if (!r.infinite) {
    v.per_buffer = r.longest;
    for (auto k : v.per_buffer) v.k = std::max(v.k, k);
    return v;
  }
  v.bounded = false;
  auto letter_of = [&](const EdgeRef& e) { return *prefix.edges(e.from)[e.edge].letter; };
  for (const auto& e : r.stem) v.stem.push_back(letter_of(e));
  for (const auto& e : r.cycle) {
    auto l = letter_of(e);
    if (l.kind == CommKind::unmatched_send && !v.growing_buffer) v.growing_buffer = l.buffer;
    v.cycle.push_back(l);
  }
  return v;
}

}  // namespace fifo
