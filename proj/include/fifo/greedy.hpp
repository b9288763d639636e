#pragma once

// Deciding greediness: the automaton of greedy executions followed by one
// receive, the automaton of borderline violations, and their intersection.

#include <compare>
#include <cstdint>
#include <future>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "fifo/causality.hpp"
#include "fifo/detail/hash.hpp"
#include "fifo/model.hpp"
#include "fifo/nfa.hpp"

namespace fifo {

enum class CommKind : std::uint8_t { unmatched_send, matched, receive };

/// A letter of Σ ∪ Σ_?: i!m (unmatched send), i!?m (send immediately received) or i?m.
struct CommLetter {
  BufferId buffer;
  CommKind kind = CommKind::unmatched_send;
  MessageId message;

  friend auto operator<=>(const CommLetter&, const CommLetter&) = default;

  std::vector<Action> actions() const {
    switch (kind) {
      case CommKind::unmatched_send: return {send_action(buffer, message)};
      case CommKind::matched: return {send_action(buffer, message), receive_action(buffer, message)};
      case CommKind::receive: return {receive_action(buffer, message)};
    }
    return {};
  }
};

using CommWord = std::vector<CommLetter>;
using GreedyNfa = Nfa<CommLetter>;

inline std::string to_string(const System& s, const CommLetter& l) {
  std::string_view op = l.kind == CommKind::unmatched_send ? "!" : l.kind == CommKind::matched ? "!?" : "?";
  return s.buffer_name(l.buffer) + std::string(op) + s.message_name(l.message);
}

inline std::string to_string(const System& s, const CommWord& w) {
  std::string out;
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (k) out += " ";
    out += to_string(s, w[k]);
  }
  return out;
}

inline std::optional<CommLetter> parse_comm_letter(const System& s, std::string_view text) {
  CommKind kind;
  std::size_t at, len;
  if ((at = text.find("!?")) != std::string_view::npos) {
    kind = CommKind::matched, len = 2;
  } else if ((at = text.find('!')) != std::string_view::npos) {
    kind = CommKind::unmatched_send, len = 1;
  } else if ((at = text.find('?')) != std::string_view::npos) {
    kind = CommKind::receive, len = 1;
  } else {
    return std::nullopt;
  }
  auto b = s.find_buffer(text.substr(0, at));
  auto m = s.find_message(text.substr(at + len));
  if (!b || !m) return std::nullopt;
  return CommLetter{*b, kind, *m};
}

inline CommWord parse_comm_word(const System& s, std::string_view text) {
  CommWord out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto end = text.find_first_of(" \t\n", pos);
    if (end == std::string_view::npos) end = text.size();
    auto token = text.substr(pos, end - pos);
    if (!token.empty() && token != "·" && token != ".") {
      auto l = parse_comm_letter(s, token);
      if (!l) throw std::invalid_argument("bad communication letter '" + std::string(token) + "'");
      out.push_back(*l);
    }
    pos = end + 1;
  }
  return out;
}

inline Execution expand(std::span<const CommLetter> w) {
  Execution out;
  for (const auto& l : w)
    for (const auto& a : l.actions()) out.push_back(a);
  return out;
}

/// The communication word of an execution whose matching pairs are all adjacent.
/// With `trailing_receive`, the last action must be a receive and becomes a Σ_? letter.
inline CommWord comm_word(std::span<const Action> e, bool trailing_receive = false) {
  auto body = e;
  if (trailing_receive) {
    if (e.empty() || !e.back().is_receive()) throw std::invalid_argument("execution does not end with a receive");
    body = e.first(e.size() - 1);
  }
  const auto comms = matching_pairs(body);
  CommWord out;
  for (const auto& c : comms) {
    if (c.receive && *c.receive != c.send + 1) throw std::invalid_argument("execution is not greedy");
    out.push_back({c.buffer, c.matched() ? CommKind::matched : CommKind::unmatched_send, c.message});
  }
  if (trailing_receive) out.push_back({e.back().buffer, CommKind::receive, e.back().message});
  return out;
}

/// Σ restricted to letters the system can produce: i!m for each send action and
/// i!?m when i?m is an action too.
inline std::set<CommLetter> send_alphabet(const System& s) {
  std::set<CommLetter> out;
  for (const auto& p : s.processes()) {
    for (const auto& a : p.automaton.actions) {
      if (!a.is_send()) continue;
      out.insert({a.buffer, CommKind::unmatched_send, a.message});
      if (s.owner(receive_action(a.buffer, a.message))) out.insert({a.buffer, CommKind::matched, a.message});
    }
  }
  return out;
}

/// Σ ∪ Σ_?, where Σ_? holds i?m for each receive action.
inline std::set<CommLetter> full_alphabet(const System& s) {
  auto out = send_alphabet(s);
  for (const auto& p : s.processes())
    for (const auto& a : p.automaton.actions)
      if (a.is_receive()) out.insert({a.buffer, CommKind::receive, a.message});
  return out;
}

namespace detail {

struct GreedyState {
  ControlTuple control;
  std::int64_t guess = -1;  // buffer * message_count + message, or -1 for no guess
  std::vector<bool> nonempty;

  friend bool operator==(const GreedyState&, const GreedyState&) = default;
};

struct GreedyStateHash {
  std::size_t operator()(const GreedyState& g) const noexcept {
    std::size_t seed = hash_range(g.control);
    hash_combine(seed, std::hash<std::int64_t>{}(g.guess));
    hash_combine(seed, std::hash<std::vector<bool>>{}(g.nonempty));
    return seed;
  }
};

/// Explores the greedy state space from the initial control. With `with_guess`
/// the guess component and the final sink are built, otherwise only the
/// guess-free slice with every state accepting.
inline GreedyNfa build_greedy(const System& s, bool with_guess) {
  GreedyNfa out(with_guess ? full_alphabet(s) : send_alphabet(s));
  const auto mcount = static_cast<std::int64_t>(s.message_count());
  std::unordered_map<GreedyState, GreedyNfa::State, GreedyStateHash> id;
  std::vector<GreedyState> states;
  auto intern = [&](GreedyState g) {
    auto it = id.find(g);
    if (it != id.end()) return it->second;
    auto st = out.add_state(false, !with_guess);
    id.emplace(g, st);
    states.push_back(std::move(g));
    return st;
  };
  GreedyState init{s.initial_control(), -1, std::vector<bool>(s.buffer_count(), false)};
  out.set_initial(intern(init));
  std::optional<GreedyNfa::State> sink;
  const ProductAutomaton prod(s);

  for (std::size_t next = 0; next < states.size(); ++next) {
    const auto from = static_cast<GreedyNfa::State>(next);
    const GreedyState cur = states[next];
    for (const auto& t : prod.transitions_from(cur.control)) {
      const auto& a = t.action;
      const auto i = a.buffer.index();
      if (a.is_send()) {
        GreedyState after = {t.target, cur.guess, cur.nonempty};
        after.nonempty[i] = true;
        const CommLetter unmatched{a.buffer, CommKind::unmatched_send, a.message};
        out.add_transition(from, unmatched, intern(after));
        if (with_guess && cur.guess < 0 && !cur.nonempty[i] && s.owner(receive_action(a.buffer, a.message))) {
          after.guess = static_cast<std::int64_t>(i) * mcount + static_cast<std::int64_t>(a.message.index());
          out.add_transition(from, unmatched, intern(after));
        }
        if (!cur.nonempty[i]) {
          for (const auto& target : prod.successors(t.target, receive_action(a.buffer, a.message)))
            out.add_transition(from, CommLetter{a.buffer, CommKind::matched, a.message}, intern({target, cur.guess, cur.nonempty}));
        }
      } else if (with_guess && cur.guess == static_cast<std::int64_t>(i) * mcount + static_cast<std::int64_t>(a.message.index())) {
        if (!sink) {
          sink = out.add_state(false, true);
          states.push_back(GreedyState{{}, -2, {}});  // placeholder keeps indices aligned
        }
        out.add_transition(from, CommLetter{a.buffer, CommKind::receive, a.message}, *sink);
      }
    }
  }
  return out;
}

}  // namespace detail

/// A_gr: accepts e·i?m for greedy e such that e·i?m is an execution.
inline GreedyNfa build_greedy_automaton(const System& s) { return detail::build_greedy(s, true); }

/// Prefix-closed automaton of the communication words of greedy executions.
inline GreedyNfa build_greedy_prefix_automaton(const System& s) { return detail::build_greedy(s, false); }

enum class Adjacency { process, full };

inline std::string_view to_string(Adjacency a) { return a == Adjacency::process ? "process" : "full"; }

inline std::optional<Adjacency> parse_adjacency(std::string_view s) {
  if (s == "process") return Adjacency::process;
  if (s == "full") return Adjacency::full;
  return std::nullopt;
}

/// Whether an action of `c` can precede an action of `d` in the conflict order.
/// process: the letters share a process. full: some pair of their actions does not commute.
inline bool adjacent(const System& s, Adjacency mode, const CommLetter& c, const CommLetter& d) {
  const auto ac = c.actions();
  const auto ad = d.actions();
  for (const auto& x : ac) {
    for (const auto& y : ad) {
      auto px = s.owner(x), py = s.owner(y);
      if (!px || !py) continue;
      if (*px == *py) return true;
      if (mode == Adjacency::full && !commutes(x, *px, y, *py)) return true;
    }
  }
  return false;
}

/// A_bv over `alphabet`: words of Σ*·Σ_? whose conflict graph has a cycle
/// through the communication of the final receive.
inline GreedyNfa build_violation_automaton(const System& s, const std::set<CommLetter>& alphabet,
                                           Adjacency mode = Adjacency::full) {
  GreedyNfa out(alphabet);
  std::vector<CommLetter> sigma, receives;
  for (const auto& l : alphabet) (l.kind == CommKind::receive ? receives : sigma).push_back(l);

  const auto l0 = out.add_state(true, false);
  const auto l1 = out.add_state(false, true);
  for (const auto& c : sigma) out.add_transition(l0, c, l0);

  // Path states (target receive, last letter on the path, extended?) are indexed densely.
  const std::size_t ns = sigma.size();
  std::vector<std::optional<GreedyNfa::State>> path_state(receives.size() * ns * 2);
  auto state_of = [&](std::size_t r, std::size_t c, bool ext) {
    auto& slot = path_state[(r * ns + c) * 2 + (ext ? 1 : 0)];
    if (!slot) slot = out.add_state();
    return *slot;
  };
  std::vector<std::vector<bool>> adj(ns, std::vector<bool>(ns));
  for (std::size_t c = 0; c < ns; ++c)
    for (std::size_t d = 0; d < ns; ++d) adj[c][d] = adjacent(s, mode, sigma[c], sigma[d]);

  for (std::size_t r = 0; r < receives.size(); ++r) {
    const CommLetter guess{receives[r].buffer, CommKind::unmatched_send, receives[r].message};
    auto it = std::find(sigma.begin(), sigma.end(), guess);
    if (it == sigma.end()) continue;
    const auto start = static_cast<std::size_t>(it - sigma.begin());
    out.add_transition(l0, guess, state_of(r, start, false));
    // Build the reachable path states for this target receive.
    std::vector<std::pair<std::size_t, bool>> work{{start, false}};
    std::set<std::pair<std::size_t, bool>> seen{{start, false}};
    while (!work.empty()) {
      auto [c, ext] = work.back();
      work.pop_back();
      const auto from = state_of(r, c, ext);
      for (const auto& letter : sigma) out.add_transition(from, letter, from);
      for (std::size_t d = 0; d < ns; ++d) {
        if (!adj[c][d]) continue;
        out.add_transition(from, sigma[d], state_of(r, d, true));
        if (seen.insert({d, true}).second) work.emplace_back(d, true);
      }
      if (ext && adjacent(s, mode, sigma[c], receives[r])) out.add_transition(from, receives[r], l1);
    }
  }
  return out;
}

struct GreedyVerdict {
  bool greedy = true;
  CommWord witness_word;
  Execution witness_actions;
  std::vector<Communication> conflict_cycle;
};

struct GreedyOptions {
  Adjacency adjacency = Adjacency::full;
  bool parallel = false;
};

inline GreedyVerdict check_greedy(const System& s, GreedyOptions options = {}) {
  GreedyNfa gr, bv;
  if (options.parallel) {
    auto gr_future = std::async(std::launch::async, [&] { return build_greedy_automaton(s); });
    bv = build_violation_automaton(s, full_alphabet(s), options.adjacency);
    gr = gr_future.get();
  } else {
    gr = build_greedy_automaton(s);
    bv = build_violation_automaton(s, full_alphabet(s), options.adjacency);
  }
  auto word = find_accepting_word(intersect(gr, bv));
  GreedyVerdict v;
  if (!word) return v;
  v.greedy = false;
  v.witness_word = std::move(*word);
  v.witness_actions = expand(v.witness_word);
  const auto g = conflict_graph(s, v.witness_actions);
  if (auto cycle = g.find_cycle())
    for (auto c : *cycle) v.conflict_cycle.push_back(g.vertices[c]);
  return v;
}

/// e = e1·i?m with e1 greedy, e an execution, and a cyclic conflict graph.
inline bool is_borderline_violation(const System& s, std::span<const Action> e) {
  if (e.empty() || !e.back().is_receive()) return false;
  if (!is_greedy_execution(e.first(e.size() - 1))) return false;
  if (!is_execution(s, e)) return false;
  return !conflict_graph(s, e).is_acyclic();
}

}  // namespace fifo
