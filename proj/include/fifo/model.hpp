#pragma once

// FIFO automata, systems of FIFO automata and their step semantics.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "fifo/detail/hash.hpp"

namespace fifo {

/// Index into a per-system name table. The tag keeps buffers and messages apart.
template <class Tag>
struct Id {
  std::uint32_t value = 0;

  constexpr Id() = default;
  constexpr explicit Id(std::uint32_t v) : value(v) {}
  constexpr explicit Id(std::size_t v) : value(static_cast<std::uint32_t>(v)) {}
  constexpr explicit Id(int v) : value(static_cast<std::uint32_t>(v)) {}

  constexpr std::size_t index() const noexcept { return value; }
  friend constexpr auto operator<=>(Id, Id) = default;
};

struct BufferTag;
struct MessageTag;
using BufferId = Id<BufferTag>;
using MessageId = Id<MessageTag>;

using StateIndex = std::uint32_t;
using ProcessIndex = std::size_t;

enum class Direction : std::uint8_t { send, receive };

struct Action {
  BufferId buffer;
  Direction direction = Direction::send;
  MessageId message;

  bool is_send() const noexcept { return direction == Direction::send; }
  bool is_receive() const noexcept { return direction == Direction::receive; }
  friend auto operator<=>(const Action&, const Action&) = default;
};

inline Action send_action(BufferId b, MessageId m) { return {b, Direction::send, m}; }
inline Action receive_action(BufferId b, MessageId m) { return {b, Direction::receive, m}; }

using Execution = std::vector<Action>;

struct Transition {
  StateIndex source = 0;
  Action action;
  StateIndex target = 0;
  friend auto operator<=>(const Transition&, const Transition&) = default;
};

struct FifoAutomaton {
  std::vector<std::string> states;
  std::vector<Transition> transitions;
  StateIndex initial = 0;
  std::set<Action> actions;

  /// |L| + |delta|, the size used for complexity accounting.
  std::size_t size() const noexcept { return states.size() + transitions.size(); }

  std::set<BufferId> buffers(Direction d) const {
    std::set<BufferId> out;
    for (const auto& a : actions)
      if (a.direction == d) out.insert(a.buffer);
    return out;
  }
  std::set<BufferId> buffers() const {
    std::set<BufferId> out;
    for (const auto& a : actions) out.insert(a.buffer);
    return out;
  }
  std::set<MessageId> messages() const {
    std::set<MessageId> out;
    for (const auto& a : actions) out.insert(a.message);
    return out;
  }
  std::optional<StateIndex> find_state(std::string_view name) const {
    for (std::size_t i = 0; i < states.size(); ++i)
      if (states[i] == name) return static_cast<StateIndex>(i);
    return std::nullopt;
  }

  friend bool operator==(const FifoAutomaton&, const FifoAutomaton&) = default;
};

struct Process {
  std::string name;
  FifoAutomaton automaton;
  friend bool operator==(const Process&, const Process&) = default;
};

enum class Topology { binary, mailbox, p2p, general };

inline std::string_view to_string(Topology t) {
  switch (t) {
    case Topology::binary: return "binary";
    case Topology::mailbox: return "mailbox";
    case Topology::p2p: return "p2p";
    case Topology::general: return "general";
  }
  return "general";
}

inline std::optional<Topology> parse_topology(std::string_view s) {
  if (s == "binary") return Topology::binary;
  if (s == "mailbox") return Topology::mailbox;
  if (s == "p2p") return Topology::p2p;
  if (s == "general") return Topology::general;
  return std::nullopt;
}

/// Global control state: one local state per process, in process order.
using ControlTuple = std::vector<StateIndex>;

struct ControlHash {
  std::size_t operator()(const ControlTuple& c) const noexcept { return detail::hash_range(c); }
};

struct Configuration {
  ControlTuple control;
  /// One queue per buffer identifier, indexed by BufferId; front() is dequeued next.
  std::vector<std::vector<MessageId>> buffers;

  friend auto operator<=>(const Configuration&, const Configuration&) = default;
};

struct ConfigurationHash {
  std::size_t operator()(const Configuration& c) const noexcept {
    std::size_t seed = detail::hash_range(c.control);
    for (const auto& b : c.buffers) {
      detail::hash_combine(seed, b.size());
      for (auto m : b) detail::hash_combine(seed, m.value);
    }
    return seed;
  }
};

/// A family of FIFO automata sharing buffer and message name tables.
///
/// The buffer table doubles as the buffer order used when encoding
/// configurations. Derived lookup tables (action owner, outgoing transitions)
/// are built on construction; the system is immutable afterwards.
class System {
 public:
  System() = default;
  System(std::string name, std::vector<Process> processes, std::vector<std::string> buffers,
         std::vector<std::string> messages, std::optional<Topology> declared = std::nullopt)
      : name_(std::move(name)),
        processes_(std::move(processes)),
        buffers_(std::move(buffers)),
        messages_(std::move(messages)),
        declared_(declared) {
    index();
  }

  const std::string& name() const noexcept { return name_; }
  std::optional<Topology> declared_topology() const noexcept { return declared_; }

  const std::vector<Process>& processes() const noexcept { return processes_; }
  const Process& process(ProcessIndex p) const { return processes_.at(p); }
  std::size_t process_count() const noexcept { return processes_.size(); }

  std::size_t buffer_count() const noexcept { return buffers_.size(); }
  std::size_t message_count() const noexcept { return messages_.size(); }
  const std::vector<std::string>& buffer_names() const noexcept { return buffers_; }
  const std::vector<std::string>& message_names() const noexcept { return messages_; }
  const std::string& buffer_name(BufferId b) const { return buffers_.at(b.index()); }
  const std::string& message_name(MessageId m) const { return messages_.at(m.index()); }

  std::optional<BufferId> find_buffer(std::string_view n) const {
    if (auto i = find_in(buffers_, n)) return BufferId(*i);
    return std::nullopt;
  }
  std::optional<MessageId> find_message(std::string_view n) const {
    if (auto i = find_in(messages_, n)) return MessageId(*i);
    return std::nullopt;
  }
  std::optional<ProcessIndex> find_process(std::string_view n) const {
    for (std::size_t p = 0; p < processes_.size(); ++p)
      if (processes_[p].name == n) return p;
    return std::nullopt;
  }

  /// proc(a): the process whose action set contains `a`.
  std::optional<ProcessIndex> owner(const Action& a) const {
    if (a.buffer.index() >= buffers_.size() || a.message.index() >= messages_.size()) return std::nullopt;
    int p = owner_[slot(a)];
    if (p < 0) return std::nullopt;
    return static_cast<ProcessIndex>(p);
  }

  /// Indices into process(p).automaton.transitions leaving `state`.
  std::span<const std::size_t> outgoing(ProcessIndex p, StateIndex state) const {
    const auto& per_state = outgoing_.at(p);
    if (state >= per_state.size()) return {};
    return per_state[state];
  }

  ControlTuple initial_control() const {
    ControlTuple c;
    c.reserve(processes_.size());
    for (const auto& p : processes_) c.push_back(p.automaton.initial);
    return c;
  }

  Configuration initial_configuration() const {
    return Configuration{initial_control(), std::vector<std::vector<MessageId>>(buffers_.size())};
  }

  /// Target of the unique transition of `p` labelled `a` from `state`, if any.
  std::optional<StateIndex> local_successor(ProcessIndex p, StateIndex state, const Action& a) const {
    for (auto t : outgoing(p, state)) {
      const auto& tr = processes_[p].automaton.transitions[t];
      if (tr.action == a) return tr.target;
    }
    return std::nullopt;
  }

  /// |S|, the sum of the automata sizes.
  std::size_t size() const noexcept {
    std::size_t n = 0;
    for (const auto& p : processes_) n += p.automaton.size();
    return n;
  }

  friend bool operator==(const System& a, const System& b) {
    return a.name_ == b.name_ && a.processes_ == b.processes_ && a.buffers_ == b.buffers_ &&
           a.messages_ == b.messages_ && a.declared_ == b.declared_;
  }

 private:
  static std::optional<std::size_t> find_in(const std::vector<std::string>& v, std::string_view n) {
    auto it = std::find(v.begin(), v.end(), n);
    if (it == v.end()) return std::nullopt;
    return static_cast<std::size_t>(it - v.begin());
  }

  std::size_t slot(const Action& a) const noexcept {
    return (a.buffer.index() * 2 + (a.is_send() ? 0 : 1)) * messages_.size() + a.message.index();
  }

  void index() {
    owner_.assign(buffers_.size() * 2 * messages_.size(), -1);
    outgoing_.assign(processes_.size(), {});
    for (std::size_t p = 0; p < processes_.size(); ++p) {
      const auto& aut = processes_[p].automaton;
      for (const auto& a : aut.actions) {
        if (a.buffer.index() >= buffers_.size() || a.message.index() >= messages_.size()) continue;
        if (owner_[slot(a)] < 0) owner_[slot(a)] = static_cast<int>(p);
      }
      auto& per_state = outgoing_[p];
      per_state.assign(aut.states.size(), {});
      for (std::size_t t = 0; t < aut.transitions.size(); ++t) {
        const auto& tr = aut.transitions[t];
        if (tr.source < per_state.size()) per_state[tr.source].push_back(t);
      }
    }
  }

  std::string name_;
  std::vector<Process> processes_;
  std::vector<std::string> buffers_;
  std::vector<std::string> messages_;
  std::optional<Topology> declared_;
  std::vector<int> owner_;
  std::vector<std::vector<std::vector<std::size_t>>> outgoing_;
};

/// Incremental construction of a System from names.
///
/// Buffers and messages are interned in order of first appearance, which
/// fixes the buffer order. States are interned per process, the initial state
/// first unless states were declared explicitly.
class SystemBuilder {
 public:
  explicit SystemBuilder(std::string name = "system") : name_(std::move(name)) {}

  SystemBuilder& topology(Topology t) {
    declared_ = t;
    return *this;
  }

  SystemBuilder& process(std::string name) {
    processes_.push_back(Process{std::move(name), {}});
    has_initial_.push_back(false);
    return *this;
  }

  SystemBuilder& state(const std::string& s) {
    intern_state(s);
    return *this;
  }

  SystemBuilder& initial(const std::string& s) {
    current().automaton.initial = intern_state(s);
    has_initial_.back() = true;
    return *this;
  }

  SystemBuilder& send(const std::string& from, const std::string& buffer, const std::string& message,
                      const std::string& to) {
    return transition(from, buffer, Direction::send, message, to);
  }

  SystemBuilder& receive(const std::string& from, const std::string& buffer, const std::string& message,
                         const std::string& to) {
    return transition(from, buffer, Direction::receive, message, to);
  }

  SystemBuilder& transition(const std::string& from, const std::string& buffer, Direction d,
                            const std::string& message, const std::string& to) {
    auto src = intern_state(from);
    auto dst = intern_state(to);
    Action a{BufferId(intern(buffers_, buffer)), d, MessageId(intern(messages_, message))};
    current().automaton.transitions.push_back(Transition{src, a, dst});
    current().automaton.actions.insert(a);
    return *this;
  }

  System build() const { return System(name_, processes_, buffers_, messages_, declared_); }

 private:
  Process& current() {
    if (processes_.empty()) throw std::logic_error("SystemBuilder: no process started");
    return processes_.back();
  }

  StateIndex intern_state(const std::string& s) {
    auto& states = current().automaton.states;
    return static_cast<StateIndex>(intern(states, s));
  }

  static std::size_t intern(std::vector<std::string>& table, const std::string& s) {
    auto it = std::find(table.begin(), table.end(), s);
    if (it != table.end()) return static_cast<std::size_t>(it - table.begin());
    table.push_back(s);
    return table.size() - 1;
  }

  std::string name_;
  std::optional<Topology> declared_;
  std::vector<Process> processes_;
  std::vector<bool> has_initial_;
  std::vector<std::string> buffers_;
  std::vector<std::string> messages_;
};

// ---------------------------------------------------------------------------
// Rendering helpers

inline std::string to_string(const System& s, const Action& a) {
  return s.buffer_name(a.buffer) + (a.is_send() ? "!" : "?") + s.message_name(a.message);
}

/// `proc:buffer!msg`, the trace token form.
inline std::string to_token(const System& s, const Action& a) {
  auto p = s.owner(a);
  std::string prefix = p ? s.process(*p).name + ":" : std::string{};
  return prefix + to_string(s, a);
}

inline std::string control_to_string(const System& s, const ControlTuple& c) {
  std::string out = "(";
  for (std::size_t p = 0; p < c.size(); ++p) {
    if (p) out += ",";
    const auto& states = s.process(p).automaton.states;
    out += c[p] < states.size() ? states[c[p]] : std::to_string(c[p]);
  }
  return out + ")";
}

inline std::string to_string(const System& s, const Configuration& cfg) {
  std::string out = control_to_string(s, cfg.control);
  for (std::size_t b = 0; b < cfg.buffers.size(); ++b) {
    out += " " + s.buffer_names()[b] + "=[";
    for (std::size_t k = 0; k < cfg.buffers[b].size(); ++k) {
      if (k) out += ",";
      out += s.message_name(cfg.buffers[b][k]);
    }
    out += "]";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Validation and topology

struct Diagnostic {
  std::string code;
  std::string message;
};

/// Checks the structural invariants of a system. An empty result means valid.
inline std::vector<Diagnostic> validate_system(const System& s) {
  std::vector<Diagnostic> out;
  auto report = [&](std::string code, std::string msg) { out.push_back({std::move(code), std::move(msg)}); };

  std::set<BufferId> used;
  for (std::size_t p = 0; p < s.process_count(); ++p) {
    const auto& proc = s.process(p);
    const auto& aut = proc.automaton;
    const std::string where = "process '" + proc.name + "'";
    if (aut.initial >= aut.states.size())
      report("initial-state", where + ": initial state is not one of its states");
    for (std::size_t t = 0; t < aut.transitions.size(); ++t) {
      const auto& tr = aut.transitions[t];
      if (tr.source >= aut.states.size() || tr.target >= aut.states.size())
        report("transition-endpoint", where + ": transition " + std::to_string(t) + " has an endpoint outside its states");
      if (!aut.actions.contains(tr.action))
        report("undeclared-action", where + ": transition " + std::to_string(t) + " uses an action outside its action set");
    }
    std::set<std::pair<StateIndex, Action>> seen;
    for (const auto& tr : aut.transitions) {
      if (!seen.insert({tr.source, tr.action}).second) {
        report("nondeterministic", where + ": two transitions share source and action");
        break;
      }
    }
    for (const auto& a : aut.actions) {
      if (a.buffer.index() >= s.buffer_count() || a.message.index() >= s.message_count()) {
        report("unknown-name", where + ": action refers to an unknown buffer or message");
        continue;
      }
      used.insert(a.buffer);
    }
  }

  for (std::size_t p = 0; p < s.process_count(); ++p) {
    for (std::size_t q = p + 1; q < s.process_count(); ++q) {
      const auto& ap = s.process(p).automaton.actions;
      const auto& aq = s.process(q).automaton.actions;
      for (const auto& a : ap) {
        if (aq.contains(a)) {
          report("action-sets-not-disjoint", "action sets not disjoint: '" + s.process(p).name + "' and '" +
                                                 s.process(q).name + "' share " + to_string(s, a));
          break;
        }
      }
    }
  }

  std::set<std::string> names;
  for (std::size_t b = 0; b < s.buffer_count(); ++b) {
    const auto& n = s.buffer_names()[b];
    if (!names.insert(n).second) report("buffer-order", "buffer order lists '" + n + "' twice");
    if (!used.contains(BufferId(b))) report("buffer-order", "buffer order lists '" + n + "' which no action uses");
  }
  return out;
}

namespace detail {

inline std::optional<std::pair<std::string, std::string>> split_pair(const std::string& buffer) {
  auto dot = buffer.find('.');
  if (dot == std::string::npos || buffer.find('.', dot + 1) != std::string::npos) return std::nullopt;
  return std::pair{buffer.substr(0, dot), buffer.substr(dot + 1)};
}

}  // namespace detail

/// Buffers are named by processes; p only sends to others and only receives on p.
inline bool is_mailbox(const System& s) {
  for (const auto& proc : s.processes()) {
    for (const auto& a : proc.automaton.actions) {
      const auto& b = s.buffer_name(a.buffer);
      if (!s.find_process(b)) return false;
      if (a.is_send() && b == proc.name) return false;
      if (a.is_receive() && b != proc.name) return false;
    }
  }
  return true;
}

/// Buffers are named `p.q`; p only sends on p.q and only receives on q.p, q != p.
inline bool is_p2p(const System& s) {
  for (const auto& proc : s.processes()) {
    for (const auto& a : proc.automaton.actions) {
      auto pair = detail::split_pair(s.buffer_name(a.buffer));
      if (!pair || !s.find_process(pair->first) || !s.find_process(pair->second)) return false;
      if (pair->first == pair->second) return false;
      if (a.is_send() && pair->first != proc.name) return false;
      if (a.is_receive() && pair->second != proc.name) return false;
    }
  }
  return true;
}

inline bool is_binary(const System& s) { return s.process_count() == 2 && (is_mailbox(s) || is_p2p(s)); }

inline bool conforms_to(const System& s, Topology t) {
  switch (t) {
    case Topology::binary: return is_binary(s);
    case Topology::mailbox: return is_mailbox(s);
    case Topology::p2p: return is_p2p(s);
    case Topology::general: return true;
  }
  return true;
}

inline Topology classify_topology(const System& s) {
  if (is_binary(s)) return Topology::binary;
  if (is_mailbox(s)) return Topology::mailbox;
  if (is_p2p(s)) return Topology::p2p;
  return Topology::general;
}

/// The mailbox buffer of process p (the buffer named after p), if it exists.
inline std::optional<BufferId> mailbox_of(const System& s, ProcessIndex p) { return s.find_buffer(s.process(p).name); }

// ---------------------------------------------------------------------------
// Product automaton

struct ProductTransition {
  ProcessIndex process = 0;
  Action action;
  ControlTuple target;
};

/// The asynchronous product, explored on demand from global control tuples.
class ProductAutomaton {
 public:
  explicit ProductAutomaton(const System& s) : system_(&s) {}

  ControlTuple initial() const { return system_->initial_control(); }

  std::vector<ProductTransition> transitions_from(const ControlTuple& c) const {
    std::vector<ProductTransition> out;
    for (ProcessIndex p = 0; p < c.size(); ++p) {
      for (auto t : system_->outgoing(p, c[p])) {
        const auto& tr = system_->process(p).automaton.transitions[t];
        ControlTuple next = c;
        next[p] = tr.target;
        out.push_back({p, tr.action, std::move(next)});
      }
    }
    return out;
  }

  /// Successors of `c` under action `a` (several if the owner is nondeterministic).
  std::vector<ControlTuple> successors(const ControlTuple& c, const Action& a) const {
    std::vector<ControlTuple> out;
    auto p = system_->owner(a);
    if (!p) return out;
    for (auto t : system_->outgoing(*p, c[*p])) {
      const auto& tr = system_->process(*p).automaton.transitions[t];
      if (tr.action != a) continue;
      ControlTuple next = c;
      next[*p] = tr.target;
      out.push_back(std::move(next));
    }
    return out;
  }

  bool is_final(const ControlTuple& c) const {
    for (ProcessIndex p = 0; p < c.size(); ++p)
      if (!system_->outgoing(p, c[p]).empty()) return false;
    return true;
  }

  /// Every global control tuple, in lexicographic order.
  std::vector<ControlTuple> all_controls() const {
    std::vector<ControlTuple> out;
    ControlTuple c(system_->process_count(), 0);
    for (const auto& p : system_->processes())
      if (p.automaton.states.empty()) return out;
    while (true) {
      out.push_back(c);
      std::size_t p = c.size();
      while (p > 0) {
        --p;
        if (++c[p] < system_->process(p).automaton.states.size()) break;
        c[p] = 0;
        if (p == 0) return out;
      }
      if (c.empty()) return out;
    }
  }

  /// Explicit automaton over the full cartesian product of control states.
  FifoAutomaton materialize() const {
    FifoAutomaton out;
    auto controls = all_controls();
    std::map<ControlTuple, StateIndex> id;
    for (const auto& c : controls) {
      id.emplace(c, static_cast<StateIndex>(out.states.size()));
      out.states.push_back(control_to_string(*system_, c));
    }
    for (const auto& c : controls) {
      for (auto& t : transitions_from(c)) {
        out.transitions.push_back({id.at(c), t.action, id.at(t.target)});
        out.actions.insert(t.action);
      }
    }
    if (!controls.empty()) out.initial = id.at(initial());
    return out;
  }

 private:
  const System* system_;
};

inline ProductAutomaton product(const System& s) { return ProductAutomaton(s); }

// ---------------------------------------------------------------------------
// Step semantics

enum class StepFailure { unknown_action, no_such_transition, empty_buffer, head_mismatch };

inline std::string_view to_string(StepFailure f) {
  switch (f) {
    case StepFailure::unknown_action: return "unknown action";
    case StepFailure::no_such_transition: return "no such transition";
    case StepFailure::empty_buffer: return "empty buffer";
    case StepFailure::head_mismatch: return "head mismatch";
  }
  return "step failure";
}

class StepError : public std::runtime_error {
 public:
  StepError(StepFailure f, const std::string& what) : std::runtime_error(what), failure_(f) {}
  StepFailure failure() const noexcept { return failure_; }

 private:
  StepFailure failure_;
};

class RunError : public StepError {
 public:
  RunError(StepFailure f, std::size_t index, const std::string& what)
      : StepError(f, what), index_(index) {}
  /// Zero-based position of the offending action.
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

inline std::variant<Configuration, StepFailure> try_step(const System& s, const Configuration& cfg, const Action& a) {
  auto p = s.owner(a);
  if (!p) return StepFailure::unknown_action;
  auto next_state = s.local_successor(*p, cfg.control[*p], a);
  if (!next_state) return StepFailure::no_such_transition;
  const auto& queue = cfg.buffers[a.buffer.index()];
  if (a.is_receive()) {
    if (queue.empty()) return StepFailure::empty_buffer;
    if (queue.front() != a.message) return StepFailure::head_mismatch;
  }
  Configuration next = cfg;
  next.control[*p] = *next_state;
  auto& q = next.buffers[a.buffer.index()];
  if (a.is_send())
    q.push_back(a.message);
  else
    q.erase(q.begin());
  return next;
}

inline Configuration step(const System& s, const Configuration& cfg, const Action& a) {
  auto r = try_step(s, cfg, a);
  if (auto* f = std::get_if<StepFailure>(&r))
    throw StepError(*f, std::string(to_string(*f)) + " on " + to_string(s, a));
  return std::get<Configuration>(std::move(r));
}

inline Configuration run(const System& s, std::span<const Action> execution) {
  Configuration cfg = s.initial_configuration();
  for (std::size_t i = 0; i < execution.size(); ++i) {
    auto r = try_step(s, cfg, execution[i]);
    if (auto* f = std::get_if<StepFailure>(&r))
      throw RunError(*f, i, std::string(to_string(*f)) + " at action " + std::to_string(i) + " (" +
                                to_string(s, execution[i]) + ")");
    cfg = std::get<Configuration>(std::move(r));
  }
  return cfg;
}

/// True iff `execution` belongs to exec(S).
inline bool is_execution(const System& s, std::span<const Action> execution) {
  Configuration cfg = s.initial_configuration();
  for (const auto& a : execution) {
    auto r = try_step(s, cfg, a);
    if (std::holds_alternative<StepFailure>(r)) return false;
    cfg = std::get<Configuration>(std::move(r));
  }
  return true;
}

struct Successor {
  ProcessIndex process = 0;
  Action action;
  Configuration configuration;
};

/// Enabled actions in process order, then transition order.
inline std::vector<Successor> enabled(const System& s, const Configuration& cfg) {
  std::vector<Successor> out;
  for (ProcessIndex p = 0; p < s.process_count(); ++p) {
    for (auto t : s.outgoing(p, cfg.control[p])) {
      const auto& tr = s.process(p).automaton.transitions[t];
      const auto& queue = cfg.buffers[tr.action.buffer.index()];
      if (tr.action.is_receive() && (queue.empty() || queue.front() != tr.action.message)) continue;
      Configuration next = cfg;
      next.control[p] = tr.target;
      auto& q = next.buffers[tr.action.buffer.index()];
      if (tr.action.is_send())
        q.push_back(tr.action.message);
      else
        q.erase(q.begin());
      out.push_back({p, tr.action, std::move(next)});
    }
  }
  return out;
}

}  // namespace fifo

template <class Tag>
struct std::hash<fifo::Id<Tag>> {
  std::size_t operator()(fifo::Id<Tag> id) const noexcept { return std::hash<std::uint32_t>{}(id.value); }
};
