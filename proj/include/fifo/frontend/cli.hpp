#pragma once

// Command-line front end. `run` is the whole program minus process plumbing,
// so tests can drive it with in-memory streams.
//
// Exit codes: 0 the property holds (or the system is greedy), 1 violation,
// 2 usage, input or parse error, 3 precondition failure.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "fifo/causality.hpp"
#include "fifo/frontend/dot.hpp"
#include "fifo/frontend/json_io.hpp"
#include "fifo/frontend/parse.hpp"
#include "fifo/frontend/trace.hpp"
#include "fifo/greedy.hpp"
#include "fifo/halfduplex.hpp"
#include "fifo/model.hpp"
#include "fifo/oracle.hpp"
#include "fifo/safety.hpp"

namespace fifo::cli {

enum ExitCode : int { holds = 0, violation = 1, usage_error = 2, precondition_failed = 3 };

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline System load_system(const std::string& path) {
  auto system = parse_system(read_file(path));
  auto diagnostics = validate_system(system);
  if (!diagnostics.empty()) {
    std::string msg = path + ": invalid system";
    for (const auto& d : diagnostics) msg += "\n  " + d.code + ": " + d.message;
    throw InputError(msg);
  }
  return system;
}

namespace detail {

struct Options {
  std::string file;
  std::string trace;
  bool json = false;
  bool parallel = false;
  std::string adjacency = "full";
  std::vector<std::string> property;
  std::size_t depth = 10;
  std::size_t buffer_bound = 4;
  std::size_t max_nodes = 2'000'000;
  bool orphans = false;
  std::string kind = "action";
  bool reduce = false;
  std::string report = "executions";
};

inline void print_witness(const System& s, std::ostream& out, const CommWord& word, const Execution& actions) {
  out << "witness word: " << to_string(s, word) << "\n";
  out << "witness actions: " << format_trace(s, actions) << "\n";
}

inline Adjacency adjacency_of(const Options& o) {
  auto a = parse_adjacency(o.adjacency);
  if (!a) throw InputError("--adjacency must be 'process' or 'full'");
  return *a;
}

inline int check_greedy_cmd(const Options& o, std::ostream& out) {
  auto s = load_system(o.file);
  auto v = check_greedy(s, {adjacency_of(o), o.parallel});
  if (o.json) {
    out << to_json(s, v).dump(2) << "\n";
  } else {
    out << (v.greedy ? "Greedy" : "NotGreedy") << "\n";
    if (!v.greedy) {
      print_witness(s, out, v.witness_word, v.witness_actions);
      const auto comms = matching_pairs(v.witness_actions);
      const auto labels = communication_labels(s, comms);
      out << "conflict cycle:";
      for (const auto& c : v.conflict_cycle) {
        for (std::size_t k = 0; k < comms.size(); ++k)
          if (comms[k].send == c.send) out << " " << labels[k];
      }
      out << "\n";
    }
  }
  return v.greedy ? holds : violation;
}

inline Property property_of(const System& s, const Options& o) {
  if (o.property.empty()) throw InputError("--property is required");
  const auto& kind = o.property[0];
  auto arg = [&]() -> const std::string& {
    if (o.property.size() < 2) throw InputError("--property " + kind + " needs an argument");
    return o.property[1];
  };
  auto no_arg = [&] {
    if (o.property.size() > 1) throw InputError("--property " + kind + " takes no argument");
  };
  if (kind == "reach-control") return build_property_reach_control(s, parse_control(s, arg()));
  if (kind == "reach-config") return build_property_reach_config(s, load_configuration(s, json::parse(read_file(arg()))));
  if (kind == "unspecified-reception") return no_arg(), build_property_unspecified_reception(s);
  if (kind == "progress") return no_arg(), build_property_progress(s);
  if (kind == "nfa") return load_property(s, json::parse(read_file(arg())), "nfa " + arg());
  throw InputError("unknown property '" + kind + "'");
}

inline int check_safety_cmd(const Options& o, std::ostream& out) {
  auto s = load_system(o.file);
  auto property = property_of(s, o);
  auto v = check_safety(s, property, {adjacency_of(o), false});
  if (o.json) {
    out << to_json(s, v, property.name).dump(2) << "\n";
  } else {
    out << (v.safe ? "Safe" : "Unsafe") << " (" << property.name << ")\n";
    if (!v.safe) {
      print_witness(s, out, v.witness_word, v.witness_actions);
      out << "reached: " << to_string(s, *v.reached) << "\n";
    }
  }
  return v.safe ? holds : violation;
}

inline int check_bounded_cmd(const Options& o, std::ostream& out) {
  auto s = load_system(o.file);
  auto v = check_boundedness(s, {adjacency_of(o), false});
  if (o.json) {
    out << to_json(s, v).dump(2) << "\n";
  } else if (v.bounded) {
    out << "Bounded k=" << v.k << "\n";
    for (std::size_t b = 0; b < v.per_buffer.size(); ++b)
      out << "  " << s.buffer_name(BufferId(b)) << ": " << v.per_buffer[b] << "\n";
  } else {
    out << "Unbounded\n";
    out << "stem: " << to_string(s, v.stem) << "\n";
    out << "cycle: " << to_string(s, v.cycle) << "\n";
    if (v.growing_buffer) out << "growing buffer: " << s.buffer_name(*v.growing_buffer) << "\n";
  }
  return v.bounded ? holds : violation;
}

inline int check_half_duplex_cmd(const Options& o, std::ostream& out) {
  auto s = load_system(o.file);
  HalfDuplexBounds bounds{o.depth, o.buffer_bound, o.max_nodes};
  if (o.orphans) {
    auto v = check_no_orphan_bounded(s, bounds);
    if (o.json) {
      json j = {{"status", v.orphan_found ? "Orphan" : "NoOrphanWithinBounds"}, {"qualified", v.qualified}};
      if (v.orphan_found) {
        j["prefix"] = to_json(s, std::span<const Action>(v.prefix));
        j["configuration"] = to_json(s, *v.configuration);
        j["buffer"] = s.buffer_name(*v.buffer);
      }
      out << j.dump(2) << "\n";
    } else if (v.orphan_found) {
      out << "Orphan in buffer " << s.buffer_name(*v.buffer) << " at " << to_string(s, *v.configuration) << "\n";
      out << "reached by: " << format_trace(s, v.prefix) << "\n";
    } else {
      out << "NoOrphanWithinBounds" << (v.qualified ? " (bounds were hit)" : "") << "\n";
    }
    return v.orphan_found ? violation : holds;
  }
  HalfDuplexVerdict v;
  if (is_binary(s))
    v = check_binary_half_duplex(s, bounds);
  else
    v = check_mailbox_half_duplex_bounded(s, bounds);
  if (o.json) {
    out << to_json(s, v).dump(2) << "\n";
  } else {
    out << to_string(v.status) << " (depth " << bounds.depth << ", buffer bound " << bounds.buffer_bound << ", explored "
        << v.explored << ")\n";
    if (v.witness) out << "witness: " << format_trace(s, *v.witness) << "\n";
  }
  return v.status == HalfDuplexStatus::not_half_duplex ? violation : holds;
}

inline int simulate_cmd(const Options& o, std::ostream& out) {
  auto s = load_system(o.file);
  auto e = parse_trace(s, read_file(o.trace));
  Configuration cfg = s.initial_configuration();
  json steps = json::array();
  if (!o.json) out << "0: " << to_string(s, cfg) << "\n";
  for (std::size_t k = 0; k < e.size(); ++k) {
    auto r = try_step(s, cfg, e[k]);
    if (auto* f = std::get_if<StepFailure>(&r)) {
      if (o.json)
        out << json{{"status", "StepFailed"}, {"index", k}, {"action", to_token(s, e[k])}, {"reason", std::string(to_string(*f))},
                    {"steps", steps}}.dump(2)
            << "\n";
      else
        out << "step " << k + 1 << " (" << to_token(s, e[k]) << ") fails: " << to_string(*f) << "\n";
      return violation;
    }
    cfg = std::get<Configuration>(std::move(r));
    if (o.json)
      steps.push_back({{"action", to_token(s, e[k])}, {"configuration", to_json(s, cfg)}});
    else
      out << k + 1 << ": " << to_token(s, e[k]) << " -> " << to_string(s, cfg) << "\n";
  }
  if (o.json) out << json{{"status", "Ok"}, {"steps", steps}}.dump(2) << "\n";
  return holds;
}

inline int graph_cmd(const Options& o, std::ostream& out) {
  auto s = load_system(o.file);
  auto e = parse_trace(s, read_file(o.trace));
  if (!is_execution(s, e)) throw InputError("the trace is not an execution of the system");
  if (o.kind == "action")
    out << emit_dot(s, action_graph(s, e), o.reduce);
  else if (o.kind == "conflict")
    out << emit_dot(s, conflict_graph(s, e), o.reduce);
  else
    throw InputError("--kind must be 'action' or 'conflict'");
  return holds;
}

inline void print_report(std::ostream& out, const OracleReport& r) {
  out << "# nodes " << r.nodes << (r.budget_exhausted ? ", budget exhausted" : "")
      << (r.buffer_pruned ? ", buffer bound hit" : "") << (r.depth_reached ? ", depth reached" : "") << "\n";
}

inline json report_json(const OracleReport& r) {
  return {{"nodes", r.nodes}, {"budget_exhausted", r.budget_exhausted}, {"buffer_pruned", r.buffer_pruned},
          {"depth_reached", r.depth_reached}};
}

inline int oracle_cmd(const Options& o, std::ostream& out) {
  auto s = load_system(o.file);
  ExplorationBudget budget{o.depth, o.buffer_bound, o.max_nodes};
  if (o.report == "executions") {
    auto listing = oracle_executions(s, budget);
    if (o.json) {
      json all = json::array();
      for (const auto& e : listing.executions) all.push_back(to_json(s, std::span<const Action>(e)));
      out << json{{"executions", all}, {"report", report_json(listing.report)}}.dump(2) << "\n";
    } else {
      out << format_executions(s, listing.executions);
      print_report(out, listing.report);
    }
    return holds;
  }
  if (o.report == "reachable") {
    auto r = oracle_reachable(s, budget);
    if (o.json) {
      json all = json::array();
      for (const auto& c : r.configurations) all.push_back(to_json(s, c));
      out << json{{"configurations", all}, {"report", report_json(r.report)}}.dump(2) << "\n";
    } else {
      for (const auto& c : r.configurations) out << to_string(s, c) << "\n";
      print_report(out, r.report);
    }
    return holds;
  }
  if (o.report == "occupancy") {
    auto r = oracle_max_occupancy(s, budget);
    if (o.json) {
      json per = json::object();
      for (std::size_t b = 0; b < r.per_buffer.size(); ++b) per[s.buffer_name(BufferId(b))] = r.per_buffer[b];
      out << json{{"per_buffer", per}, {"report", report_json(r.report)}}.dump(2) << "\n";
    } else {
      for (std::size_t b = 0; b < r.per_buffer.size(); ++b) out << s.buffer_name(BufferId(b)) << ": " << r.per_buffer[b] << "\n";
      print_report(out, r.report);
    }
    return holds;
  }
  if (o.report == "greedy") {
    auto r = oracle_is_greedy_system(s, budget);
    if (o.json) {
      json j = {{"status", r.greedy ? "Greedy" : "NotGreedy"}, {"report", report_json(r.report)}};
      j["counterexample"] = r.counterexample ? to_json(s, std::span<const Action>(*r.counterexample)) : json(nullptr);
      out << j.dump(2) << "\n";
    } else {
      out << (r.greedy ? "Greedy" : "NotGreedy") << (r.greedy && r.report.qualified() ? " (within budget)" : "") << "\n";
      if (r.counterexample) out << "counterexample: " << format_trace(s, *r.counterexample) << "\n";
      print_report(out, r.report);
    }
    return r.greedy ? holds : violation;
  }
  throw InputError("--report must be executions, reachable, occupancy or greedy");
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  detail::Options o;
  CLI::App app{"Verification of communicating FIFO automata", "fifocheck"};
  app.require_subcommand(1);

  auto* check = app.add_subcommand("check", "Decide a property of a system");
  check->require_subcommand(1);
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("FILE", o.file, "System description (.fifo)")->required();
    cmd->add_flag("--json", o.json, "Print the verdict as JSON");
  };
  auto add_adjacency = [&](CLI::App* cmd) {
    cmd->add_option("--adjacency", o.adjacency, "Letter adjacency in the violation automaton: process or full")
        ->check(CLI::IsMember({"process", "full"}));
  };
  auto* greedy = check->add_subcommand("greedy", "Is every execution equivalent to a greedy one?");
  add_common(greedy);
  add_adjacency(greedy);
  greedy->add_flag("--parallel", o.parallel, "Build the two automata concurrently");

  auto* safety = check->add_subcommand("safety", "Can a greedy system reach a bad configuration?");
  add_common(safety);
  add_adjacency(safety);
  safety
      ->add_option("--property", o.property,
                   "reach-control STATES | reach-config FILE | unspecified-reception | progress | nfa FILE")
      ->required()
      ->expected(1, 2);

  auto* bounded = check->add_subcommand("bounded", "Is there a bound on buffer occupancy?");
  add_common(bounded);
  add_adjacency(bounded);

  auto* half = check->add_subcommand("half-duplex", "Bounded half-duplex check (binary or mailbox)");
  add_common(half);
  half->add_option("--depth", o.depth, "Maximum execution length")->check(CLI::NonNegativeNumber);
  half->add_option("--buffer-bound", o.buffer_bound, "Maximum buffer occupancy explored")->check(CLI::NonNegativeNumber);
  half->add_option("--max-nodes", o.max_nodes, "Exploration cap");
  half->add_flag("--orphans", o.orphans, "Search for orphan messages instead");

  auto* simulate = app.add_subcommand("simulate", "Replay a trace");
  add_common(simulate);
  simulate->add_option("--trace", o.trace, "Trace file")->required();

  auto* graph = app.add_subcommand("graph", "Emit the action or conflict graph of a trace as DOT");
  graph->add_option("FILE", o.file, "System description (.fifo)")->required();
  graph->add_option("--trace", o.trace, "Trace file")->required();
  graph->add_option("--kind", o.kind, "action or conflict")->check(CLI::IsMember({"action", "conflict"}));
  graph->add_flag("--reduce", o.reduce, "Drop edges implied by transitivity");

  auto* oracle = app.add_subcommand("oracle", "Brute-force bounded exploration");
  add_common(oracle);
  oracle->add_option("--depth", o.depth, "Maximum execution length")->required();
  oracle->add_option("--buffer-bound", o.buffer_bound, "Maximum buffer occupancy")->required();
  oracle->add_option("--max-nodes", o.max_nodes, "Exploration cap");
  oracle->add_option("--report", o.report, "executions, reachable, occupancy or greedy")
      ->check(CLI::IsMember({"executions", "reachable", "occupancy", "greedy"}));

  std::vector<const char*> argv{"fifocheck"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? holds : usage_error;
  }

  try {
    if (greedy->parsed()) return detail::check_greedy_cmd(o, out);
    if (safety->parsed()) return detail::check_safety_cmd(o, out);
    if (bounded->parsed()) return detail::check_bounded_cmd(o, out);
    if (half->parsed()) return detail::check_half_duplex_cmd(o, out);
    if (simulate->parsed()) return detail::simulate_cmd(o, out);
    if (graph->parsed()) return detail::graph_cmd(o, out);
    if (oracle->parsed()) return detail::oracle_cmd(o, out);
  } catch (const NotGreedySystem& e) {
    err << "error: " << e.what() << "; the check requires a greedy system\n";
    err << "non-greedy witness: " << e.verdict().witness_actions.size() << " actions, see 'check greedy'\n";
    return precondition_failed;
  } catch (const TopologyError& e) {
    err << "error: " << e.what() << "\n";
    return precondition_failed;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return usage_error;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return usage_error;
  } catch (const FormatError& e) {
    err << "error: " << e.what() << "\n";
    return usage_error;
  } catch (const UnknownControlState& e) {
    err << "error: " << e.what() << "\n";
    return usage_error;
  } catch (const json::exception& e) {
    err << "error: " << e.what() << "\n";
    return usage_error;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return usage_error;
  }
  return usage_error;
}

inline int run(int argc, char** argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, out, err);
}

}  // namespace fifo::cli
