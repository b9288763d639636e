#include <gtest/gtest.h>

#include "common.hpp"
#include "fifo/oracle.hpp"
#include "fifo/safety.hpp"

using namespace fifo;
using namespace fifo::testing;

namespace {

void expect_replayable(const System& s, const Property& p, const SafetyVerdict& v) {
  ASSERT_FALSE(v.safe);
  ASSERT_TRUE(v.reached.has_value());
  EXPECT_TRUE(is_execution(s, v.witness_actions));
  EXPECT_TRUE(is_greedy_execution(v.witness_actions));
  EXPECT_EQ(run(s, v.witness_actions), *v.reached);
  EXPECT_TRUE(p.accepts(s, *v.reached));
}

/// Symbolic and brute-force verdicts must agree whenever the oracle sees a violation;
/// a symbolic violation must always be genuine.
void expect_agrees_with_oracle(const System& s, const Property& p, const ExplorationBudget& budget) {
  auto reach = oracle_reachable(s, budget);
  std::optional<Configuration> bad;
  for (const auto& c : reach.configurations) {
    if (p.accepts(s, c)) {
      bad = c;
      break;
    }
  }
  auto v = check_safety(s, p);
  if (bad) {
    EXPECT_FALSE(v.safe) << p.name << " oracle reaches " << to_string(s, *bad);
  }
  if (!v.safe) expect_replayable(s, p, v);
}

TEST(Safety, EncodeInitialCsd) {
  auto s = sample("csd");
  EXPECT_EQ(to_string(s, encode_configuration(s, s.initial_configuration())), "CTRL(0,0,0) # # #");
}

TEST(Safety, EncodeAfterOneSend) {
  auto s = sample("csd");
  auto cfg = run(s, trace(s, "c:s!req"));
  auto w = encode_configuration(s, cfg);
  EXPECT_EQ(to_string(s, w), "CTRL(1,0,0) # req # #");
  EXPECT_EQ(decode_configuration(s, w), cfg);
  w.pop_back();
  EXPECT_FALSE(decode_configuration(s, w).has_value());
}

TEST(Safety, ReachControlFindsReachableTuple) {
  auto s = sample("csd");
  auto p = build_property_reach_control(s, {1, 1, 0});
  auto v = check_safety(s, p);
  expect_replayable(s, p, v);
  EXPECT_EQ(v.reached->control, (ControlTuple{1, 1, 0}));
  EXPECT_EQ(to_string(s, v.witness_word), "s!?req");
}

TEST(Safety, ReachControlAtInitialNeedsNoActions) {
  auto s = sample("csd");
  auto v = check_safety(s, build_property_reach_control(s, {0, 0, 0}));
  ASSERT_FALSE(v.safe);
  EXPECT_TRUE(v.witness_actions.empty());
}

TEST(Safety, ReachControlRejectsUnknownState) {
  auto s = sample("csd");
  EXPECT_THROW(build_property_reach_control(s, {9, 0, 0}), UnknownControlState);
  EXPECT_THROW(build_property_reach_control(s, {0, 0}), UnknownControlState);
}

TEST(Safety, ReachControlAgreesWithOracleOnEveryTuple) {
  auto s = sample("csd");
  auto reach = oracle_reachable(s, {12, 4, 1'000'000});
  std::set<ControlTuple> seen;
  for (const auto& c : reach.configurations) seen.insert(c.control);
  for (const auto& control : product(s).all_controls()) {
    auto p = build_property_reach_control(s, control);
    auto v = check_safety(s, p, {Adjacency::full, true});
    EXPECT_EQ(!v.safe, seen.contains(control)) << control_to_string(s, control);
    if (!v.safe) expect_replayable(s, p, v);
  }
}

TEST(Safety, ReachConfigOfInitialConfiguration) {
  auto s = sample("csd");
  auto p = build_property_reach_config(s, s.initial_configuration());
  auto v = check_safety(s, p);
  ASSERT_FALSE(v.safe);
  EXPECT_TRUE(v.witness_actions.empty());
}

TEST(Safety, ReachConfigWithBufferedMessages) {
  auto s = sample("csd");
  auto target = run(s, trace(s, "c:s!req s:s?req s:c!res c:c?res c:s!ack_s s:s?ack_s c:d!log_c s:d!log_s"));
  auto p = build_property_reach_config(s, target);
  auto v = check_safety(s, p);
  expect_replayable(s, p, v);
  EXPECT_EQ(*v.reached, target);
}

TEST(Safety, ReachConfigUnreachable) {
  auto s = sample("csd");
  auto target = s.initial_configuration();
  target.buffers[s.find_buffer("c")->index()].push_back(*s.find_message("req"));
  EXPECT_TRUE(check_safety(s, build_property_reach_config(s, target)).safe);
}

TEST(Safety, CsdHasNoUnspecifiedReceptionNorDeadlock) {
  auto s = sample("csd");
  EXPECT_TRUE(check_safety(s, build_property_unspecified_reception(s)).safe);
  EXPECT_TRUE(check_safety(s, build_property_progress(s)).safe);
}

TEST(Safety, StuckSystemViolatesBoth) {
  auto s = sample("stuck");
  for (const auto& p : {build_property_unspecified_reception(s), build_property_progress(s)}) {
    auto v = check_safety(s, p);
    expect_replayable(s, p, v);
    EXPECT_EQ(format_trace(s, v.witness_actions), "p:q!a");
  }
}

TEST(Safety, UnspecifiedReceptionRequiresMailbox) {
  auto s = sample("abc");
  EXPECT_THROW(build_property_unspecified_reception(s), TopologyError);
}

TEST(Safety, ReceivingStates) {
  auto s = sample("csd");
  auto d = *s.find_process("d");
  EXPECT_TRUE(is_receiving_state(s, d, 0));
  EXPECT_FALSE(is_receiving_state(s, d, 1));
  EXPECT_EQ(ready_set(s, d, 0).size(), 2u);
}

TEST(Safety, NonGreedySystemIsRejected) {
  auto s = sample("xchg");
  try {
    check_safety(s, build_property_progress(s));
    FAIL() << "expected NotGreedySystem";
  } catch (const NotGreedySystem& e) {
    EXPECT_FALSE(e.verdict().greedy);
    EXPECT_FALSE(e.verdict().witness_actions.empty());
  }
}

TEST(Safety, AgreesWithOracleOnFixtures) {
  const ExplorationBudget budget{12, 4, 2'000'000};
  for (auto name : {"csd", "csb", "ping", "pingpong", "stuck", "msc"}) {
    SCOPED_TRACE(name);
    auto s = sample(name);
    expect_agrees_with_oracle(s, build_property_progress(s), budget);
    if (is_mailbox(s)) expect_agrees_with_oracle(s, build_property_unspecified_reception(s), budget);
  }
}

TEST(Safety, SystemWithoutBuffers) {
  auto s = SystemBuilder("solo").process("p").initial("0").build();
  auto v = check_safety(s, build_property_reach_control(s, {0}));
  EXPECT_FALSE(v.safe);
  EXPECT_TRUE(v.witness_actions.empty());
}

TEST(Boundedness, OneShotPingIsBoundedByOne) {
  auto s = sample("ping");
  auto v = check_boundedness(s);
  ASSERT_TRUE(v.bounded);
  EXPECT_EQ(v.k, 1u);
  EXPECT_EQ(v.k, oracle_max_occupancy(s, {8, 8, 100000}).max());
}

TEST(Boundedness, BoundedFixturesMatchOracle) {
  for (auto name : {"ping", "pingpong", "msc", "csb"}) {
    SCOPED_TRACE(name);
    auto s = sample(name);
    auto v = check_boundedness(s);
    ASSERT_TRUE(v.bounded);
    auto o = oracle_max_occupancy(s, {14, v.k + 1, 2'000'000});
    EXPECT_EQ(v.per_buffer, o.per_buffer);
  }
}

void expect_pumpable(const System& s, const BoundednessVerdict& v) {
  ASSERT_FALSE(v.bounded);
  ASSERT_TRUE(v.growing_buffer.has_value());
  std::size_t previous = 0;
  for (std::size_t n = 1; n <= 5; ++n) {
    CommWord w = v.stem;
    for (std::size_t k = 0; k < n; ++k) w.insert(w.end(), v.cycle.begin(), v.cycle.end());
    auto e = expand(w);
    ASSERT_TRUE(is_execution(s, e)) << n;
    auto size = run(s, e).buffers[v.growing_buffer->index()].size();
    EXPECT_GT(size, previous) << n;
    previous = size;
  }
}

TEST(Boundedness, AbcIsUnbounded) {
  auto s = sample("abc");
  expect_pumpable(s, check_boundedness(s));
}

TEST(Boundedness, CsdIsUnbounded) {
  auto s = sample("csd");
  auto v = check_boundedness(s);
  expect_pumpable(s, v);
  EXPECT_EQ(s.buffer_name(*v.growing_buffer), "d");
}

TEST(Boundedness, ProducerConsumerIsUnbounded) {
  auto s = sample("prodcons");
  expect_pumpable(s, check_boundedness(s));
}

TEST(Boundedness, NonGreedySystemIsRejected) { EXPECT_THROW(check_boundedness(sample("xchg")), NotGreedySystem); }

}  // namespace
