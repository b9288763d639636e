#include <gtest/gtest.h>

#include "common.hpp"
#include "fifo/model.hpp"

using namespace fifo;
using fifo::testing::sample;
using fifo::testing::trace;

namespace {

TEST(Model, CsdFixtureIsValid) {
  auto s = sample("csd");
  EXPECT_TRUE(validate_system(s).empty());
  EXPECT_EQ(s.process_count(), 3u);
  std::size_t transitions = 0;
  for (const auto& p : s.processes()) transitions += p.automaton.transitions.size();
  // The drawn system has 5 + 4 + 3 transitions.
  EXPECT_EQ(transitions, 12u);
  EXPECT_EQ(s.buffer_names(), (std::vector<std::string>{"s", "c", "d"}));
}

TEST(Model, AllSamplesAreValid) {
  for (auto name : {"csd", "xchg", "csb", "abc", "ping", "msc", "pingpong", "prodcons"}) {
    SCOPED_TRACE(name);
    EXPECT_TRUE(validate_system(sample(name)).empty());
  }
}

TEST(Model, OverlappingActionSetsAreRejected) {
  auto s = SystemBuilder()
               .process("p").initial("0").send("0", "b", "m", "1")
               .process("q").initial("0").send("0", "b", "m", "1")
               .build();
  auto d = validate_system(s);
  ASSERT_FALSE(d.empty());
  EXPECT_EQ(d[0].code, "action-sets-not-disjoint");
  EXPECT_NE(d[0].message.find("'p'"), std::string::npos);
  EXPECT_NE(d[0].message.find("'q'"), std::string::npos);
}

TEST(Model, NondeterministicTransitionsAreRejected) {
  auto s = SystemBuilder().process("p").initial("0").send("0", "b", "m", "1").send("0", "b", "m", "2").build();
  auto d = validate_system(s);
  ASSERT_EQ(d.size(), 1u);
  EXPECT_EQ(d[0].code, "nondeterministic");
}

TEST(Model, TopologyClassification) {
  EXPECT_EQ(classify_topology(sample("csd")), Topology::mailbox);
  EXPECT_EQ(classify_topology(sample("csb")), Topology::mailbox);
  EXPECT_EQ(classify_topology(sample("xchg")), Topology::binary);
  EXPECT_EQ(classify_topology(sample("abc")), Topology::general);
  EXPECT_TRUE(conforms_to(sample("xchg"), Topology::mailbox));
  EXPECT_FALSE(conforms_to(sample("csd"), Topology::binary));

  auto p2p = SystemBuilder()
                 .process("p").initial("0").send("0", "p.q", "m", "1").send("1", "p.r", "m", "2")
                 .process("q").initial("0").receive("0", "p.q", "m", "1")
                 .process("r").initial("0").receive("0", "p.r", "m", "1")
                 .build();
  EXPECT_EQ(classify_topology(p2p), Topology::p2p);
  EXPECT_FALSE(is_mailbox(p2p));
}

TEST(Model, ProductAutomatonOfCsd) {
  auto s = sample("csd");
  auto prod = product(s);
  EXPECT_EQ(prod.initial(), (ControlTuple{0, 0, 0}));
  auto req = send_action(*s.find_buffer("s"), *s.find_message("req"));
  auto succ = prod.successors({0, 0, 0}, req);
  ASSERT_EQ(succ.size(), 1u);
  EXPECT_EQ(succ[0], (ControlTuple{1, 0, 0}));
  // Every local state of csd has an outgoing transition.
  EXPECT_FALSE(prod.is_final({0, 0, 0}));
  auto x = sample("xchg");
  EXPECT_TRUE(product(x).is_final({2, 2}));
  EXPECT_FALSE(product(x).is_final({2, 1}));
  EXPECT_EQ(prod.all_controls().size(), 4u * 4u * 2u);
}

TEST(Model, StepSendAndReceive) {
  auto s = sample("csd");
  auto cfg = step(s, s.initial_configuration(), send_action(*s.find_buffer("s"), *s.find_message("req")));
  EXPECT_EQ(to_string(s, cfg), "(1,0,0) s=[req] c=[] d=[]");
  cfg = run(s, trace(s, "c:s!req s:s?req s:c!res c:c?res"));
  EXPECT_EQ(to_string(s, cfg), "(2,2,0) s=[] c=[] d=[]");
}

TEST(Model, RunReportsFailingIndex) {
  auto s = sample("csd");
  auto bad = Execution{receive_action(*s.find_buffer("s"), *s.find_message("req"))};
  try {
    run(s, bad);
    FAIL() << "expected RunError";
  } catch (const RunError& e) {
    EXPECT_EQ(e.index(), 0u);
    EXPECT_EQ(e.failure(), StepFailure::empty_buffer);
  }
  EXPECT_EQ(run(s, Execution{}), s.initial_configuration());
}

TEST(Model, HeadMismatchIsDetected) {
  auto s = sample("csd");
  auto cfg = run(s, trace(s, "c:s!req s:s?req s:c!res c:c?res c:s!ack_s s:s?ack_s c:d!log_c s:d!log_s"));
  EXPECT_EQ(to_string(s, cfg), "(3,0,0) s=[] c=[] d=[log_c,log_s]");
  auto r = try_step(s, cfg, receive_action(*s.find_buffer("d"), *s.find_message("log_s")));
  ASSERT_TRUE(std::holds_alternative<StepFailure>(r));
  EXPECT_EQ(std::get<StepFailure>(r), StepFailure::head_mismatch);
  r = try_step(s, cfg, send_action(*s.find_buffer("s"), *s.find_message("req")));
  ASSERT_TRUE(std::holds_alternative<StepFailure>(r));
  EXPECT_EQ(std::get<StepFailure>(r), StepFailure::no_such_transition);
}

TEST(Model, FifoOrderIsEnforced) {
  auto s = sample("prodcons");
  auto item = *s.find_message("item");
  auto buf = *s.find_buffer("cons");
  auto cfg = run(s, Execution{send_action(buf, item), send_action(buf, item)});
  EXPECT_EQ(cfg.buffers[buf.index()].size(), 2u);
  cfg = step(s, cfg, receive_action(buf, item));
  EXPECT_EQ(cfg.buffers[buf.index()].size(), 1u);
}

TEST(Model, EnabledFromInitialCsd) {
  auto s = sample("csd");
  auto succ = enabled(s, s.initial_configuration());
  ASSERT_EQ(succ.size(), 2u);
  EXPECT_EQ(to_token(s, succ[0].action), "c:s!req");
  EXPECT_EQ(succ[0].configuration.control, (ControlTuple{1, 0, 0}));
  EXPECT_EQ(to_token(s, succ[1].action), "c:d!log_c");
  EXPECT_EQ(succ[1].configuration.control, (ControlTuple{3, 0, 0}));
}

TEST(Model, EnabledFromInitialXchg) {
  auto s = sample("xchg");
  auto succ = enabled(s, s.initial_configuration());
  ASSERT_EQ(succ.size(), 2u);
  EXPECT_TRUE(succ[0].action.is_send());
  EXPECT_TRUE(succ[1].action.is_send());
}

TEST(Model, DeadlockHasNoSuccessors) {
  auto s = sample("xchg");
  auto cfg = run(s, trace(s, "p:q!m2 q:p!m1 p:p?m1 q:q?m2"));
  EXPECT_TRUE(enabled(s, cfg).empty());
}

TEST(Model, StepIsDeterministic) {
  auto s = sample("csb");
  auto cfg = s.initial_configuration();
  for (const auto& succ : enabled(s, cfg)) EXPECT_EQ(step(s, cfg, succ.action), succ.configuration);
}

}  // namespace
