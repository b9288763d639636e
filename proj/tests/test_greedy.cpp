#include <gtest/gtest.h>

#include "common.hpp"
#include "fifo/greedy.hpp"
#include "fifo/oracle.hpp"

using namespace fifo;
using namespace fifo::testing;

namespace {

bool accepts(const GreedyNfa& a, const CommWord& w) { return a.accepts(std::span<const CommLetter>(w)); }

TEST(Greedy, LetterParsingRoundTrips) {
  auto s = sample("xchg");
  auto w = parse_comm_word(s, "q!m2 p!?m1 q?m2");
  ASSERT_EQ(w.size(), 3u);
  EXPECT_EQ(w[0].kind, CommKind::unmatched_send);
  EXPECT_EQ(w[1].kind, CommKind::matched);
  EXPECT_EQ(w[2].kind, CommKind::receive);
  EXPECT_EQ(to_string(s, w), "q!m2 p!?m1 q?m2");
  EXPECT_EQ(expand(w).size(), 4u);
  EXPECT_FALSE(parse_comm_letter(s, "z!m1").has_value());
}

TEST(Greedy, CommWordOfGreedyExecution) {
  auto s = sample("xchg");
  auto e = trace(s, "p:q!m2 q:p!m1 p:p?m1 q:q?m2");
  EXPECT_EQ(to_string(s, comm_word(e, true)), "q!m2 p!?m1 q?m2");
  EXPECT_THROW(comm_word(e), std::invalid_argument);
}

TEST(Greedy, Alphabets) {
  auto s = sample("xchg");
  EXPECT_EQ(send_alphabet(s).size(), 4u);
  EXPECT_EQ(full_alphabet(s).size(), 6u);
  // In abc nothing is received, so no matched letters exist.
  EXPECT_EQ(send_alphabet(sample("abc")).size(), 3u);
}

TEST(Greedy, GreedyAutomatonAcceptsCrossSendBorderline) {
  auto s = sample("xchg");
  auto gr = build_greedy_automaton(s);
  EXPECT_TRUE(accepts(gr, parse_comm_word(s, "q!m2 p!?m1 q?m2")));
  // The trailing receive must be pending in its buffer.
  EXPECT_FALSE(accepts(gr, parse_comm_word(s, "p!?m1 q?m2")));
}

TEST(Greedy, GreedyAutomatonAcceptsCsdExecution) {
  auto s = sample("csd");
  auto gr = build_greedy_automaton(s);
  EXPECT_TRUE(accepts(gr, parse_comm_word(s, "s!?req c!?res s!?ack_s d!log_c d?log_c")));
}

TEST(Greedy, PrefixAutomatonAcceptsReferenceGreedyReschedule) {
  auto s = sample("csd");
  auto prefix = build_greedy_prefix_automaton(s);
  auto w = parse_comm_word(s, "s!?req c!?res s!?ack_s d!?log_c c!?ack_d s!req d!?log_s");
  EXPECT_TRUE(accepts(prefix, w));
  EXPECT_TRUE(is_execution(s, expand(w)));
  EXPECT_FALSE(accepts(prefix, parse_comm_word(s, "c!?res")));
}

TEST(Greedy, PrefixAutomatonMatchesOracleOnGreedyExecutions) {
  auto s = sample("xchg");
  auto prefix = build_greedy_prefix_automaton(s);
  EXPECT_TRUE(accepts(prefix, parse_comm_word(s, "q!m2 p!m1")));
  // p sends m2 only once.
  EXPECT_FALSE(accepts(prefix, parse_comm_word(s, "q!m2 p!?m1 q!?m2")));
  auto listing = oracle_executions(s, {4, 4, 100000});
  for (const auto& e : listing.executions) {
    if (!is_greedy_execution(e)) continue;
    EXPECT_TRUE(accepts(prefix, comm_word(e))) << format_executions(s, {e});
  }
}

TEST(Greedy, ViolationAutomatonAcceptsCrossSend) {
  auto s = sample("xchg");
  for (auto mode : {Adjacency::process, Adjacency::full}) {
    auto bv = build_violation_automaton(s, full_alphabet(s), mode);
    EXPECT_TRUE(accepts(bv, parse_comm_word(s, "q!m2 p!?m1 q?m2"))) << to_string(mode);
    EXPECT_FALSE(accepts(bv, parse_comm_word(s, "q!m2 p!m1"))) << to_string(mode);
  }
}

TEST(Greedy, IntersectionNonEmptyForCrossSend) {
  auto s = sample("xchg");
  auto p = intersect(build_greedy_automaton(s), build_violation_automaton(s, full_alphabet(s), Adjacency::full));
  EXPECT_FALSE(is_empty(p));
}

TEST(Greedy, CsdIsGreedy) {
  auto s = sample("csd");
  auto v = check_greedy(s);
  EXPECT_TRUE(v.greedy);
  EXPECT_TRUE(v.witness_word.empty());
}

TEST(Greedy, CrossSendIsNotGreedy) {
  auto s = sample("xchg");
  for (auto mode : {Adjacency::process, Adjacency::full}) {
    auto v = check_greedy(s, {mode, false});
    ASSERT_FALSE(v.greedy);
    EXPECT_LE(v.witness_word.size(), 3u);
    EXPECT_EQ(to_string(s, v.witness_word), "q!m2 p!?m1 q?m2");
    EXPECT_TRUE(is_execution(s, v.witness_actions));
    EXPECT_TRUE(is_borderline_violation(s, v.witness_actions));
    EXPECT_EQ(v.conflict_cycle.size(), 2u);
  }
}

TEST(Greedy, ClientSellerBankIsGreedy) { EXPECT_TRUE(check_greedy(sample("csb")).greedy); }

TEST(Greedy, OtherSamples) {
  for (auto name : {"abc", "ping", "msc", "pingpong", "prodcons"}) EXPECT_TRUE(check_greedy(sample(name)).greedy) << name;
}

TEST(Greedy, ParallelModeAgrees) {
  for (auto name : {"csd", "xchg", "csb"}) {
    auto s = sample(name);
    auto a = check_greedy(s, {Adjacency::full, false});
    auto b = check_greedy(s, {Adjacency::full, true});
    EXPECT_EQ(a.greedy, b.greedy) << name;
    EXPECT_EQ(a.witness_word, b.witness_word) << name;
  }
}

TEST(Greedy, EmptySystemIsGreedy) {
  auto s = SystemBuilder("empty").process("p").initial("0").build();
  EXPECT_TRUE(check_greedy(s).greedy);
}

TEST(Greedy, BorderlineViolationNeedsGreedyPrefix) {
  auto s = sample("xchg");
  EXPECT_TRUE(is_borderline_violation(s, trace(s, "p:q!m2 q:p!m1 p:p?m1 q:q?m2")));
  EXPECT_FALSE(is_borderline_violation(s, trace(s, "p:q!m2 q:q?m2")));
  EXPECT_FALSE(is_borderline_violation(s, trace(s, "p:q!m2")));
}

TEST(Greedy, MailboxSendsIntoSharedBufferAreAdjacentOnlyInFullMode) {
  auto s = sample("csd");
  auto log_c = *parse_comm_letter(s, "d!log_c");
  auto log_s = *parse_comm_letter(s, "d!log_s");
  EXPECT_TRUE(adjacent(s, Adjacency::full, log_c, log_s));
  EXPECT_FALSE(adjacent(s, Adjacency::process, log_c, log_s));
  EXPECT_EQ(parse_adjacency("process"), Adjacency::process);
  EXPECT_FALSE(parse_adjacency("other").has_value());
}

}  // namespace
