#include <gtest/gtest.h>

#include <random>

#include "iqa/errors.hpp"
#include "iqa/information.hpp"
#include "iqa/pipeline.hpp"
#include "iqa/session.hpp"
#include "test_support.hpp"

namespace iqa {
namespace {

using iqa::testing::fixture_kg;
using iqa::testing::fixture_lexicon;

InterpretationSpace space(std::vector<double> probs) {
  std::vector<Cqi> cqis;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    Cqi c;
    c.id = std::string(1, static_cast<char>('A' + i));
    c.probability = probs[i];
    cqis.push_back(c);
  }
  return InterpretationSpace(std::move(cqis));
}

InteractionOption option(std::string id, std::set<std::string> subsumed, double usability = 1.0) {
  InteractionOption io;
  io.id = std::move(id);
  io.subsumed = std::move(subsumed);
  io.usability = usability;
  io.complexity = 1.0 / usability - 1.0;
  return io;
}

SessionState state_of(InterpretationSpace qis, std::vector<InteractionOption> options,
                      int omega = 1, int budget = 10) {
  SessionState s;
  s.qis = std::move(qis);
  s.options = std::move(options);
  s.omega = omega;
  s.max_interactions = budget;
  return s;
}

TEST(Decision, WireNamesRoundTrip) {
  for (auto d : {Decision::AcceptIO, Decision::RejectIO, Decision::AcceptCQI, Decision::Unknown}) {
    EXPECT_EQ(parse_decision(to_string(d)), d);
  }
  EXPECT_EQ(to_string(Decision::AcceptCQI), "accept_query");
  EXPECT_FALSE(parse_decision("yes").has_value());
}

TEST(SelectBestOption, HigherGainWins) {
  // Uniform 4: a half split (IG 1) beats a quarter split (IG ~0.811).
  auto s = state_of(space({1, 1, 1, 1}), {option("a", {"A"}), option("b", {"A", "B"})});
  EXPECT_EQ(select_best_option(s)->id, "b");
}

TEST(SelectBestOption, TiesGoToUsabilityThenId) {
  auto s = state_of(space({1, 1, 1, 1}), {option("a", {"A", "B"}, 0.5),
                                          option("b", {"C", "D"}, 1.0), option("c", {"A", "C"})},
                    0);
  EXPECT_EQ(select_best_option(s)->id, "b");
  auto ranked = rank_options(s);
  EXPECT_EQ(ranked[0].option->id, "b");
  EXPECT_EQ(ranked[1].option->id, "c");
  EXPECT_EQ(ranked[2].option->id, "a");
}

TEST(SelectBestOption, AbsentWithoutInformativeOptions) {
  auto s = state_of(space({1, 1}), {option("all", {"A", "B"})});
  EXPECT_FALSE(select_best_option(s).has_value());
  s.status = SessionStatus::AcceptedCQI;
  s.options.push_back(option("half", {"A"}));
  EXPECT_FALSE(select_best_option(s).has_value());
}

TEST(TopCqi, ProbabilityThenId) {
  EXPECT_EQ(top_cqi(state_of(space({0.2, 0.5, 0.3}), {}))->id, "B");
  EXPECT_EQ(top_cqi(state_of(space({1, 1, 1}), {}))->id, "A");
  EXPECT_EQ(top_cqi(state_of(space({}), {})), nullptr);
}

TEST(ApplyFeedback, RejectKeepsComplementRenormalized) {
  auto s = state_of(space({1, 1, 1, 1}), {option("ab", {"A", "B"}), option("ac", {"A", "C"})});
  auto next = apply_feedback(s, "ab", Decision::RejectIO);
  ASSERT_EQ(next.qis.size(), 2u);
  EXPECT_EQ(next.qis.cqis()[0].id, "C");
  EXPECT_DOUBLE_EQ(next.qis.cqis()[0].probability, 0.5);
  EXPECT_DOUBLE_EQ(next.qis.cqis()[1].probability, 0.5);
  ASSERT_EQ(next.options.size(), 1u);
  EXPECT_EQ(next.options[0].subsumed, (std::set<std::string>{"C"}));
  EXPECT_EQ(next.interactions_used, 1);
  EXPECT_EQ(next.history.back().option_id, "ab");
  EXPECT_EQ(next.history.back().decision, Decision::RejectIO);
}

TEST(ApplyFeedback, AcceptingEverythingOnlyShrinksThePool) {
  auto s = state_of(space({3, 1}), {option("all", {"A", "B"}), option("a", {"A"})});
  auto next = apply_feedback(s, "all", Decision::AcceptIO);
  EXPECT_EQ(next.qis.size(), 2u);
  EXPECT_DOUBLE_EQ(next.qis.cqis()[0].probability, 0.75);
  EXPECT_EQ(next.options.size(), 1u);
}

TEST(ApplyFeedback, UnknownLeavesSpaceUnchanged) {
  auto s = state_of(space({1, 1, 1}), {option("a", {"A"}), option("b", {"B"})});
  auto next = apply_feedback(s, "a", Decision::Unknown);
  EXPECT_EQ(next.qis.size(), 3u);
  EXPECT_EQ(next.options.size(), 1u);
  EXPECT_EQ(next.history.size(), 1u);
  EXPECT_EQ(next.interactions_used, 1);
}

TEST(ApplyFeedback, AcceptQueryTargetsTopCqi) {
  auto s = state_of(space({0.2, 0.5, 0.3}), {option("C4:B", {"B"})});
  auto next = apply_feedback(s, "ignored", Decision::AcceptCQI);
  EXPECT_EQ(next.status, SessionStatus::AcceptedCQI);
  EXPECT_EQ(next.accepted_id, "B");
  EXPECT_EQ(next.history.back().option_id, "C4:B");
  auto t = is_terminated(next);
  EXPECT_TRUE(t.terminated);
  EXPECT_EQ(t.reason, SessionStatus::AcceptedCQI);
  EXPECT_THROW(apply_feedback(next, "C4:B", Decision::RejectIO), InvalidStateError);
}

TEST(ApplyFeedback, UnknownOptionIsNotFound) {
  auto s = state_of(space({1, 1}), {option("a", {"A"})});
  EXPECT_THROW(apply_feedback(s, "zzz", Decision::AcceptIO), NotFoundError);
}

TEST(ApplyFeedback, EmptySpaceExhausts) {
  auto s = state_of(space({1, 1}), {option("none", {"A", "B"})});
  auto next = apply_feedback(s, "none", Decision::RejectIO);
  EXPECT_EQ(next.status, SessionStatus::ExhaustedSpace);
}

TEST(ApplyFeedback, BudgetExceededAfterMaxInteractions) {
  std::vector<InteractionOption> opts;
  for (int i = 0; i < 5; ++i) opts.push_back(option("o" + std::to_string(i), {"A"}));
  auto s = state_of(space({1, 1}), opts, 1, 3);
  for (int i = 0; i < 3; ++i) {
    EXPECT_FALSE(is_terminated(s).terminated);
    s = apply_feedback(s, "o" + std::to_string(i), Decision::Unknown);
  }
  EXPECT_EQ(is_terminated(s).reason, SessionStatus::BudgetExceeded);
}

TEST(TerminateByUser, OnlyAffectsRunningSessions) {
  auto s = state_of(space({1}), {});
  terminate_by_user(s);
  EXPECT_EQ(s.status, SessionStatus::UserTerminated);
  s.status = SessionStatus::AcceptedCQI;
  terminate_by_user(s);
  EXPECT_EQ(s.status, SessionStatus::AcceptedCQI);
}

TEST(StartSession, EmptySpaceStartsExhaustedAndBadConfigIsRejected) {
  auto s = start_session({}, InterpretationSpace{}, fixture_kg(), SessionConfig{});
  EXPECT_EQ(s.status, SessionStatus::ExhaustedSpace);
  EXPECT_THROW(start_session({}, space({1}), fixture_kg(), SessionConfig{-1, 10, 2}),
               ValidationError);
}

// With omega = 0 the presentation order equals sorting by IG alone with the
// same tie rule.
TEST(RankOptions, OmegaZeroEqualsInformationGainOrder) {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 200; ++i) {
    auto qis = iqa::testing::random_space(rng, 1 + i % 20);
    auto s = state_of(qis, iqa::testing::random_options(rng, qis, 1 + i % 30), 0);
    auto ranked = rank_options(s);
    std::vector<const InteractionOption*> by_ig;
    for (const auto& io : s.options) by_ig.push_back(&io);
    std::sort(by_ig.begin(), by_ig.end(), [&](auto* a, auto* b) {
      double ga = iqa::testing::oracle_information_gain(qis, a->subsumed);
      double gb = iqa::testing::oracle_information_gain(qis, b->subsumed);
      if (std::abs(ga - gb) > 1e-12) return ga > gb;
      if (a->usability != b->usability) return a->usability > b->usability;
      return a->id < b->id;
    });
    for (std::size_t k = 0; k < ranked.size(); ++k) {
      ASSERT_EQ(ranked[k].option->id, by_ig[k]->id) << "instance " << i << " position " << k;
      EXPECT_EQ(ranked[k].option_gain, ranked[k].information_gain);
    }
  }
}

// Truthful answers on fixture spaces: gold survives, probabilities re-sum
// to one and every informative answer strictly shrinks the space.
TEST(SessionLoop, TruthfulAnswersKeepGold) {
  for (const auto& q : iqa::testing::fixture_dataset()) {
    auto out = run_pipeline(q.question, fixture_kg(), fixture_lexicon(), PipelineConfig{});
    const Cqi* gold = nullptr;
    for (const auto& c : out.qis.cqis()) {
      if (c.canonical == q.canonical) gold = &c;
    }
    if (!gold) continue;
    const std::string gold_id = gold->id;
    auto s = start_session(out.question, out.qis, fixture_kg(), SessionConfig{1, 50, 2});
    while (auto io = select_best_option(s)) {
      std::size_t before = s.qis.size();
      bool yes = io->subsumed.count(gold_id) > 0;
      s = apply_feedback(s, io->id, yes ? Decision::AcceptIO : Decision::RejectIO);
      ASSERT_TRUE(s.qis.contains(gold_id)) << q.id << " pruned by " << io->id;
      EXPECT_LT(s.qis.size(), before);
      EXPECT_NEAR(s.qis.total_probability(), 1.0, 1e-12);
      if (s.status != SessionStatus::Running) break;
    }
    EXPECT_EQ(s.qis.size(), 1u) << q.id;
  }
}

}  // namespace
}  // namespace iqa
