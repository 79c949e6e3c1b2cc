#include <gtest/gtest.h>

#include "iqa/canonical.hpp"
#include "iqa/errors.hpp"
#include "iqa/query_builder.hpp"
#include "test_support.hpp"

namespace iqa {
namespace {

using iqa::testing::fixture_kg;
using iqa::testing::fixture_lexicon;

const char* kRunning = "List software that is written in C++ and runs on Mac OS.";

NuggetInterpretation ni(std::size_t nugget, std::string target, ElementKind kind,
                        double confidence = 1.0) {
  NuggetInterpretation x;
  x.nugget = nugget;
  x.target = std::move(target);
  x.kind = kind;
  x.confidence = confidence;
  return x;
}

std::vector<NuggetInterpretation> running_assignment() {
  return {ni(0, "dbo:Software", ElementKind::Entity),
          ni(1, "dbo:programmingLanguage", ElementKind::Property),
          ni(2, "dbr:C++", ElementKind::Entity),
          ni(3, "dbo:operatingSystem", ElementKind::Property),
          ni(4, "dbr:Mac_OS", ElementKind::Entity)};
}

UserQuestion running_question() {
  return {kRunning, shallow_parse(kRunning, fixture_lexicon())};
}

TEST(ExpectedAnswerType, OpeningWords) {
  EXPECT_EQ(expected_answer_type("How many games run on Linux?"), AnswerType::Count);
  EXPECT_EQ(expected_answer_type("Count the games."), AnswerType::Count);
  EXPECT_EQ(expected_answer_type("Is C++ influenced by C?"), AnswerType::Ask);
  EXPECT_EQ(expected_answer_type("Does Emacs run on Linux?"), AnswerType::Ask);
  EXPECT_EQ(expected_answer_type("Which software runs on Linux?"), AnswerType::Select);
  EXPECT_EQ(expected_answer_type(""), AnswerType::Select);
}

TEST(EnumerateQueryGraphs, RunningExampleContainsGold) {
  CandidateAssignment a{running_assignment()};
  auto graphs = enumerate_query_graphs(a, fixture_kg(), 10000);
  const auto gold = canonicalize(AnswerType::Select, iqa::testing::running_example().gold);
  bool found = false;
  for (const auto& g : graphs) {
    for (auto at : g.answer_types) found |= canonicalize(at, g.graph) == gold;
  }
  EXPECT_TRUE(found);
  ASSERT_FALSE(graphs.empty());
  EXPECT_EQ(graphs.front().used.size(), 5u);
}

TEST(EnumerateQueryGraphs, StructuralInvariants) {
  CandidateAssignment a{running_assignment()};
  auto graphs = enumerate_query_graphs(a, fixture_kg(), 10000);
  std::set<std::string> seen;
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    const auto& g = graphs[i];
    ASSERT_TRUE(g.graph.valid());
    if (i > 0) { EXPECT_GE(graphs[i - 1].used.size(), g.used.size()); }
    // Every pattern is individually satisfiable in the KG.
    for (const auto& p : g.graph.patterns()) {
      EXPECT_FALSE(select_bindings(fixture_kg(), QueryGraph({p})).rows.empty())
          << to_formal_text(AnswerType::Select, g.graph);
    }
    std::set<std::size_t> nuggets;
    for (auto u : g.used) EXPECT_TRUE(nuggets.insert(a.interpretations[u].nugget).second);
    bool ground = g.graph.variables().empty();
    for (auto at : g.answer_types) EXPECT_EQ(at == AnswerType::Ask, ground);
    EXPECT_TRUE(seen.insert(canonicalize(AnswerType::Select, g.graph)).second);
  }
}

TEST(EnumerateQueryGraphs, LimitTruncates) {
  CandidateAssignment a{running_assignment()};
  EXPECT_EQ(enumerate_query_graphs(a, fixture_kg(), 3).size(), 3u);
}

TEST(EnumerateQueryGraphs, GroundFactsBecomeAskCandidates) {
  CandidateAssignment a{{ni(0, "dbr:C++", ElementKind::Entity),
                         ni(1, "dbo:influencedBy", ElementKind::Property),
                         ni(2, "dbr:C", ElementKind::Entity)}};
  auto graphs = enumerate_query_graphs(a, fixture_kg(), 1000);
  auto want = canonicalize(AnswerType::Ask, QueryGraph({{"dbr:C++", "dbo:influencedBy", "dbr:C"}}));
  bool found = false;
  for (const auto& g : graphs) {
    for (auto at : g.answer_types) found |= canonicalize(at, g.graph) == want;
  }
  EXPECT_TRUE(found);
}

TEST(EnumerateQueryGraphs, RequiresAnEntity) {
  CandidateAssignment a{{ni(0, "dbo:developer", ElementKind::Property)}};
  EXPECT_THROW(enumerate_query_graphs(a, fixture_kg(), 10), ContractViolation);
}

TEST(EnumerateCandidateGraphs, NeverUsesTwoInterpretationsOfOneNugget) {
  auto pool = running_assignment();
  pool.push_back(ni(4, "dbr:Mac_OS_X", ElementKind::Entity, 0.5));
  pool.push_back(ni(2, "dbr:C", ElementKind::Entity, 0.1));
  auto graphs = enumerate_candidate_graphs(pool, fixture_kg(), 20000);
  ASSERT_FALSE(graphs.empty());
  for (const auto& g : graphs) {
    std::set<std::size_t> nuggets;
    for (auto u : g.used) EXPECT_TRUE(nuggets.insert(pool[u].nugget).second);
  }
}

// Hand evaluation on the running question: five nuggets all covered; the
// class pattern has no relation nugget; "written" is the nearest relation
// span to "C++" and "runs" to "Mac OS"; SELECT is expected for "List".
TEST(StructuralScore, RunningExampleByHand) {
  auto q = running_question();
  auto qi = running_assignment();
  const auto& gold = iqa::testing::running_example().gold;
  EXPECT_NEAR(structural_score(gold, AnswerType::Select, q, qi), 1.0 + 1.0 + 1.0, 1e-12);
  EXPECT_NEAR(structural_score(gold, AnswerType::Count, q, qi), 2.0, 1e-12);

  QueryGraph swapped({{"?uri", "rdf:type", "dbo:Software"},
                      {"?uri", "dbo:programmingLanguage", "dbr:Mac_OS"},
                      {"?uri", "dbo:operatingSystem", "dbr:C++"}});
  EXPECT_NEAR(structural_score(swapped, AnswerType::Select, q, qi), 1.0 + 1.0 / 3.0 + 1.0, 1e-12);
}

TEST(CqiProbability, ProductOfConfidencesAndStructure) {
  std::vector<double> conf{0.5, 0.8};
  EXPECT_DOUBLE_EQ(cqi_probability(conf, 0.25), 0.1);
  EXPECT_DOUBLE_EQ(cqi_probability({}, 0.25), 0.25);
}

TEST(AssembleQis, DeduplicatesFloorsAndRenormalizes) {
  auto make = [](QueryGraph g, double p, std::string target) {
    Cqi c;
    c.query_graph = std::move(g);
    c.probability = p;
    c.qi.push_back(ni(0, std::move(target), ElementKind::Entity));
    return c;
  };
  QueryGraph a({{"?uri", "ex:p", "ex:a"}});
  QueryGraph a_renamed({{"?x", "ex:p", "ex:a"}});
  QueryGraph b({{"?uri", "ex:p", "ex:b"}});
  auto qis = assemble_qis({make(a, 0.2, "ex:a"), make(a_renamed, 0.6, "ex:a2"), make(b, 0.0, "ex:b")});
  ASSERT_EQ(qis.size(), 2u);
  EXPECT_NEAR(qis.total_probability(), 1.0, 1e-15);
  const auto& top = qis.cqis()[0];
  EXPECT_EQ(top.qi[0].target, "ex:a2");
  EXPECT_EQ(top.id, cqi_id_for(top.canonical));
  EXPECT_NEAR(qis.cqis()[1].probability, kProbabilityFloor / (0.6 + kProbabilityFloor), 1e-18);
}

}  // namespace
}  // namespace iqa
