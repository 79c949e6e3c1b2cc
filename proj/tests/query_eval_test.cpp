#include <gtest/gtest.h>

#include <random>

#include "iqa/errors.hpp"
#include "iqa/knowledge_graph.hpp"
#include "test_support.hpp"

namespace iqa {
namespace {

using iqa::testing::brute_force_rows;
using iqa::testing::fixture_kg;

std::set<std::vector<std::string>> as_set(const SelectResult& r) {
  return {r.rows.begin(), r.rows.end()};
}

TEST(QueryEval, RunningExampleMatchesBruteForce) {
  const auto& kg = fixture_kg();
  const auto& gold = iqa::testing::running_example().gold;
  auto r = select_bindings(kg, gold);
  ASSERT_EQ(r.variables, std::vector<std::string>{"?uri"});
  EXPECT_EQ(as_set(r), brute_force_rows(kg, gold));
  EXPECT_FALSE(r.rows.empty());
  EXPECT_TRUE(as_set(r).count({"dbr:Photoshop"}));
}

TEST(QueryEval, GroundAskQueries) {
  const auto& kg = fixture_kg();
  QueryGraph yes({{"dbr:Photoshop", "dbo:developer", "dbr:Adobe_Inc."}});
  QueryGraph no({{"dbr:Photoshop", "dbo:developer", "dbr:Apple_Inc."}});
  EXPECT_TRUE(execute_query(kg, AnswerType::Ask, yes).ask);
  EXPECT_FALSE(execute_query(kg, AnswerType::Ask, no).ask);
  EXPECT_EQ(execute_query(kg, AnswerType::Count, yes).count, 1u);
  EXPECT_EQ(execute_query(kg, AnswerType::Count, no).count, 0u);
}

TEST(QueryEval, VariablePredicate) {
  const auto& kg = fixture_kg();
  QueryGraph qg({{"dbr:Photoshop", "?p", "dbr:Adobe_Inc."}});
  auto r = select_bindings(kg, qg);
  ASSERT_EQ(r.rows.size(), 1u);
  EXPECT_EQ(r.rows[0][0], "dbo:developer");
}

TEST(QueryEval, RepeatedVariableMustBindConsistently) {
  auto kg = load_kg("ex:a\tex:p\tex:a\nex:a\tex:p\tex:b\n");
  QueryGraph qg({{"?x", "ex:p", "?x"}});
  auto r = select_bindings(kg, qg);
  ASSERT_EQ(r.rows.size(), 1u);
  EXPECT_EQ(r.rows[0][0], "ex:a");
}

TEST(QueryEval, UnknownConstantYieldsNoRows) {
  QueryGraph qg({{"?x", "dbo:developer", "dbr:Nobody"}});
  EXPECT_TRUE(select_bindings(fixture_kg(), qg).rows.empty());
}

TEST(QueryEval, InvalidGraphIsAContractViolation) {
  EXPECT_THROW(execute_query(fixture_kg(), AnswerType::Select, QueryGraph{}), ContractViolation);
  QueryGraph literal_subject({{"\"x\"", "ex:p", "?o"}});
  EXPECT_THROW(execute_query(fixture_kg(), AnswerType::Select, literal_subject), ContractViolation);
}

// Property: random small KGs and queries agree with exhaustive assignment
// enumeration, and the three answer forms are coherent.
TEST(QueryEval, RandomInstancesAgreeWithBruteForce) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 100; ++i) {
    auto kg = iqa::testing::random_kg(rng, 30);
    auto qg = iqa::testing::random_query(rng, kg, 3);
    auto expected = brute_force_rows(kg, qg);
    auto sel = execute_query(kg, AnswerType::Select, qg);
    auto cnt = execute_query(kg, AnswerType::Count, qg);
    auto ask = execute_query(kg, AnswerType::Ask, qg);
    ASSERT_EQ(as_set(sel.select), expected) << "instance " << i;
    EXPECT_EQ(sel.select.rows.size(), as_set(sel.select).size());
    EXPECT_EQ(cnt.count, sel.select.rows.size());
    EXPECT_EQ(ask.ask, cnt.count > 0);
  }
}

}  // namespace
}  // namespace iqa
