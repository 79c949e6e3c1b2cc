#include <gtest/gtest.h>

#include "iqa/errors.hpp"
#include "iqa/linkers.hpp"
#include "test_support.hpp"

namespace iqa {
namespace {

using iqa::testing::fixture_kg;
using iqa::testing::fixture_lexicon;

InformationNugget nugget(std::string surface, NuggetKind kind) {
  InformationNugget n;
  n.surface = std::move(surface);
  n.end = n.surface.size();
  n.kind = kind;
  return n;
}

TEST(TrigramSimilarity, DiceOverPaddedTrigrams) {
  EXPECT_DOUBLE_EQ(trigram_similarity("abc", "abc"), 1.0);
  EXPECT_DOUBLE_EQ(trigram_similarity("ABC", "abc"), 1.0);
  // {^^a, ^ab, ab$, b$$} vs {^^a, ^ac, ac$, c$$}: one shared of eight.
  EXPECT_DOUBLE_EQ(trigram_similarity("ab", "ac"), 0.25);
  EXPECT_DOUBLE_EQ(trigram_similarity("ab", "xy"), 0.0);
}

TEST(ShallowParse, RunningExample) {
  std::string q = "List software that is written in C++ and runs on Mac OS.";
  auto nuggets = shallow_parse(q, fixture_lexicon());
  ASSERT_EQ(nuggets.size(), 5u);
  std::vector<std::string> surfaces;
  for (const auto& n : nuggets) surfaces.push_back(n.surface);
  EXPECT_EQ(surfaces, (std::vector<std::string>{"software", "written", "C++", "runs", "Mac OS"}));
  EXPECT_EQ(nuggets[0].kind, NuggetKind::Entity);
  EXPECT_EQ(nuggets[1].kind, NuggetKind::Relation);
  EXPECT_EQ(nuggets[4].hint, "dbr:Mac_OS");
  UserQuestion uq{q, nuggets};
  EXPECT_TRUE(uq.valid());
}

TEST(ShallowParse, PrefersLongestSurface) {
  auto nuggets = shallow_parse("Which video games run on Mac OS X?", fixture_lexicon());
  ASSERT_FALSE(nuggets.empty());
  EXPECT_EQ(nuggets.front().surface, "video games");
  EXPECT_EQ(nuggets.back().surface, "Mac OS X");
}

TEST(ShallowParse, LeftoverWordsBecomeUnknownNuggets) {
  auto nuggets = shallow_parse("Who made Python?", fixture_lexicon());
  ASSERT_EQ(nuggets.size(), 2u);
  EXPECT_EQ(nuggets[0].surface, "made");
  EXPECT_EQ(nuggets[0].kind, NuggetKind::Unknown);
  EXPECT_EQ(nuggets[1].surface, "Python");
}

TEST(ShallowParse, SpansNeverOverlap) {
  auto nuggets = shallow_parse("Is Swift influenced by Objective-C and C?", fixture_lexicon());
  for (std::size_t i = 1; i < nuggets.size(); ++i) {
    EXPECT_LE(nuggets[i - 1].end, nuggets[i].begin);
  }
}

TEST(LinkEntities, ExactLabelRanksFirst) {
  auto c = link_entities(nugget("C", NuggetKind::Entity), fixture_kg(), 3);
  ASSERT_FALSE(c.empty());
  EXPECT_EQ(c[0].target, "dbr:C");
  EXPECT_EQ(c[0].method, "exact");
  EXPECT_LE(c.size(), 3u);
}

TEST(LinkEntities, OverrideLabelsAreMatched) {
  auto c = link_entities(nugget("C#", NuggetKind::Entity), fixture_kg(), 1);
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c[0].target, "dbr:C_Sharp");
}

TEST(LinkEntities, ScoresAreSortedAndKMustBePositive) {
  auto c = link_entities(nugget("Mac", NuggetKind::Entity), fixture_kg(), 5);
  for (std::size_t i = 1; i < c.size(); ++i) EXPECT_GE(c[i - 1].raw_score, c[i].raw_score);
  EXPECT_THROW(link_entities(nugget("Mac", NuggetKind::Entity), fixture_kg(), 0),
               ContractViolation);
}

TEST(LinkRelations, WordOverlapFindsProperty) {
  auto c = link_relations(nugget("operating system", NuggetKind::Relation), fixture_kg(), {}, 3);
  ASSERT_FALSE(c.empty());
  EXPECT_EQ(c[0].target, "dbo:operatingSystem");
  EXPECT_DOUBLE_EQ(c[0].raw_score, 1.0);
}

TEST(LinkRelations, ContextRestrictsToIncidentProperties) {
  auto c = link_relations(nugget("operating system", NuggetKind::Relation), fixture_kg(),
                          {"dbr:C++"}, 3);
  for (const auto& x : c) EXPECT_NE(x.target, "dbo:operatingSystem");
}

TEST(LinkRelations, HierarchyPredicatesAreNeverCandidates) {
  for (const char* s : {"type", "label", "sub class of"}) {
    for (const auto& x : link_relations(nugget(s, NuggetKind::Relation), fixture_kg(), {}, 5)) {
      EXPECT_NE(x.target, "rdf:type");
      EXPECT_NE(x.target, "rdfs:label");
      EXPECT_NE(x.target, "rdfs:subClassOf");
    }
  }
}

TEST(Lexicon, LoadsFixtureAndNormalizesKeys) {
  const auto& lex = fixture_lexicon();
  EXPECT_EQ(lex.entity_surfaces.at("c++"), "dbr:C++");
  EXPECT_EQ(lex.entity_surfaces.at("mac os"), "dbr:Mac_OS");
  EXPECT_GE(lex.longest_surface_tokens(), 3u);
  EXPECT_EQ(normalize_surface("  Mac   OS "), "mac os");
}

TEST(Lexicon, RejectsMalformedDocuments) {
  EXPECT_THROW(load_lexicon("[]"), ParseError);
  EXPECT_THROW(load_lexicon("{\"entities\": 3}"), ParseError);
  EXPECT_THROW(load_lexicon("{\"entities\": [{\"surface\": 1}]}"), ParseError);
  EXPECT_THROW(load_lexicon("{\"entities\": [{\"surface\": \"the\"}]}"), ValidationError);
  EXPECT_THROW(load_lexicon("{"), ParseError);
  EXPECT_NO_THROW(load_lexicon("{\"entities\": [{\"surface\": \"Foo\"}]}"));
}

}  // namespace
}  // namespace iqa
