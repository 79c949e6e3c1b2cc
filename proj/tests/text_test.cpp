#include <gtest/gtest.h>

#include <cmath>

#include "iqa/linkers.hpp"
#include "iqa/normalize.hpp"
#include "iqa/errors.hpp"
#include "iqa/text.hpp"

namespace iqa {
namespace {

TEST(Text, TrigramsPadBothEnds) {
  auto g = text::trigrams("ab");
  EXPECT_EQ(g.size(), 4u);
  EXPECT_EQ(text::trigrams("AB"), g);
}

TEST(Text, PrettifyLocalName) {
  EXPECT_EQ(text::prettify_local_name("dbo:programmingLanguage"), "programming language");
  EXPECT_EQ(text::prettify_local_name("dbr:Mac_OS"), "Mac OS");
  EXPECT_EQ(text::prettify_local_name("http://x.org/a#Thing"), "Thing");
  EXPECT_EQ(text::prettify_local_name("dbr:C++"), "C++");
}

TEST(Text, TokenizeKeepsInnerSymbolsAndOffsets) {
  std::string q = "Is it written in C++?";
  auto toks = text::tokenize(q);
  ASSERT_EQ(toks.size(), 5u);
  EXPECT_EQ(toks[4].text, "C++");
  EXPECT_EQ(q.substr(toks[4].begin, toks[4].end - toks[4].begin), "C++");
}

TEST(Text, WordsSplitCamelCase) {
  auto w = text::words("operatingSystem");
  ASSERT_EQ(w.size(), 2u);
  EXPECT_EQ(w[0], "operating");
  EXPECT_EQ(w[1], "system");
}

TEST(Normalize, MinMaxScalesToUnitInterval) {
  std::vector<double> s{2.0, 4.0, 3.0};
  auto n = min_max_normalize(s);
  EXPECT_DOUBLE_EQ(n[0], 0.0);
  EXPECT_DOUBLE_EQ(n[1], 1.0);
  EXPECT_DOUBLE_EQ(n[2], 0.5);
}

TEST(Normalize, MinMaxOfConstantListIsAllOnes) {
  std::vector<double> s{0.3, 0.3};
  for (double x : min_max_normalize(s)) EXPECT_DOUBLE_EQ(x, 1.0);
}

TEST(Normalize, SoftmaxSumsToOneAndIsShiftInvariant) {
  std::vector<double> a{1.0, 2.0, 3.0}, b{101.0, 102.0, 103.0};
  auto pa = softmax_normalize(a), pb = softmax_normalize(b);
  double sum = 0.0;
  for (std::size_t i = 0; i < pa.size(); ++i) {
    sum += pa[i];
    EXPECT_NEAR(pa[i], pb[i], 1e-15);
  }
  EXPECT_NEAR(sum, 1.0, 1e-15);
  EXPECT_NEAR(pa[2] / pa[1], std::exp(1.0), 1e-12);
}

TEST(Normalize, EmptyInputIsAContractViolation) {
  std::vector<double> none;
  EXPECT_THROW(min_max_normalize(none), ContractViolation);
  EXPECT_THROW(softmax_normalize(none), ContractViolation);
}

}  // namespace
}  // namespace iqa
