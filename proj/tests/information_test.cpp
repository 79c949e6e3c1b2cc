#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "iqa/errors.hpp"
#include "iqa/information.hpp"
#include "test_support.hpp"

namespace iqa {
namespace {

using iqa::testing::binary_entropy;
using iqa::testing::oracle_information_gain;
using iqa::testing::random_space;

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

InteractionOption option(std::set<std::string> subsumed, double usability = 1.0) {
  InteractionOption io;
  io.id = "o";
  io.subsumed = std::move(subsumed);
  io.usability = usability;
  return io;
}

TEST(Entropy, UniformFourIsTwoBits) {
  std::vector<double> p{0.25, 0.25, 0.25, 0.25};
  EXPECT_EQ(entropy(p), 2.0);
}

TEST(Entropy, SmallCases) {
  std::vector<double> one{1.0}, mixed{0.5, 0.25, 0.25}, zeros{0.0, 0.0}, none;
  EXPECT_EQ(entropy(one), 0.0);
  EXPECT_DOUBLE_EQ(entropy(mixed), 1.5);
  EXPECT_EQ(entropy(zeros), 0.0);
  EXPECT_EQ(entropy(none), 0.0);
}

TEST(Entropy, UnnormalizedMassesAreNormalized) {
  std::vector<double> a{2.0, 1.0, 1.0}, b{0.5, 0.25, 0.25};
  EXPECT_NEAR(entropy(a), entropy(b), 1e-15);
}

TEST(OptionProbability, SumsSubsumedMass) {
  auto qis = space({0.25, 0.25, 0.25, 0.25});
  EXPECT_DOUBLE_EQ(option_probability(option({"A", "B"}), qis), 0.5);
  EXPECT_DOUBLE_EQ(option_probability(option({"A", "B", "C", "D"}), qis), 1.0);
  EXPECT_DOUBLE_EQ(option_probability(option({"A"}), space({0.7, 0.2, 0.1})), 0.7);
}

TEST(OptionProbability, StaleIdIsAContractViolation) {
  EXPECT_THROW(option_probability(option({"Z"}), space({1.0})), ContractViolation);
  EXPECT_THROW(information_gain(option({"Z"}), space({1.0})), ContractViolation);
}

TEST(InformationGain, HalfSplitOfUniformFourIsOneBit) {
  EXPECT_EQ(information_gain(option({"A", "B"}), space({0.25, 0.25, 0.25, 0.25})), 1.0);
}

TEST(InformationGain, DegenerateSplitsGainNothing) {
  auto qis = space({0.25, 0.25, 0.25, 0.25});
  EXPECT_EQ(information_gain(option({"A", "B", "C", "D"}), qis), 0.0);
  EXPECT_EQ(information_gain(option({}), qis), 0.0);
}

// [0.9, 0.05, 0.05] with the 0.9 CQI subsumed: H = 0.9 log2(1/0.9) +
// 2 * 0.05 log2(20); the subsumed branch has entropy 0 and the other
// branch is uniform over two (1 bit), weighted by 0.1.
TEST(InformationGain, SkewedDistributionByHand) {
  double h = 0.9 * std::log2(1.0 / 0.9) + 2 * 0.05 * std::log2(20.0);
  double expected = h - 0.1 * 1.0;
  EXPECT_NEAR(information_gain(option({"A"}), space({0.9, 0.05, 0.05})), expected, 1e-12);
  EXPECT_NEAR(expected, binary_entropy(0.9), 1e-12);
}

TEST(InformationGain, SplitGainAgreesWithOptionGain) {
  std::vector<double> in{0.4, 0.1}, out{0.3, 0.2};
  EXPECT_NEAR(split_information_gain(in, out),
              information_gain(option({"A", "D"}), space({0.4, 0.3, 0.2, 0.1})), 1e-15);
}

// Properties over random spaces: IG matches the textbook formula, equals
// the binary entropy of P(IO) (it is the mutual information with a binary
// indicator that is a function of the CQI), lies in [0, 1] and vanishes
// exactly for degenerate splits.
TEST(InformationGain, RandomSpaceProperties) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::size_t> size(1, 32);
  for (int i = 0; i < 300; ++i) {
    auto qis = random_space(rng, size(rng));
    for (const auto& io : iqa::testing::random_options(rng, qis, 5)) {
      double ig = information_gain(io, qis);
      double p = option_probability(io, qis);
      EXPECT_NEAR(ig, oracle_information_gain(qis, io.subsumed), 1e-9);
      EXPECT_NEAR(ig, binary_entropy(p), 1e-9);
      EXPECT_GE(ig, 0.0);
      EXPECT_LE(ig, 1.0 + 1e-9);
      bool degenerate = p <= 0.0 || p >= 1.0 - 1e-15;
      if (degenerate) { EXPECT_LE(ig, 1e-9); }
      else EXPECT_GT(ig, 0.0);
    }
  }
}

TEST(InformationGain, ComplementHasIdenticalGain) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    auto qis = random_space(rng, 12);
    auto io = iqa::testing::random_options(rng, qis, 1).front();
    auto complement = io;
    complement.subsumed.clear();
    for (const auto& c : qis.cqis()) {
      if (!io.subsumed.count(c.id)) complement.subsumed.insert(c.id);
    }
    EXPECT_EQ(information_gain(io, qis), information_gain(complement, qis));
  }
}

TEST(OptionGain, UsabilityPower) {
  auto qis = space({0.25, 0.25, 0.25, 0.25});
  auto io = option({"A", "B"}, 0.5);
  EXPECT_EQ(option_gain(io, qis, 0), 1.0);
  EXPECT_EQ(option_gain(io, qis, 1), 0.5);
  EXPECT_EQ(option_gain(io, qis, 2), 0.25);
  EXPECT_THROW(option_gain(io, qis, -1), ContractViolation);
}

TEST(Lcs, MatchesBruteForce) {
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<int> len(0, 10), ch(0, 3);
  for (int i = 0; i < 500; ++i) {
    std::string a, b;
    for (int k = len(rng); k > 0; --k) a += static_cast<char>('a' + ch(rng));
    for (int k = len(rng); k > 0; --k) b += static_cast<char>('a' + ch(rng));
    EXPECT_EQ(longest_common_substring(a, b), iqa::testing::oracle_lcs(a, b)) << a << " " << b;
  }
}

TEST(Lcs, Dissimilarity) {
  EXPECT_EQ(lcs_dissimilarity("", ""), 0.0);
  EXPECT_EQ(lcs_dissimilarity("Mac OS", "mac os"), 0.0);
  EXPECT_EQ(lcs_dissimilarity("abc", "xyz"), 1.0);
  EXPECT_DOUBLE_EQ(lcs_dissimilarity("abcd", "xbcx"), 0.5);
}

}  // namespace
}  // namespace iqa
