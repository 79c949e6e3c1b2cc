#pragma once

#include <span>
#include <string_view>

#include "iqa/interpretation.hpp"
#include "iqa/options.hpp"

namespace iqa {

// Shannon entropy in bits; zero-probability terms contribute nothing.
// The input is normalized by its own sum, so unnormalized masses are fine.
// An empty or all-zero input has entropy 0.
double entropy(std::span<const double> probabilities);
double entropy(const InterpretationSpace& qis);

// Expected entropy reduction of splitting a distribution into the `in`
// and `out` branches. Branch entropies use the renormalized conditional
// distributions. A degenerate split (either branch without mass) gains 0.
double split_information_gain(std::span<const double> in, std::span<const double> out);

// Sum of the probabilities of the subsumed CQIs. Throws ContractViolation
// when a subsumed id is not in `qis`.
double option_probability(const InteractionOption& io, const InterpretationSpace& qis);

double information_gain(const InteractionOption& io, const InterpretationSpace& qis);

// usability^omega * IG. omega = 0 returns IG unchanged.
double option_gain(const InteractionOption& io, const InterpretationSpace& qis, int omega);

// 1 - LCS(a, b) / max(|a|, |b|) on the lowercased strings, LCS being the
// longest common contiguous substring. Two empty strings give 0.
double lcs_dissimilarity(std::string_view a, std::string_view b);

// Length of the longest common contiguous substring (case-sensitive).
std::size_t longest_common_substring(std::string_view a, std::string_view b);

}  // namespace iqa
