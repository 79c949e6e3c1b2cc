#pragma once

#include <span>
#include <vector>

namespace iqa {

// (s - min) / (max - min). A constant list maps to all 1.0 so that a
// scorer that cannot discriminate does not suppress anything.
// Throws ContractViolation on empty input.
std::vector<double> min_max_normalize(std::span<const double> scores);

// exp(s_i - max) / sum_j exp(s_j - max). Throws ContractViolation on empty
// input.
std::vector<double> softmax_normalize(std::span<const double> scores);

}  // namespace iqa
