#include "iqa/normalize.hpp"

#include <algorithm>
#include <cmath>

#include "iqa/errors.hpp"

namespace iqa {

std::vector<double> min_max_normalize(std::span<const double> scores) {
  if (scores.empty()) throw ContractViolation("min_max_normalize: empty input");
  auto [lo, hi] = std::minmax_element(scores.begin(), scores.end());
  double min = *lo, max = *hi;
  std::vector<double> out(scores.size(), 1.0);
  if (max == min) return out;
  for (std::size_t i = 0; i < scores.size(); ++i) out[i] = (scores[i] - min) / (max - min);
  return out;
}

std::vector<double> softmax_normalize(std::span<const double> scores) {
  if (scores.empty()) throw ContractViolation("softmax_normalize: empty input");
  double max = *std::max_element(scores.begin(), scores.end());
  std::vector<double> out(scores.size());
  double total = 0.0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    out[i] = std::exp(scores[i] - max);
    total += out[i];
  }
  for (auto& v : out) v /= total;
  return out;
}

}  // namespace iqa
