#include "iqa/information.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <vector>

#include "iqa/errors.hpp"
#include "iqa/text.hpp"

namespace iqa {

double entropy(std::span<const double> probabilities) {
  double total = 0.0;
  for (double p : probabilities) total += p;
  if (total <= 0.0) return 0.0;
  double h = 0.0;
  for (double p : probabilities) {
    if (p <= 0.0) continue;
    double q = p / total;
    h -= q * std::log2(q);
  }
  return h < 0.0 ? 0.0 : h;
}

double entropy(const InterpretationSpace& qis) {
  std::vector<double> p;
  p.reserve(qis.size());
  for (const auto& c : qis.cqis()) p.push_back(c.probability);
  return entropy(p);
}

namespace {

// IG from the entropy of the whole space and the two branches. The branch
// terms are added before subtracting so that an option and its complement
// get bit-identical gains.
double gain(double h_all, std::span<const double> in, std::span<const double> out) {
  double p_in = 0.0, p_out = 0.0;
  for (double p : in) p_in += p;
  for (double p : out) p_out += p;
  if (p_in <= 0.0 || p_out <= 0.0) return 0.0;
  const double total = p_in + p_out;
  double ig = h_all - ((p_in / total) * entropy(in) + (p_out / total) * entropy(out));
  return ig < 0.0 ? 0.0 : ig;
}

}  // namespace

double split_information_gain(std::span<const double> in, std::span<const double> out) {
  std::vector<double> all(in.begin(), in.end());
  all.insert(all.end(), out.begin(), out.end());
  return gain(entropy(all), in, out);
}

namespace {

void split(const InteractionOption& io, const InterpretationSpace& qis, std::vector<double>& in,
           std::vector<double>& out) {
  std::size_t found = 0;
  for (const auto& c : qis.cqis()) {
    if (io.subsumed.count(c.id)) {
      in.push_back(c.probability);
      ++found;
    } else {
      out.push_back(c.probability);
    }
  }
  if (found != io.subsumed.size()) {
    throw ContractViolation("option " + io.id + " subsumes CQIs outside the space");
  }
}

}  // namespace

double option_probability(const InteractionOption& io, const InterpretationSpace& qis) {
  std::vector<double> in, out;
  split(io, qis, in, out);
  double p = 0.0;
  for (double x : in) p += x;
  return p;
}

double information_gain(const InteractionOption& io, const InterpretationSpace& qis) {
  std::vector<double> in, out;
  split(io, qis, in, out);
  return gain(entropy(qis), in, out);
}

double option_gain(const InteractionOption& io, const InterpretationSpace& qis, int omega) {
  if (omega < 0) throw ContractViolation("omega must be >= 0");
  double weight = 1.0;
  for (int i = 0; i < omega; ++i) weight *= io.usability;
  return weight * information_gain(io, qis);
}

std::size_t longest_common_substring(std::string_view a, std::string_view b) {
  std::vector<std::size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
  std::size_t best = 0;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : 0;
      best = std::max(best, cur[j]);
    }
    std::swap(prev, cur);
  }
  return best;
}

double lcs_dissimilarity(std::string_view a, std::string_view b) {
  const std::size_t longest = std::max(a.size(), b.size());
  if (longest == 0) return 0.0;
  auto lcs = longest_common_substring(text::to_lower(a), text::to_lower(b));
  return 1.0 - static_cast<double>(lcs) / static_cast<double>(longest);
}

}  // namespace iqa
