#include "iqa/interpretation.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <set>

#include "iqa/errors.hpp"

namespace iqa {

std::string_view to_string(NuggetKind kind) {
  switch (kind) {
    case NuggetKind::Entity:
      return "entity";
    case NuggetKind::Relation:
      return "relation";
    case NuggetKind::Unknown:
      return "unknown";
  }
  return "unknown";
}

bool UserQuestion::valid() const {
  for (const auto& n : nuggets) {
    if (n.begin >= n.end || n.end > text.size() || n.surface.empty()) return false;
    if (text.compare(n.begin, n.end - n.begin, n.surface) != 0) return false;
  }
  return true;
}

std::string mapping_key(const NuggetInterpretation& ni) {
  return std::to_string(ni.nugget) + ":" + ni.target;
}

bool CompleteQuestionInterpretation::uses(const NuggetInterpretation& ni) const {
  return std::any_of(qi.begin(), qi.end(),
                     [&](const NuggetInterpretation& x) { return x.same_mapping(ni); });
}

std::string cqi_id_for(const std::string& canonical) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : canonical) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[18];
  std::snprintf(buf, sizeof buf, "q%016llx", static_cast<unsigned long long>(h));
  return buf;
}

InterpretationSpace::InterpretationSpace(std::vector<Cqi> cqis) : cqis_(std::move(cqis)) {
  std::set<std::string> ids;
  double total = 0.0;
  for (const auto& c : cqis_) {
    if (!ids.insert(c.id).second) throw ContractViolation("duplicate CQI id " + c.id);
    if (c.probability < 0.0) throw ContractViolation("negative CQI probability");
    total += c.probability;
  }
  if (total > 0.0) {
    for (auto& c : cqis_) c.probability /= total;
  }
  std::sort(cqis_.begin(), cqis_.end(), [](const Cqi& a, const Cqi& b) {
    if (a.probability != b.probability) return a.probability > b.probability;
    return a.id < b.id;
  });
}

const Cqi* InterpretationSpace::find(const std::string& id) const {
  for (const auto& c : cqis_) {
    if (c.id == id) return &c;
  }
  return nullptr;
}

double InterpretationSpace::total_probability() const {
  double total = 0.0;
  for (const auto& c : cqis_) total += c.probability;
  return total;
}

void PipelineConfig::validate() const {
  auto positive = [](int v, const char* name) {
    if (v <= 0) throw ValidationError(std::string(name) + " must be positive");
  };
  positive(max_entity_candidates_per_nugget, "max_entity_candidates_per_nugget");
  positive(max_relation_candidates_per_nugget, "max_relation_candidates_per_nugget");
  positive(max_cqis, "max_cqis");
  positive(max_interactions, "max_interactions");
  positive(superclass_depth, "superclass_depth");
  positive(max_query_graphs, "max_query_graphs");
  if (omega < 0) throw ValidationError("omega must be a natural number");
}

}  // namespace iqa
