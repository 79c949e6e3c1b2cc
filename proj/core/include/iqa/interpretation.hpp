#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "iqa/query_graph.hpp"

namespace iqa {

enum class NuggetKind { Entity, Relation, Unknown };

std::string_view to_string(NuggetKind kind);

// A surface-form span of the question. [begin, end) are byte offsets.
struct InformationNugget {
  std::string surface;
  std::size_t begin = 0;
  std::size_t end = 0;
  NuggetKind kind = NuggetKind::Unknown;
  // KG identifier suggested by the lexicon entry that matched, if any.
  std::string hint;

  bool operator==(const InformationNugget&) const = default;
};

struct UserQuestion {
  std::string text;
  std::vector<InformationNugget> nuggets;

  // Spans inside the text, non-empty and matching their surface.
  bool valid() const;
};

enum class ElementKind { Entity, Property, Literal };

// Mapping of one nugget (by index into UserQuestion::nuggets) to a KG element.
struct NuggetInterpretation {
  std::size_t nugget = 0;
  std::string target;
  ElementKind kind = ElementKind::Entity;
  double confidence = 0.0;
  std::string producer;

  // Identity ignores confidence and producer.
  bool same_mapping(const NuggetInterpretation& other) const {
    return nugget == other.nugget && target == other.target;
  }
};

// Stable key of a nugget interpretation: "<nugget index>:<target>".
std::string mapping_key(const NuggetInterpretation& ni);

struct CompleteQuestionInterpretation {
  std::string id;
  std::vector<NuggetInterpretation> qi;  // ordered by nugget index
  AnswerType answer_type = AnswerType::Select;
  QueryGraph query_graph;
  double probability = 0.0;
  std::string canonical;

  bool uses(const NuggetInterpretation& ni) const;
};

using Cqi = CompleteQuestionInterpretation;

// Ids derived from the canonical form: "q" + 16 hex digits of FNV-1a.
std::string cqi_id_for(const std::string& canonical);

/// Candidate interpretations of one question with a probability
/// distribution. Kept sorted by descending probability, ties by id.
class InterpretationSpace {
 public:
  InterpretationSpace() = default;
  explicit InterpretationSpace(std::vector<Cqi> cqis);

  const std::vector<Cqi>& cqis() const { return cqis_; }
  std::size_t size() const { return cqis_.size(); }
  bool empty() const { return cqis_.empty(); }
  const Cqi* find(const std::string& id) const;
  bool contains(const std::string& id) const { return find(id) != nullptr; }

  double total_probability() const;

  // Keeps only CQIs whose id satisfies `keep`, then renormalizes.
  template <typename Pred>
  InterpretationSpace filtered(Pred keep) const {
    std::vector<Cqi> out;
    for (const auto& c : cqis_) {
      if (keep(c)) out.push_back(c);
    }
    return InterpretationSpace(std::move(out));
  }

 private:
  std::vector<Cqi> cqis_;
};

struct PipelineConfig {
  int max_entity_candidates_per_nugget = 3;
  int max_relation_candidates_per_nugget = 3;
  int max_cqis = 200;
  int omega = 1;
  int max_interactions = 10;
  int superclass_depth = 2;
  // Upper bound on query graphs enumerated per question.
  int max_query_graphs = 20000;
  // Restrict relation candidates to properties incident to linked entities.
  bool restrict_relations_to_context = true;

  // Throws ValidationError when a field is out of range.
  void validate() const;
};

}  // namespace iqa
