#pragma once

#include <string_view>
#include <vector>

#include "iqa/interpretation.hpp"
#include "iqa/knowledge_graph.hpp"
#include "iqa/linkers.hpp"

namespace iqa {

// Ranked, confidence-normalized linking output for one nugget.
struct NuggetCandidates {
  std::vector<NuggetInterpretation> entities;
  std::vector<NuggetInterpretation> relations;
};

struct PipelineOutput {
  UserQuestion question;
  std::vector<NuggetCandidates> candidates;  // parallel to question.nuggets
  InterpretationSpace qis;
};

/// Shallow parse, joint linking, query building and QIS assembly.
///
/// The linking stage is the union of two tools per nugget: the trigram
/// (entities) / word-match (relations) linker and the lexicon hint that
/// the shallow parser attached to the nugget. Raw scores are min-max
/// scaled per nugget and per linker kind. Query graphs are scored
/// structurally, softmax-normalized across the space, multiplied by the
/// nugget confidences and floored before the space is truncated to
/// `config.max_cqis`.
PipelineOutput run_pipeline(std::string_view question, const KnowledgeGraph& kg,
                            const Lexicon& lexicon, const PipelineConfig& config);

// Linking stage only, exposed for baselines that interact per component.
std::vector<NuggetCandidates> link_nuggets(const UserQuestion& question,
                                           const KnowledgeGraph& kg, const Lexicon& lexicon,
                                           const PipelineConfig& config);

}  // namespace iqa
