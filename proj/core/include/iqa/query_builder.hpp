#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "iqa/interpretation.hpp"
#include "iqa/knowledge_graph.hpp"

namespace iqa {

// Probability floor applied before renormalizing a space.
inline constexpr double kProbabilityFloor = 1e-6;

// Name of the single answer variable of generated star queries.
inline constexpr const char* kAnswerVariable = "?uri";

// At most one interpretation per nugget.
struct CandidateAssignment {
  std::vector<NuggetInterpretation> interpretations;
};

struct GraphCandidate {
  QueryGraph graph;
  std::vector<AnswerType> answer_types;
  // Indexes into CandidateAssignment::interpretations used by the graph.
  std::vector<std::size_t> used;
};

/// Candidate query graphs for one assignment.
///
/// Star graphs around ?uri combine class constraints (?uri type c) with
/// relation patterns (?uri r e) / (e r ?uri); a relation direction is kept
/// only if the KG has a triple matching it with e ground. Single ground
/// facts (e type c) and (e1 r e2) present in the KG are ASK candidates.
/// Each nugget is used by at most one pattern. Every non-empty
/// combination is emitted, most interpretations used first, then by
/// canonical text, truncated to `limit`. Star graphs carry SELECT and
/// COUNT, ground graphs ASK.
///
/// Throws ContractViolation when the assignment has no entity interpretation.
std::vector<GraphCandidate> enumerate_query_graphs(const CandidateAssignment& assignment,
                                                   const KnowledgeGraph& kg, std::size_t limit);

// Same generation over a pool that may hold several candidates per nugget.
// The result is the union of enumerate_query_graphs over every assignment
// drawn from the pool: a graph never uses two interpretations of one
// nugget. `used` indexes into `pool`.
std::vector<GraphCandidate> enumerate_candidate_graphs(
    std::span<const NuggetInterpretation> pool, const KnowledgeGraph& kg, std::size_t limit);

// Answer type suggested by the question's opening words: "how many" or
// "count" -> COUNT, a leading auxiliary verb ("is", "does", ...) -> ASK,
// anything else -> SELECT.
AnswerType expected_answer_type(std::string_view question);

// Fraction of question nuggets covered by the graph's constants, plus
// 1/|patterns| for every pattern whose relation nugget is the nearest
// relation-like span to its entity nugget, plus 1 when `at` is the
// expected answer type. Class-constraint patterns (no relation nugget)
// count as consistent when their class comes from a nugget.
double structural_score(const QueryGraph& qg, AnswerType at, const UserQuestion& question,
                        std::span<const NuggetInterpretation> qi);

// Product of nugget interpretation confidences times the structural
// probability. Unnormalized.
double cqi_probability(std::span<const double> qi_confidences, double structural_prob);

// Deduplicates by canonical form (keeping the best-scored copy), applies
// the probability floor and renormalizes. `cqis[i].probability` holds the
// unnormalized score on input. Missing canonical texts and ids are filled in.
InterpretationSpace assemble_qis(std::vector<Cqi> cqis);

}  // namespace iqa
