#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "iqa/knowledge_graph.hpp"
#include "iqa/linkers.hpp"
#include "iqa/pipeline.hpp"
#include "iqa/session.hpp"

namespace iqa {

struct EvalQuestion {
  std::string id;
  std::string question;
  AnswerType answer_type = AnswerType::Select;
  QueryGraph gold;
  int category = 2;
  std::string canonical;  // canonical form of (answer_type, gold)
};

// Distinct entity constants (classes included) plus distinct properties
// other than the type predicate, clamped to [2, 5].
int complexity_category(const QueryGraph& gold, const HierarchyPredicates& predicates = {});

// Parses the dataset array. Throws ParseError naming the JSON path of the
// offending element, e.g. "/3/gold/triples/1".
std::vector<EvalQuestion> load_dataset(std::string_view json_text,
                                       const HierarchyPredicates& predicates = {});
std::vector<EvalQuestion> load_dataset_file(const std::filesystem::path& path,
                                            const HierarchyPredicates& predicates = {});

enum class EvalMode { IqaOg, IqaIg, Nib, Sib };

// "og", "ig", "nib", "sib".
std::string_view to_string(EvalMode mode);
std::optional<EvalMode> parse_eval_mode(std::string_view text);

struct InteractionTrace {
  std::string question_id;
  EvalMode mode = EvalMode::IqaOg;
  int category = 2;
  bool gold_in_space = false;
  // Gold reached at top-1 under the mode's protocol.
  bool success = false;
  // Options considered (interactive modes) or rank-based cost (baselines).
  int cost = 0;
  // Whether `cost` enters the cost statistics.
  bool cost_defined = false;
  std::optional<std::string> final_cqi;
  std::vector<std::string> steps;  // "<option id> <decision>"
};

// First CQI of `qis` (in rank order) canonically equal to `canonical`.
const Cqi* find_canonical(const InterpretationSpace& qis, const std::string& canonical);

/// Truthful oracle answer for `io`. With a gold representative in the
/// space the answer is membership of that CQI in the subsumed set;
/// otherwise the C1-C4 conditions are applied to the gold query itself.
bool oracle_answer(const InteractionOption& io, const EvalQuestion& gold,
                   const std::string* representative_id, const KnowledgeGraph& kg,
                   int superclass_depth);

/// Runs the interaction loop against an omniscient user. The oracle
/// accepts the top CQI as soon as it is canonically the gold query and
/// otherwise answers the best option truthfully. Cost counts every
/// answered option including the final acceptance.
InteractionTrace simulate_oracle(const EvalQuestion& gold, SessionState initial,
                                 const KnowledgeGraph& kg, EvalMode mode, int superclass_depth);

// 1-based rank of the gold query in descending-probability order.
std::optional<int> nib_cost(const InterpretationSpace& qis, const EvalQuestion& gold);

// Sum over components of the 1-based rank of the gold candidate; absent if
// any component lacks it. `ranked[i]` pairs with `gold[i]`.
std::optional<int> sib_cost(const std::vector<std::vector<std::string>>& ranked,
                            const std::vector<std::string>& gold);

struct SibComponents {
  std::vector<std::vector<std::string>> ranked;
  std::vector<std::string> gold;
};

/// Component lists seen by a user confirming after each pipeline stage:
/// the entity then relation candidates of every nugget the gold
/// representative interprets, then the query list restricted to CQIs built
/// only from the confirmed interpretations. Absent when the gold query is
/// not in the space.
std::optional<SibComponents> sib_components(const PipelineOutput& output,
                                            const EvalQuestion& gold);

struct GroupMetrics {
  int n = 0;
  std::optional<double> success_rate;
  std::optional<double> f1;
  int cost_n = 0;
  std::optional<double> cost_mean;
  std::optional<double> cost_stddev;  // sample (n - 1)
};

struct ModeReport {
  EvalMode mode = EvalMode::IqaOg;
  GroupMetrics overall;
  std::map<int, GroupMetrics> by_category;  // categories 2..5
};

struct MetricsReport {
  std::vector<ModeReport> modes;  // in EvalMode order

  const ModeReport* find(EvalMode mode) const;
  nlohmann::ordered_json to_json() const;
  // Fixed-width per-category table for terminals.
  std::string table() const;
};

// success_rate counts gold anywhere in the initial space, f1 counts
// `success`. Cost statistics use traces with `cost_defined`. Throws
// ContractViolation for traces referencing unknown questions. Modes listed
// in `modes` are reported even without traces.
MetricsReport compute_metrics(const std::vector<InteractionTrace>& traces,
                              const std::vector<EvalQuestion>& dataset,
                              const std::vector<EvalMode>& modes = {});

struct BenchmarkResult {
  std::vector<InteractionTrace> traces;
  MetricsReport report;
};

// Runs the pipeline once per question and evaluates every requested mode.
// IQA-OG uses `config.omega`, IQA-IG forces omega = 0.
BenchmarkResult run_benchmark(const std::vector<EvalQuestion>& dataset, const KnowledgeGraph& kg,
                              const Lexicon& lexicon, const PipelineConfig& config,
                              const std::vector<EvalMode>& modes);

}  // namespace iqa
