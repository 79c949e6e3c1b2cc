#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "iqa/interpretation.hpp"
#include "iqa/knowledge_graph.hpp"

namespace iqa {

// C1 nugget interpretation, C2 superclass/type, C3 answer type, C4
// complete query.
enum class OptionCategory { NuggetInterpretation, TypeConstraint, AnswerType, CompleteQuery };

// "C1" .. "C4".
std::string_view to_string(OptionCategory category);

struct InteractionOption {
  // "C1:<nugget>:<target>", "C2:<class>", "C3:<answer type>", "C4:<cqi id>".
  std::string id;
  OptionCategory category = OptionCategory::NuggetInterpretation;
  // The KG element, class, answer type string or CQI id the option stands for.
  std::string payload;
  std::optional<std::size_t> nugget;  // C1 only
  std::string label;
  std::string inquiry;
  std::string description;
  std::vector<std::string> examples;
  double complexity = 0.0;
  double usability = 1.0;
  std::set<std::string> subsumed;
};

inline double usability_for(double complexity) { return 1.0 / (1.0 + complexity); }

/// All interaction options of a space, ordered by id.
///
/// C1: one per distinct nugget interpretation, subsuming the CQIs whose QI
///     contains it; complexity is the LCS dissimilarity between the nugget
///     surface and the element's label.
/// C2: one per class reachable within `superclass_depth` type/subclass hops
///     from an entity constant of some query graph, subsuming the CQIs with
///     such a constant; complexity is the shortest such hop count.
/// C3: one per answer type present; complexity 0.
/// C4: one per CQI; complexity |QI|.
///
/// Throws ContractViolation on an empty space.
std::vector<InteractionOption> generate_options(const InterpretationSpace& qis,
                                                const KnowledgeGraph& kg,
                                                const UserQuestion& question,
                                                int superclass_depth);

// Display label of a KG term: the KG label for identifiers, the unquoted
// text for literals.
std::string display_label(const KnowledgeGraph& kg, std::string_view term);

}  // namespace iqa
