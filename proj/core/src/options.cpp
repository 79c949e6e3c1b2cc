#include "iqa/options.hpp"

#include <algorithm>
#include <map>

#include "iqa/canonical.hpp"
#include "iqa/errors.hpp"
#include "iqa/information.hpp"
#include "iqa/verbalizer.hpp"

namespace iqa {

std::string_view to_string(OptionCategory category) {
  switch (category) {
    case OptionCategory::NuggetInterpretation:
      return "C1";
    case OptionCategory::TypeConstraint:
      return "C2";
    case OptionCategory::AnswerType:
      return "C3";
    case OptionCategory::CompleteQuery:
      return "C4";
  }
  return "C1";
}

std::string display_label(const KnowledgeGraph& kg, std::string_view term) {
  if (is_literal(term)) return literal_text(term);
  return kg.label(term);
}

namespace {

constexpr std::size_t kMaxExamples = 3;

std::string answer_type_inquiry(AnswerType at) {
  switch (at) {
    case AnswerType::Select:
      return "Are you asking for a list of things?";
    case AnswerType::Count:
      return "Are you asking for a number (how many)?";
    case AnswerType::Ask:
      return "Are you asking a yes/no question?";
  }
  return {};
}

std::string answer_type_label(AnswerType at) {
  switch (at) {
    case AnswerType::Select:
      return "a list of things";
    case AnswerType::Count:
      return "a count";
    case AnswerType::Ask:
      return "yes or no";
  }
  return {};
}

void describe_element(InteractionOption& io, const KnowledgeGraph& kg, ElementKind kind) {
  const auto& target = io.payload;
  if (kind == ElementKind::Literal) {
    io.description = "the value \"" + literal_text(target) + "\"";
    return;
  }
  if (kind == ElementKind::Property) {
    io.description = "the relation '" + io.label + "' (" + target + ")";
    for (const auto& t : kg.with_predicate(target)) {
      if (io.examples.size() == kMaxExamples) break;
      io.examples.push_back(display_label(kg, t.subject) + " " + io.label + " " +
                            display_label(kg, t.object));
    }
    return;
  }
  io.description = io.label + " (" + target + ")";
  if (kg.has_entity(target)) {
    std::vector<std::string> types;
    for (const auto& [cls, depth] : type_closure(kg, target, 1)) types.push_back(kg.label(cls));
    if (!types.empty()) {
      io.description += ", a";
      for (std::size_t i = 0; i < types.size(); ++i) {
        io.description += (i ? ", " : " ") + types[i];
      }
    }
  }
}

}  // namespace

std::vector<InteractionOption> generate_options(const InterpretationSpace& qis,
                                                const KnowledgeGraph& kg,
                                                const UserQuestion& question,
                                                int superclass_depth) {
  if (qis.empty()) throw ContractViolation("generate_options: empty interpretation space");
  std::map<std::string, InteractionOption> options;

  auto get = [&](const std::string& id, OptionCategory cat, bool& created) -> InteractionOption& {
    auto [it, inserted] = options.try_emplace(id);
    created = inserted;
    if (inserted) {
      it->second.id = id;
      it->second.category = cat;
    }
    return it->second;
  };

  for (const auto& cqi : qis.cqis()) {
    bool created = false;

    for (const auto& ni : cqi.qi) {
      auto& io = get("C1:" + mapping_key(ni), OptionCategory::NuggetInterpretation, created);
      if (created) {
        io.payload = ni.target;
        io.nugget = ni.nugget;
        io.label = display_label(kg, ni.target);
        std::string surface =
            ni.nugget < question.nuggets.size() ? question.nuggets[ni.nugget].surface : "";
        io.inquiry = "Does '" + surface + "' refer to " + io.label + "?";
        io.complexity = lcs_dissimilarity(surface, io.label);
        describe_element(io, kg, ni.kind);
      }
      io.subsumed.insert(cqi.id);
    }

    std::map<std::string, int> reachable;
    for (const auto& x : cqi.query_graph.entities()) {
      if (!kg.has_entity(x)) continue;
      for (const auto& [cls, depth] : type_closure(kg, x, superclass_depth)) {
        auto [it, inserted] = reachable.try_emplace(cls, depth);
        if (!inserted) it->second = std::min(it->second, depth);
      }
    }
    for (const auto& [cls, depth] : reachable) {
      auto& io = get("C2:" + cls, OptionCategory::TypeConstraint, created);
      if (created) {
        io.payload = cls;
        io.label = kg.label(cls);
        io.inquiry = "Is your question about something that is a " + io.label + "?";
        io.description = "the class '" + io.label + "' (" + cls + ")";
        io.complexity = depth;
      } else {
        io.complexity = std::min<double>(io.complexity, depth);
      }
      io.subsumed.insert(cqi.id);
    }

    {
      std::string at(to_string(cqi.answer_type));
      auto& io = get("C3:" + at, OptionCategory::AnswerType, created);
      if (created) {
        io.payload = at;
        io.label = answer_type_label(cqi.answer_type);
        io.inquiry = answer_type_inquiry(cqi.answer_type);
        io.description = "expected answer: " + io.label;
        io.complexity = 0.0;
      }
      io.subsumed.insert(cqi.id);
    }

    {
      auto& io = get("C4:" + cqi.id, OptionCategory::CompleteQuery, created);
      io.payload = cqi.id;
      io.label = verbalize(cqi, kg);
      io.inquiry = "Is this what you mean: " + io.label;
      io.description = to_formal_text(cqi.answer_type, cqi.query_graph);
      io.complexity = static_cast<double>(cqi.qi.size());
      io.subsumed.insert(cqi.id);
    }
  }

  std::vector<InteractionOption> out;
  out.reserve(options.size());
  for (auto& [id, io] : options) {
    io.usability = usability_for(io.complexity);
    out.push_back(std::move(io));
  }
  return out;
}

}  // namespace iqa
