#include "iqa/verbalizer.hpp"

#include <vector>

#include "iqa/errors.hpp"
#include "iqa/options.hpp"

namespace iqa {

namespace {

std::string term_text(const KnowledgeGraph& kg, const std::string& term) {
  if (is_variable(term)) return "something";
  if (is_literal(term)) return "\"" + display_label(kg, term) + "\"";
  return display_label(kg, term);
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

// Statement about a pattern without reference to the answer variable.
std::string fact(const KnowledgeGraph& kg, const TriplePattern& p) {
  if (p.predicate == kg.hierarchy().type) {
    return term_text(kg, p.subject) + " is of type " + term_text(kg, p.object);
  }
  return term_text(kg, p.subject) + " has " + term_text(kg, p.predicate) + " " +
         term_text(kg, p.object);
}

std::string clause(const KnowledgeGraph& kg, const TriplePattern& p, const std::string& answer) {
  const bool type = p.predicate == kg.hierarchy().type;
  if (p.subject == answer && !is_variable(p.object)) {
    if (type) return "that are of type " + term_text(kg, p.object);
    return "whose " + term_text(kg, p.predicate) + " is " + term_text(kg, p.object);
  }
  if (p.object == answer && !is_variable(p.subject)) {
    if (type) return "that are the type of " + term_text(kg, p.subject);
    return "that are the " + term_text(kg, p.predicate) + " of " + term_text(kg, p.subject);
  }
  return "where " + fact(kg, p);
}

}  // namespace

std::string verbalize(AnswerType at, const QueryGraph& qg, const KnowledgeGraph& kg) {
  if (!qg.valid()) throw ContractViolation("verbalize: invalid query graph");
  const auto vars = qg.variables();

  if (vars.empty()) {
    std::vector<std::string> facts;
    for (const auto& p : qg.patterns()) facts.push_back(fact(kg, p));
    return "Is it true that " + join(facts, " and ") + "?";
  }

  const std::string answer = *vars.begin();
  std::vector<std::string> clauses;
  for (const auto& p : qg.patterns()) clauses.push_back(clause(kg, p, answer));
  const auto body = join(clauses, " and ");
  switch (at) {
    case AnswerType::Select:
      return "List all things " + body + ".";
    case AnswerType::Count:
      return "How many things are there " + body + "?";
    case AnswerType::Ask:
      return "Is it true that there are things " + body + "?";
  }
  return body;
}

std::string verbalize(const Cqi& cqi, const KnowledgeGraph& kg) {
  return verbalize(cqi.answer_type, cqi.query_graph, kg);
}

}  // namespace iqa
