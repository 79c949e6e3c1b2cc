#include "iqa/query_graph.hpp"

namespace iqa {

std::string literal_text(std::string_view literal) {
  if (!is_literal(literal)) return std::string(literal);
  literal.remove_prefix(1);
  if (!literal.empty() && literal.back() == '"') literal.remove_suffix(1);
  return std::string(literal);
}

std::string_view to_string(AnswerType at) {
  switch (at) {
    case AnswerType::Ask:
      return "ASK";
    case AnswerType::Select:
      return "SELECT";
    case AnswerType::Count:
      return "COUNT";
  }
  return "SELECT";
}

std::optional<AnswerType> parse_answer_type(std::string_view text) {
  if (text == "ASK") return AnswerType::Ask;
  if (text == "SELECT") return AnswerType::Select;
  if (text == "COUNT") return AnswerType::Count;
  return std::nullopt;
}

std::set<std::string> QueryGraph::variables() const {
  std::set<std::string> out;
  for (const auto& p : patterns_) {
    for (const auto* t : {&p.subject, &p.predicate, &p.object}) {
      if (is_variable(*t)) out.insert(*t);
    }
  }
  return out;
}

std::set<std::string> QueryGraph::entities() const {
  std::set<std::string> out;
  for (const auto& p : patterns_) {
    for (const auto* t : {&p.subject, &p.object}) {
      if (is_constant(*t) && !is_literal(*t)) out.insert(*t);
    }
  }
  return out;
}

std::set<std::string> QueryGraph::literals() const {
  std::set<std::string> out;
  for (const auto& p : patterns_) {
    if (is_literal(p.object)) out.insert(p.object);
  }
  return out;
}

std::set<std::string> QueryGraph::properties() const {
  std::set<std::string> out;
  for (const auto& p : patterns_) {
    if (is_constant(p.predicate)) out.insert(p.predicate);
  }
  return out;
}

std::set<std::string> QueryGraph::constants() const {
  std::set<std::string> out;
  for (const auto& p : patterns_) {
    for (const auto* t : {&p.subject, &p.predicate, &p.object}) {
      if (is_constant(*t)) out.insert(*t);
    }
  }
  return out;
}

bool QueryGraph::valid() const {
  if (patterns_.empty()) return false;
  for (const auto& p : patterns_) {
    if (p.subject.empty() || p.predicate.empty() || p.object.empty()) {
      return false;
    }
    if (is_literal(p.subject) || is_literal(p.predicate)) return false;
    if (p.subject == "?" || p.predicate == "?" || p.object == "?") return false;
  }
  return true;
}

}  // namespace iqa
