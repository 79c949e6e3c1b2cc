#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace iqa {

// Terms are plain strings. Variables start with '?', literals keep their
// leading double quote (as written in the TSV source), everything else is
// an identifier such as "dbr:C++".
inline bool is_variable(std::string_view term) {
  return !term.empty() && term.front() == '?';
}
inline bool is_literal(std::string_view term) {
  return !term.empty() && term.front() == '"';
}
inline bool is_constant(std::string_view term) {
  return !term.empty() && !is_variable(term);
}

// Literal token without its surrounding quotes.
std::string literal_text(std::string_view literal);

enum class AnswerType { Ask, Select, Count };

std::string_view to_string(AnswerType at);
// Accepts "ASK", "SELECT" and "COUNT"; anything else yields nullopt.
std::optional<AnswerType> parse_answer_type(std::string_view text);

struct TriplePattern {
  std::string subject;
  std::string predicate;
  std::string object;

  auto operator<=>(const TriplePattern&) const = default;
};

// A conjunctive graph pattern. The constant and variable sets are derived
// from the patterns, so they always agree with them.
class QueryGraph {
 public:
  QueryGraph() = default;
  explicit QueryGraph(std::vector<TriplePattern> patterns)
      : patterns_(std::move(patterns)) {}

  const std::vector<TriplePattern>& patterns() const { return patterns_; }
  void add(TriplePattern p) { patterns_.push_back(std::move(p)); }
  bool empty() const { return patterns_.empty(); }
  std::size_t size() const { return patterns_.size(); }

  std::set<std::string> variables() const;
  // Non-literal constants in subject/object position.
  std::set<std::string> entities() const;
  std::set<std::string> literals() const;
  // Constants in predicate position.
  std::set<std::string> properties() const;
  // Every constant in any position.
  std::set<std::string> constants() const;

  // Non-empty, no empty terms, no literal subjects or predicates.
  bool valid() const;

  bool operator==(const QueryGraph&) const = default;

 private:
  std::vector<TriplePattern> patterns_;
};

}  // namespace iqa
