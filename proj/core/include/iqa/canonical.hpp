#pragma once

#include <string>
#include <string_view>
#include <utility>

#include "iqa/query_graph.hpp"

namespace iqa {

// Largest number of variables canonicalize() will permute.
inline constexpr std::size_t kMaxCanonicalVariables = 6;

// Canonical text of (answer type, query graph): variables are renamed to
// ?v0, ?v1, ... under every permutation, patterns are sorted and
// deduplicated, and the lexicographically smallest rendering wins. Two
// inputs yield the same string iff they are equal up to variable renaming
// and pattern order. Throws ContractViolation for more than
// kMaxCanonicalVariables variables or an invalid graph.
std::string canonicalize(AnswerType at, const QueryGraph& qg);

// SPARQL-style display text, e.g.
//   SELECT DISTINCT ?uri WHERE { ?uri rdf:type dbo:Software . }
std::string to_formal_text(AnswerType at, const QueryGraph& qg);

// Inverse of to_formal_text. Throws ParseError on malformed input.
std::pair<AnswerType, QueryGraph> parse_formal_text(std::string_view text);

}  // namespace iqa
