#include "iqa/canonical.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <vector>

#include "iqa/errors.hpp"

namespace iqa {

std::string canonicalize(AnswerType at, const QueryGraph& qg) {
  if (!qg.valid()) throw ContractViolation("canonicalize: invalid query graph");
  auto var_set = qg.variables();
  if (var_set.size() > kMaxCanonicalVariables) {
    throw ContractViolation("canonicalize: more than " +
                            std::to_string(kMaxCanonicalVariables) + " variables");
  }
  std::vector<std::string> vars(var_set.begin(), var_set.end());
  std::vector<std::size_t> perm(vars.size());
  std::iota(perm.begin(), perm.end(), 0);

  std::string best;
  bool have_best = false;
  std::map<std::string, std::string> rename;
  std::vector<std::string> lines;
  do {
    for (std::size_t i = 0; i < vars.size(); ++i) {
      rename[vars[i]] = "?v" + std::to_string(perm[i]);
    }
    auto term = [&](const std::string& t) -> const std::string& {
      return is_variable(t) ? rename.at(t) : t;
    };
    lines.clear();
    for (const auto& p : qg.patterns()) {
      lines.push_back(term(p.subject) + ' ' + term(p.predicate) + ' ' + term(p.object) + " .");
    }
    std::sort(lines.begin(), lines.end());
    lines.erase(std::unique(lines.begin(), lines.end()), lines.end());

    std::string candidate(to_string(at));
    for (const auto& l : lines) {
      candidate += ' ';
      candidate += l;
    }
    if (!have_best || candidate < best) {
      best = std::move(candidate);
      have_best = true;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

std::string to_formal_text(AnswerType at, const QueryGraph& qg) {
  auto vars = qg.variables();
  std::string projection;
  for (const auto& v : vars) {
    if (!projection.empty()) projection += ' ';
    projection += v;
  }
  std::string head;
  switch (at) {
    case AnswerType::Ask:
      head = "ASK WHERE";
      break;
    case AnswerType::Select:
      head = "SELECT DISTINCT " + (projection.empty() ? std::string("*") : projection) + " WHERE";
      break;
    case AnswerType::Count:
      head = vars.size() == 1 ? "SELECT (COUNT(DISTINCT " + projection + ") AS ?count) WHERE"
                              : std::string("SELECT (COUNT(*) AS ?count) WHERE");
      break;
  }
  std::string body;
  for (const auto& p : qg.patterns()) {
    body += ' ' + p.subject + ' ' + p.predicate + ' ' + p.object + " .";
  }
  return head + " {" + body + " }";
}

std::pair<AnswerType, QueryGraph> parse_formal_text(std::string_view text) {
  auto open = text.find('{');
  auto close = text.rfind('}');
  if (open == std::string_view::npos || close == std::string_view::npos || close < open) {
    throw ParseError("formal query: missing braces");
  }
  std::string_view head = text.substr(0, open);
  AnswerType at = AnswerType::Select;
  if (head.rfind("ASK", 0) == 0) {
    at = AnswerType::Ask;
  } else if (head.find("COUNT(") != std::string_view::npos) {
    at = AnswerType::Count;
  } else if (head.rfind("SELECT", 0) != 0) {
    throw ParseError("formal query: unknown query form");
  }

  std::string_view body = text.substr(open + 1, close - open - 1);
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < body.size()) {
    if (std::isspace(static_cast<unsigned char>(body[i]))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (body[i] == '"') {
      // A literal runs to the closing quote that is followed by whitespace.
      ++i;
      while (i < body.size() &&
             !(body[i] == '"' &&
               (i + 1 == body.size() || std::isspace(static_cast<unsigned char>(body[i + 1]))))) {
        ++i;
      }
      if (i == body.size()) throw ParseError("formal query: unterminated literal");
      ++i;
    } else {
      while (i < body.size() && !std::isspace(static_cast<unsigned char>(body[i]))) ++i;
    }
    tokens.emplace_back(body.substr(start, i - start));
  }

  QueryGraph qg;
  std::vector<std::string> current;
  for (auto& tok : tokens) {
    if (tok == ".") {
      if (current.size() != 3) throw ParseError("formal query: pattern without 3 terms");
      qg.add({current[0], current[1], current[2]});
      current.clear();
    } else {
      current.push_back(std::move(tok));
    }
  }
  if (!current.empty()) throw ParseError("formal query: trailing terms without '.'");
  if (!qg.valid()) throw ParseError("formal query: invalid graph pattern");
  return {at, std::move(qg)};
}

}  // namespace iqa
