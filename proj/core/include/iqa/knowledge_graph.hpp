#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "iqa/query_graph.hpp"

namespace iqa {

struct Triple {
  std::string subject;
  std::string predicate;
  std::string object;

  auto operator<=>(const Triple&) const = default;
};

struct HierarchyPredicates {
  std::string type = "rdf:type";
  std::string subclass = "rdfs:subClassOf";
  // Triples (x, label, "text") override the display label of x.
  std::string label = "rdfs:label";
};

/// Immutable in-memory triple store (V, L, E, T).
///
/// Identifiers are interned once at construction; subject, predicate and
/// object indexes back pattern evaluation. Labels default to the prettified
/// local name and a character-trigram index over the lowercased labels of
/// every entity and property supports fuzzy entity lookup. Safe to share
/// between threads after construction.
class KnowledgeGraph {
 public:
  using TermId = std::uint32_t;
  struct Encoded {
    TermId s, p, o;
    auto operator<=>(const Encoded&) const = default;
  };

  KnowledgeGraph() : KnowledgeGraph(std::vector<Triple>{}) {}
  explicit KnowledgeGraph(std::vector<Triple> triples,
                          HierarchyPredicates predicates = {});

  const std::set<std::string>& entities() const { return entities_; }
  const std::set<std::string>& literals() const { return literals_; }
  const std::set<std::string>& properties() const { return properties_; }
  // All triples in sorted order.
  std::vector<Triple> triples() const;
  std::size_t size() const { return triples_.size(); }

  bool has_entity(std::string_view id) const;
  bool has_property(std::string_view id) const;
  bool has_literal(std::string_view id) const;
  bool contains(const Triple& t) const;

  // Entities used as the object of a type triple or on either side of a
  // subclass triple.
  bool is_class(std::string_view id) const;

  std::string label(std::string_view id) const;
  const std::map<std::string, std::string>& labels() const { return labels_; }
  const std::map<std::string, std::set<std::string>>& trigram_index() const {
    return trigram_index_;
  }
  // Identifiers whose label shares at least one trigram with `surface`.
  std::set<std::string> trigram_candidates(std::string_view surface) const;

  std::vector<Triple> with_subject(std::string_view id) const;
  std::vector<Triple> with_predicate(std::string_view id) const;
  std::vector<Triple> with_object(std::string_view id) const;
  // Objects o of (subject, predicate, o).
  std::vector<std::string> objects(std::string_view subject,
                                   std::string_view predicate) const;

  const HierarchyPredicates& hierarchy() const { return predicates_; }

  // TSV serialization, one sorted triple per line.
  std::string serialize() const;

  // Interned access used by the query evaluator.
  std::optional<TermId> find(std::string_view term) const;
  const std::string& term(TermId id) const { return terms_[id]; }
  const std::vector<Encoded>& encoded() const { return triples_; }
  const std::vector<std::uint32_t>& by_subject(TermId id) const;
  const std::vector<std::uint32_t>& by_predicate(TermId id) const;
  const std::vector<std::uint32_t>& by_object(TermId id) const;

  // Rebuilds the trigram index from the current labels.
  static std::map<std::string, std::set<std::string>> build_trigram_index(
      const std::map<std::string, std::string>& labels);

  bool operator==(const KnowledgeGraph& other) const;

 private:
  TermId intern(const std::string& term);

  HierarchyPredicates predicates_;
  std::vector<std::string> terms_;
  std::unordered_map<std::string, TermId> term_ids_;
  std::vector<Encoded> triples_;
  std::unordered_map<TermId, std::vector<std::uint32_t>> by_subject_;
  std::unordered_map<TermId, std::vector<std::uint32_t>> by_predicate_;
  std::unordered_map<TermId, std::vector<std::uint32_t>> by_object_;
  std::set<std::string> entities_;
  std::set<std::string> literals_;
  std::set<std::string> properties_;
  std::set<std::string> classes_;
  std::map<std::string, std::string> labels_;
  std::map<std::string, std::set<std::string>> trigram_index_;
};

// Parses the three-column TSV format. Blank lines and lines starting with
// '#' are skipped; an object starting with '"' is a literal. Throws
// ParseError with the 1-based line number on malformed input.
KnowledgeGraph load_kg(std::string_view source, HierarchyPredicates predicates = {});
KnowledgeGraph load_kg_file(const std::filesystem::path& path,
                            HierarchyPredicates predicates = {});

struct SelectResult {
  std::vector<std::string> variables;  // sorted
  std::vector<std::vector<std::string>> rows;  // distinct, sorted
};

struct AnswerSet {
  AnswerType kind = AnswerType::Select;
  bool ask = false;
  std::size_t count = 0;
  SelectResult select;
};

// Conjunctive basic-graph-pattern evaluation. Variables may appear in any
// position including the predicate. Throws ContractViolation on an invalid
// query graph.
AnswerSet execute_query(const KnowledgeGraph& kg, AnswerType at, const QueryGraph& qg);
SelectResult select_bindings(const KnowledgeGraph& kg, const QueryGraph& qg);

// Classes above `entity`: depth 1 is a direct type or direct superclass,
// each further level is one subclass hop. Every class appears once at its
// minimal depth, ordered by (depth, id). Throws UnknownEntityError.
std::vector<std::pair<std::string, int>> type_closure(const KnowledgeGraph& kg,
                                                      std::string_view entity,
                                                      int max_depth);

// Hop count from `from` to `to` under the same edge rule as type_closure.
std::optional<int> shortest_abstraction_path(const KnowledgeGraph& kg,
                                             std::string_view from,
                                             std::string_view to);

}  // namespace iqa
