#pragma once

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "iqa/interpretation.hpp"
#include "iqa/knowledge_graph.hpp"

namespace iqa {

// English function words dropped by the shallow parser and the word-match
// relation linker.
const std::set<std::string>& default_stopwords();

/// Surface forms known to the shallow parser.
///
/// Keys are lowercased and whitespace-normalized. The mapped value is an
/// optional KG identifier hint (empty when the entry only marks a span).
struct Lexicon {
  std::map<std::string, std::string> entity_surfaces;
  std::map<std::string, std::string> relation_surfaces;
  std::set<std::string> stopwords = default_stopwords();

  // Throws ValidationError if a surface is empty or is a stopword.
  void validate() const;
  std::size_t longest_surface_tokens() const;
};

// JSON object {"entities": [{"surface", "id"}], "relations": [...]}.
// Throws ParseError naming the offending path.
Lexicon load_lexicon(std::string_view json_text);
Lexicon load_lexicon_file(const std::filesystem::path& path);
// Replaces the stopword list with one word per line of `path`.
void load_stopwords_file(Lexicon& lexicon, const std::filesystem::path& path);

// Lowercased tokens joined by single spaces.
std::string normalize_surface(std::string_view surface);

struct LinkCandidate {
  std::string target;
  double raw_score = 0.0;
  // Tie-breaker for word-match candidates (trigram similarity of labels).
  double secondary = 0.0;
  std::string method;  // "trigram", "word-match", "exact" or "lexicon"
};

// Greedy left-to-right longest match over lexicon surfaces; leftover
// non-stopword tokens become kind=Unknown nuggets. Spans never overlap.
std::vector<InformationNugget> shallow_parse(std::string_view question, const Lexicon& lexicon);

// Dice coefficient over padded lowercase character 3-gram sets.
double trigram_similarity(std::string_view a, std::string_view b);

// Top-k entities by trigram similarity between the nugget surface and
// entity labels. A case-insensitive exact label match ranks first.
std::vector<LinkCandidate> link_entities(const InformationNugget& nugget,
                                         const KnowledgeGraph& kg, int k);

// Top-k properties by word-overlap Jaccard between the nugget and the
// property label, trigram similarity breaking ties. With a non-empty
// context only properties incident to a context entity are considered.
// Hierarchy and label predicates are never relation candidates.
std::vector<LinkCandidate> link_relations(const InformationNugget& nugget,
                                          const KnowledgeGraph& kg,
                                          const std::set<std::string>& context_entities, int k,
                                          const std::set<std::string>& stopwords =
                                              default_stopwords());

}  // namespace iqa
