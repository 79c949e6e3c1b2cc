#include "iqa/linkers.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "iqa/errors.hpp"
#include "iqa/text.hpp"

namespace iqa {

const std::set<std::string>& default_stopwords() {
  static const std::set<std::string> words = {
      "a",     "about", "all",   "also",  "an",    "and",   "any",   "are",   "as",
      "at",    "be",    "been",  "both",  "but",   "by",    "can",   "count", "did",
      "do",    "does",  "each",  "for",   "from",  "give",  "has",   "have",  "how",
      "i",     "in",    "into",  "is",    "it",    "its",   "list",  "many",  "me",
      "name",  "of",    "on",    "or",    "other", "show",  "some",  "tell",  "than",
      "that",  "the",   "their", "them",  "there", "these", "they",  "this",  "those",
      "to",    "was",   "were",  "what",  "when",  "where", "which", "who",   "whom",
      "whose", "with",  "one",   "ones",  "things", "thing", "us",   "under"};
  return words;
}

std::string normalize_surface(std::string_view surface) {
  std::string out;
  for (const auto& tok : text::tokenize(surface)) {
    if (!out.empty()) out += ' ';
    out += text::to_lower(tok.text);
  }
  return out;
}

void Lexicon::validate() const {
  for (const auto* table : {&entity_surfaces, &relation_surfaces}) {
    for (const auto& [surface, hint] : *table) {
      if (surface.empty()) throw ValidationError("lexicon: empty surface");
      if (stopwords.count(surface)) {
        throw ValidationError("lexicon: surface '" + surface + "' is a stopword");
      }
    }
  }
}

std::size_t Lexicon::longest_surface_tokens() const {
  std::size_t longest = 0;
  for (const auto* table : {&entity_surfaces, &relation_surfaces}) {
    for (const auto& entry : *table) {
      longest = std::max(longest, text::tokenize(entry.first).size());
    }
  }
  return longest;
}

Lexicon load_lexicon(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("lexicon: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("lexicon: root must be an object");

  Lexicon lex;
  auto read = [&](const char* key, std::map<std::string, std::string>& into) {
    if (!doc.contains(key)) return;
    const auto& arr = doc[key];
    if (!arr.is_array()) throw ParseError(std::string("lexicon: /") + key + " must be an array");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const auto& e = arr[i];
      std::string path = std::string("/") + key + "/" + std::to_string(i);
      if (!e.is_object() || !e.contains("surface") || !e["surface"].is_string()) {
        throw ParseError("lexicon: " + path + "/surface must be a string");
      }
      std::string id;
      if (e.contains("id")) {
        if (!e["id"].is_string()) throw ParseError("lexicon: " + path + "/id must be a string");
        id = e["id"].get<std::string>();
      }
      auto surface = normalize_surface(e["surface"].get<std::string>());
      if (surface.empty()) throw ParseError("lexicon: " + path + "/surface is empty");
      into[surface] = id;
    }
  };
  read("entities", lex.entity_surfaces);
  read("relations", lex.relation_surfaces);
  lex.validate();
  return lex;
}

Lexicon load_lexicon_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open lexicon file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_lexicon(buf.str());
}

void load_stopwords_file(Lexicon& lexicon, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open stopword file: " + path.string());
  std::set<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    auto w = normalize_surface(line);
    if (!w.empty()) words.insert(w);
  }
  lexicon.stopwords = std::move(words);
  lexicon.validate();
}

std::vector<InformationNugget> shallow_parse(std::string_view question, const Lexicon& lexicon) {
  auto tokens = text::tokenize(question);
  std::vector<std::string> lower;
  lower.reserve(tokens.size());
  for (const auto& t : tokens) lower.push_back(text::to_lower(t.text));

  const std::size_t max_len = std::max<std::size_t>(1, lexicon.longest_surface_tokens());
  std::vector<InformationNugget> nuggets;
  std::size_t i = 0;
  while (i < tokens.size()) {
    bool matched = false;
    for (std::size_t j = std::min(tokens.size(), i + max_len); j > i; --j) {
      std::string key = lower[i];
      for (std::size_t m = i + 1; m < j; ++m) key += ' ' + lower[m];

      NuggetKind kind = NuggetKind::Unknown;
      const std::string* hint = nullptr;
      if (auto it = lexicon.entity_surfaces.find(key); it != lexicon.entity_surfaces.end()) {
        kind = NuggetKind::Entity;
        hint = &it->second;
      } else if (auto r = lexicon.relation_surfaces.find(key);
                 r != lexicon.relation_surfaces.end()) {
        kind = NuggetKind::Relation;
        hint = &r->second;
      }
      if (!hint) continue;

      InformationNugget n;
      n.begin = tokens[i].begin;
      n.end = tokens[j - 1].end;
      n.surface = std::string(question.substr(n.begin, n.end - n.begin));
      n.kind = kind;
      n.hint = *hint;
      nuggets.push_back(std::move(n));
      i = j;
      matched = true;
      break;
    }
    if (matched) continue;
    if (!lexicon.stopwords.count(lower[i])) {
      nuggets.push_back({tokens[i].text, tokens[i].begin, tokens[i].end, NuggetKind::Unknown, {}});
    }
    ++i;
  }
  return nuggets;
}

double trigram_similarity(std::string_view a, std::string_view b) {
  if (a.empty() && b.empty()) return 1.0;
  if (a.empty() || b.empty()) return 0.0;
  auto ga = text::trigrams(a);
  auto gb = text::trigrams(b);
  std::size_t common = 0;
  for (const auto& g : ga) common += gb.count(g);
  return 2.0 * static_cast<double>(common) / static_cast<double>(ga.size() + gb.size());
}

std::vector<LinkCandidate> link_entities(const InformationNugget& nugget,
                                         const KnowledgeGraph& kg, int k) {
  if (k < 1) throw ContractViolation("link_entities: k must be >= 1");
  const auto surface = text::to_lower(nugget.surface);
  std::vector<LinkCandidate> out;
  for (const auto& id : kg.trigram_candidates(nugget.surface)) {
    if (!kg.has_entity(id)) continue;
    auto label = kg.label(id);
    double score = trigram_similarity(nugget.surface, label);
    if (score <= 0.0) continue;
    bool exact = text::to_lower(label) == surface;
    out.push_back({id, score, 0.0, exact ? "exact" : "trigram"});
  }
  std::sort(out.begin(), out.end(), [](const LinkCandidate& a, const LinkCandidate& b) {
    bool ea = a.method == "exact", eb = b.method == "exact";
    if (ea != eb) return ea;
    if (a.raw_score != b.raw_score) return a.raw_score > b.raw_score;
    return a.target < b.target;
  });
  if (out.size() > static_cast<std::size_t>(k)) out.resize(static_cast<std::size_t>(k));
  return out;
}

namespace {

std::set<std::string> content_words(std::string_view s, const std::set<std::string>& stopwords) {
  std::set<std::string> out;
  for (auto& w : text::words(s)) {
    if (!stopwords.count(w)) out.insert(std::move(w));
  }
  return out;
}

}  // namespace

std::vector<LinkCandidate> link_relations(const InformationNugget& nugget,
                                          const KnowledgeGraph& kg,
                                          const std::set<std::string>& context_entities, int k,
                                          const std::set<std::string>& stopwords) {
  if (k < 1) throw ContractViolation("link_relations: k must be >= 1");
  const auto& hp = kg.hierarchy();

  std::set<std::string> pool;
  if (context_entities.empty()) {
    pool = kg.properties();
  } else {
    for (const auto& e : context_entities) {
      for (const auto& t : kg.with_subject(e)) pool.insert(t.predicate);
      for (const auto& t : kg.with_object(e)) pool.insert(t.predicate);
    }
  }
  pool.erase(hp.type);
  pool.erase(hp.subclass);
  pool.erase(hp.label);

  const auto nugget_words = content_words(nugget.surface, stopwords);
  std::vector<LinkCandidate> out;
  for (const auto& prop : pool) {
    auto label = kg.label(prop);
    auto label_words = content_words(label, stopwords);
    std::size_t common = 0;
    for (const auto& w : nugget_words) common += label_words.count(w);
    std::size_t uni = nugget_words.size() + label_words.size() - common;
    if (common == 0 || uni == 0) continue;
    double jaccard = static_cast<double>(common) / static_cast<double>(uni);
    out.push_back({prop, jaccard, trigram_similarity(nugget.surface, label), "word-match"});
  }
  std::sort(out.begin(), out.end(), [](const LinkCandidate& a, const LinkCandidate& b) {
    if (a.raw_score != b.raw_score) return a.raw_score > b.raw_score;
    if (a.secondary != b.secondary) return a.secondary > b.secondary;
    return a.target < b.target;
  });
  if (out.size() > static_cast<std::size_t>(k)) out.resize(static_cast<std::size_t>(k));
  return out;
}

}  // namespace iqa
