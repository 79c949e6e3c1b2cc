#include "iqa/knowledge_graph.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <sstream>
#include <tuple>

#include "iqa/errors.hpp"
#include "iqa/text.hpp"

namespace iqa {

namespace {

const std::vector<std::uint32_t> kNoTriples;

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

}  // namespace

KnowledgeGraph::KnowledgeGraph(std::vector<Triple> triples, HierarchyPredicates predicates)
    : predicates_(std::move(predicates)) {
  std::sort(triples.begin(), triples.end());
  triples.erase(std::unique(triples.begin(), triples.end()), triples.end());

  triples_.reserve(triples.size());
  for (const auto& t : triples) {
    Encoded e{intern(t.subject), intern(t.predicate), intern(t.object)};
    auto idx = static_cast<std::uint32_t>(triples_.size());
    triples_.push_back(e);
    by_subject_[e.s].push_back(idx);
    by_predicate_[e.p].push_back(idx);
    by_object_[e.o].push_back(idx);

    entities_.insert(t.subject);
    properties_.insert(t.predicate);
    if (is_literal(t.object)) {
      literals_.insert(t.object);
    } else {
      entities_.insert(t.object);
    }
    if (t.predicate == predicates_.type) classes_.insert(t.object);
    if (t.predicate == predicates_.subclass) {
      classes_.insert(t.subject);
      classes_.insert(t.object);
    }
  }

  for (const auto& id : entities_) labels_[id] = text::prettify_local_name(id);
  for (const auto& id : properties_) labels_[id] = text::prettify_local_name(id);
  for (const auto& t : triples) {
    if (t.predicate == predicates_.label && is_literal(t.object)) {
      labels_[t.subject] = literal_text(t.object);
    }
  }
  trigram_index_ = build_trigram_index(labels_);
}

std::map<std::string, std::set<std::string>> KnowledgeGraph::build_trigram_index(
    const std::map<std::string, std::string>& labels) {
  std::map<std::string, std::set<std::string>> index;
  for (const auto& [id, label] : labels) {
    for (const auto& g : text::trigrams(label)) index[g].insert(id);
  }
  return index;
}

KnowledgeGraph::TermId KnowledgeGraph::intern(const std::string& term) {
  auto [it, inserted] = term_ids_.try_emplace(term, static_cast<TermId>(terms_.size()));
  if (inserted) terms_.push_back(term);
  return it->second;
}

std::optional<KnowledgeGraph::TermId> KnowledgeGraph::find(std::string_view term) const {
  auto it = term_ids_.find(std::string(term));
  if (it == term_ids_.end()) return std::nullopt;
  return it->second;
}

std::vector<Triple> KnowledgeGraph::triples() const {
  std::vector<Triple> out;
  out.reserve(triples_.size());
  for (const auto& e : triples_) out.push_back({terms_[e.s], terms_[e.p], terms_[e.o]});
  return out;
}

bool KnowledgeGraph::has_entity(std::string_view id) const {
  return entities_.count(std::string(id)) > 0;
}
bool KnowledgeGraph::has_property(std::string_view id) const {
  return properties_.count(std::string(id)) > 0;
}
bool KnowledgeGraph::has_literal(std::string_view id) const {
  return literals_.count(std::string(id)) > 0;
}
bool KnowledgeGraph::is_class(std::string_view id) const {
  return classes_.count(std::string(id)) > 0;
}

bool KnowledgeGraph::contains(const Triple& t) const {
  auto s = find(t.subject);
  auto p = find(t.predicate);
  auto o = find(t.object);
  if (!s || !p || !o) return false;
  return std::binary_search(triples_.begin(), triples_.end(), Encoded{*s, *p, *o},
                            [this](const Encoded& a, const Encoded& b) {
                              // triples_ is sorted by string order, not id order
                              return std::tie(terms_[a.s], terms_[a.p], terms_[a.o]) <
                                     std::tie(terms_[b.s], terms_[b.p], terms_[b.o]);
                            });
}

std::string KnowledgeGraph::label(std::string_view id) const {
  auto it = labels_.find(std::string(id));
  if (it != labels_.end()) return it->second;
  if (is_literal(id)) return literal_text(id);
  return text::prettify_local_name(id);
}

std::set<std::string> KnowledgeGraph::trigram_candidates(std::string_view surface) const {
  std::set<std::string> out;
  for (const auto& g : text::trigrams(surface)) {
    auto it = trigram_index_.find(g);
    if (it != trigram_index_.end()) out.insert(it->second.begin(), it->second.end());
  }
  return out;
}

const std::vector<std::uint32_t>& KnowledgeGraph::by_subject(TermId id) const {
  auto it = by_subject_.find(id);
  return it == by_subject_.end() ? kNoTriples : it->second;
}
const std::vector<std::uint32_t>& KnowledgeGraph::by_predicate(TermId id) const {
  auto it = by_predicate_.find(id);
  return it == by_predicate_.end() ? kNoTriples : it->second;
}
const std::vector<std::uint32_t>& KnowledgeGraph::by_object(TermId id) const {
  auto it = by_object_.find(id);
  return it == by_object_.end() ? kNoTriples : it->second;
}

std::vector<Triple> KnowledgeGraph::with_subject(std::string_view id) const {
  std::vector<Triple> out;
  if (auto t = find(id)) {
    for (auto idx : by_subject(*t)) {
      const auto& e = triples_[idx];
      out.push_back({terms_[e.s], terms_[e.p], terms_[e.o]});
    }
  }
  return out;
}

std::vector<Triple> KnowledgeGraph::with_predicate(std::string_view id) const {
  std::vector<Triple> out;
  if (auto t = find(id)) {
    for (auto idx : by_predicate(*t)) {
      const auto& e = triples_[idx];
      out.push_back({terms_[e.s], terms_[e.p], terms_[e.o]});
    }
  }
  return out;
}

std::vector<Triple> KnowledgeGraph::with_object(std::string_view id) const {
  std::vector<Triple> out;
  if (auto t = find(id)) {
    for (auto idx : by_object(*t)) {
      const auto& e = triples_[idx];
      out.push_back({terms_[e.s], terms_[e.p], terms_[e.o]});
    }
  }
  return out;
}

std::vector<std::string> KnowledgeGraph::objects(std::string_view subject,
                                                 std::string_view predicate) const {
  std::vector<std::string> out;
  auto s = find(subject);
  auto p = find(predicate);
  if (!s || !p) return out;
  for (auto idx : by_subject(*s)) {
    if (triples_[idx].p == *p) out.push_back(terms_[triples_[idx].o]);
  }
  return out;
}

std::string KnowledgeGraph::serialize() const {
  std::string out;
  for (const auto& t : triples()) {
    out += t.subject;
    out += '\t';
    out += t.predicate;
    out += '\t';
    out += t.object;
    out += '\n';
  }
  return out;
}

bool KnowledgeGraph::operator==(const KnowledgeGraph& other) const {
  return triples() == other.triples() && labels_ == other.labels_ &&
         trigram_index_ == other.trigram_index_ &&
         predicates_.type == other.predicates_.type &&
         predicates_.subclass == other.predicates_.subclass &&
         predicates_.label == other.predicates_.label;
}

KnowledgeGraph load_kg(std::string_view source, HierarchyPredicates predicates) {
  std::vector<Triple> triples;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= source.size()) {
    auto nl = source.find('\n', pos);
    std::string_view line =
        source.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? source.size() + 1 : nl + 1;
    ++line_no;

    auto stripped = trim(line);
    if (stripped.empty() || stripped.front() == '#') continue;

    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
      auto tab = stripped.find('\t', start);
      fields.push_back(trim(stripped.substr(start, tab == std::string_view::npos
                                                       ? std::string_view::npos
                                                       : tab - start)));
      if (tab == std::string_view::npos) break;
      start = tab + 1;
    }
    if (fields.size() != 3) {
      throw ParseError("expected 3 tab-separated fields, found " +
                           std::to_string(fields.size()),
                       line_no);
    }
    for (auto f : fields) {
      if (f.empty()) throw ParseError("empty field", line_no);
    }
    if (is_literal(fields[0]) || is_literal(fields[1])) {
      throw ParseError("literal allowed only in object position", line_no);
    }
    std::string object(fields[2]);
    if (is_literal(object)) object = "\"" + literal_text(object) + "\"";
    triples.push_back({std::string(fields[0]), std::string(fields[1]), std::move(object)});
  }
  return KnowledgeGraph(std::move(triples), std::move(predicates));
}

KnowledgeGraph load_kg_file(const std::filesystem::path& path, HierarchyPredicates predicates) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open knowledge graph file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_kg(buf.str(), std::move(predicates));
}

// ---------------------------------------------------------------------------
// Pattern evaluation

namespace {

using TermId = KnowledgeGraph::TermId;
constexpr TermId kUnbound = static_cast<TermId>(-1);

struct Slot {
  bool variable = false;
  TermId value = kUnbound;  // constant id, or variable index when `variable`
};

struct CompiledPattern {
  Slot s, p, o;
};

class Matcher {
 public:
  Matcher(const KnowledgeGraph& kg, std::vector<CompiledPattern> patterns, std::size_t nvars)
      : kg_(kg), patterns_(std::move(patterns)), binding_(nvars, kUnbound),
        done_(patterns_.size(), false) {}

  std::set<std::vector<TermId>> run() {
    recurse(0);
    return std::move(results_);
  }

 private:
  TermId resolve(const Slot& slot) const {
    return slot.variable ? binding_[slot.value] : slot.value;
  }

  int bound_count(const CompiledPattern& p) const {
    return (resolve(p.s) != kUnbound) + (resolve(p.p) != kUnbound) + (resolve(p.o) != kUnbound);
  }

  // Binds `slot` to `value`; returns false on conflict. Records fresh
  // bindings in `fresh` so they can be undone.
  bool bind(const Slot& slot, TermId value, std::vector<TermId>& fresh) {
    if (!slot.variable) return slot.value == value;
    TermId& cur = binding_[slot.value];
    if (cur == kUnbound) {
      cur = value;
      fresh.push_back(slot.value);
      return true;
    }
    return cur == value;
  }

  void recurse(std::size_t matched) {
    if (matched == patterns_.size()) {
      results_.insert(binding_);
      return;
    }
    std::size_t pick = patterns_.size();
    int best = -1;
    for (std::size_t i = 0; i < patterns_.size(); ++i) {
      if (done_[i]) continue;
      int b = bound_count(patterns_[i]);
      if (b > best) {
        best = b;
        pick = i;
      }
    }
    const auto& pat = patterns_[pick];
    TermId s = resolve(pat.s), p = resolve(pat.p), o = resolve(pat.o);

    const std::vector<std::uint32_t>* candidates = nullptr;
    if (s != kUnbound) {
      candidates = &kg_.by_subject(s);
    } else if (o != kUnbound) {
      candidates = &kg_.by_object(o);
    } else if (p != kUnbound) {
      candidates = &kg_.by_predicate(p);
    }

    done_[pick] = true;
    auto visit = [&](const KnowledgeGraph::Encoded& t) {
      std::vector<TermId> fresh;
      if (bind(pat.s, t.s, fresh) && bind(pat.p, t.p, fresh) && bind(pat.o, t.o, fresh)) {
        recurse(matched + 1);
      }
      for (auto v : fresh) binding_[v] = kUnbound;
    };
    const auto& all = kg_.encoded();
    if (candidates) {
      for (auto idx : *candidates) visit(all[idx]);
    } else {
      for (const auto& t : all) visit(t);
    }
    done_[pick] = false;
  }

  const KnowledgeGraph& kg_;
  std::vector<CompiledPattern> patterns_;
  std::vector<TermId> binding_;
  std::vector<bool> done_;
  std::set<std::vector<TermId>> results_;
};

}  // namespace

SelectResult select_bindings(const KnowledgeGraph& kg, const QueryGraph& qg) {
  if (!qg.valid()) throw ContractViolation("invalid query graph");
  SelectResult result;
  auto vars = qg.variables();
  result.variables.assign(vars.begin(), vars.end());

  std::vector<CompiledPattern> compiled;
  bool satisfiable = true;
  auto compile = [&](const std::string& term) {
    Slot slot;
    if (is_variable(term)) {
      slot.variable = true;
      slot.value = static_cast<TermId>(
          std::lower_bound(result.variables.begin(), result.variables.end(), term) -
          result.variables.begin());
    } else if (auto id = kg.find(term)) {
      slot.value = *id;
    } else {
      satisfiable = false;
    }
    return slot;
  };
  for (const auto& p : qg.patterns()) {
    compiled.push_back({compile(p.subject), compile(p.predicate), compile(p.object)});
  }
  if (!satisfiable) return result;

  Matcher matcher(kg, std::move(compiled), result.variables.size());
  for (const auto& row : matcher.run()) {
    std::vector<std::string> values;
    values.reserve(row.size());
    for (auto id : row) values.push_back(kg.term(id));
    result.rows.push_back(std::move(values));
  }
  std::sort(result.rows.begin(), result.rows.end());
  return result;
}

AnswerSet execute_query(const KnowledgeGraph& kg, AnswerType at, const QueryGraph& qg) {
  AnswerSet answer;
  answer.kind = at;
  answer.select = select_bindings(kg, qg);
  answer.count = answer.select.rows.size();
  answer.ask = answer.count > 0;
  return answer;
}

// ---------------------------------------------------------------------------
// Hierarchy traversal

namespace {

// BFS layers: the first hop may follow type or subclass edges, later hops
// subclass edges only.
std::map<std::string, int> abstraction_depths(const KnowledgeGraph& kg, std::string_view start,
                                              int max_depth) {
  const auto& hp = kg.hierarchy();
  std::map<std::string, int> depth;
  std::deque<std::pair<std::string, int>> queue;
  auto push = [&](const std::string& c, int d) {
    if (c == start || depth.count(c)) return;
    depth[c] = d;
    queue.emplace_back(c, d);
  };
  if (max_depth >= 1) {
    for (const auto& c : kg.objects(start, hp.type)) push(c, 1);
    for (const auto& c : kg.objects(start, hp.subclass)) push(c, 1);
  }
  while (!queue.empty()) {
    auto [node, d] = queue.front();
    queue.pop_front();
    if (d >= max_depth) continue;
    for (const auto& c : kg.objects(node, hp.subclass)) push(c, d + 1);
  }
  return depth;
}

}  // namespace

std::vector<std::pair<std::string, int>> type_closure(const KnowledgeGraph& kg,
                                                      std::string_view entity, int max_depth) {
  if (!kg.has_entity(entity)) throw UnknownEntityError(std::string(entity));
  std::vector<std::pair<std::string, int>> out;
  for (const auto& [c, d] : abstraction_depths(kg, entity, max_depth)) out.emplace_back(c, d);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return std::tie(a.second, a.first) < std::tie(b.second, b.first);
  });
  return out;
}

std::optional<int> shortest_abstraction_path(const KnowledgeGraph& kg, std::string_view from,
                                             std::string_view to) {
  if (from == to) return 0;
  if (!kg.has_entity(from)) return std::nullopt;
  // The hierarchy is finite, so |V| bounds any shortest path.
  auto depths = abstraction_depths(kg, from, static_cast<int>(kg.entities().size()) + 1);
  auto it = depths.find(std::string(to));
  if (it == depths.end()) return std::nullopt;
  return it->second;
}

}  // namespace iqa
