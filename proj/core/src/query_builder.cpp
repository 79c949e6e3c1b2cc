#include "iqa/query_builder.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>

#include "iqa/canonical.hpp"
#include "iqa/errors.hpp"
#include "iqa/text.hpp"

namespace iqa {

namespace {

enum class Role { Class, Entity, Literal, Property };

struct Atom {
  TriplePattern pattern;
  std::vector<std::size_t> uses;     // nugget indexes
  std::vector<std::size_t> members;  // pool indexes
};

Role role_of(const NuggetInterpretation& ni, const KnowledgeGraph& kg) {
  switch (ni.kind) {
    case ElementKind::Property:
      return Role::Property;
    case ElementKind::Literal:
      return Role::Literal;
    case ElementKind::Entity:
      return kg.is_class(ni.target) ? Role::Class : Role::Entity;
  }
  return Role::Entity;
}

bool has_match(const KnowledgeGraph& kg, const std::string& s, const std::string& p,
               const std::string& o) {
  if (!is_variable(s)) {
    for (const auto& t : kg.with_subject(s)) {
      if (t.predicate == p && (is_variable(o) || t.object == o)) return true;
    }
    return false;
  }
  for (const auto& t : kg.with_object(o)) {
    if (t.predicate == p) return true;
  }
  return false;
}

// All non-empty subsets of atoms whose `uses` sets are pairwise disjoint.
void combine(const std::vector<Atom>& atoms, std::size_t next, std::vector<std::size_t>& chosen,
             std::vector<bool>& busy, std::vector<std::vector<std::size_t>>& out) {
  if (next == atoms.size()) {
    if (!chosen.empty()) out.push_back(chosen);
    return;
  }
  combine(atoms, next + 1, chosen, busy, out);
  const auto& a = atoms[next];
  if (std::any_of(a.uses.begin(), a.uses.end(), [&](std::size_t u) { return busy[u]; })) return;
  for (auto u : a.uses) busy[u] = true;
  chosen.push_back(next);
  combine(atoms, next + 1, chosen, busy, out);
  chosen.pop_back();
  for (auto u : a.uses) busy[u] = false;
}

}  // namespace

std::vector<GraphCandidate> enumerate_candidate_graphs(
    std::span<const NuggetInterpretation> pool, const KnowledgeGraph& kg, std::size_t limit) {
  std::vector<Role> roles;
  roles.reserve(pool.size());
  std::size_t nugget_slots = 0;
  for (const auto& ni : pool) {
    roles.push_back(role_of(ni, kg));
    nugget_slots = std::max(nugget_slots, ni.nugget + 1);
  }

  const std::string var = kAnswerVariable;
  const auto& type_pred = kg.hierarchy().type;
  std::vector<Atom> star, ground;
  auto add = [&](std::vector<Atom>& into, TriplePattern p, std::vector<std::size_t> members) {
    Atom a{std::move(p), {}, std::move(members)};
    for (auto m : a.members) a.uses.push_back(pool[m].nugget);
    std::vector<std::size_t> sorted = a.uses;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return;
    into.push_back(std::move(a));
  };
  auto is_thing = [&](std::size_t i) {
    return roles[i] == Role::Entity || roles[i] == Role::Literal;
  };

  for (std::size_t i = 0; i < pool.size(); ++i) {
    if (roles[i] == Role::Class) add(star, {var, type_pred, pool[i].target}, {i});
  }
  for (std::size_t r = 0; r < pool.size(); ++r) {
    if (roles[r] != Role::Property) continue;
    const auto& prop = pool[r].target;
    for (std::size_t e = 0; e < pool.size(); ++e) {
      if (!is_thing(e)) continue;
      const auto& ent = pool[e].target;
      if (has_match(kg, var, prop, ent)) add(star, {var, prop, ent}, {r, e});
      if (roles[e] != Role::Entity) continue;
      if (has_match(kg, ent, prop, var)) add(star, {ent, prop, var}, {r, e});
      for (std::size_t o = 0; o < pool.size(); ++o) {
        if (o == e || !is_thing(o)) continue;
        if (kg.contains({ent, prop, pool[o].target})) {
          add(ground, {ent, prop, pool[o].target}, {e, r, o});
        }
      }
    }
  }
  for (std::size_t e = 0; e < pool.size(); ++e) {
    if (roles[e] != Role::Entity) continue;
    for (std::size_t c = 0; c < pool.size(); ++c) {
      if (roles[c] != Role::Class) continue;
      if (kg.contains({pool[e].target, type_pred, pool[c].target})) {
        add(ground, {pool[e].target, type_pred, pool[c].target}, {e, c});
      }
    }
  }

  struct Ranked {
    GraphCandidate candidate;
    std::string key;
  };
  std::vector<Ranked> ranked;
  auto emit = [&](const std::vector<Atom>& atoms, const std::vector<std::size_t>& subset,
                  std::vector<AnswerType> types) {
    GraphCandidate gc;
    for (auto a : subset) {
      gc.graph.add(atoms[a].pattern);
      gc.used.insert(gc.used.end(), atoms[a].members.begin(), atoms[a].members.end());
    }
    std::sort(gc.used.begin(), gc.used.end());
    gc.answer_types = std::move(types);
    auto key = canonicalize(gc.answer_types.front(), gc.graph);
    ranked.push_back({std::move(gc), std::move(key)});
  };

  std::vector<std::vector<std::size_t>> subsets;
  std::vector<std::size_t> chosen;
  std::vector<bool> busy(nugget_slots, false);
  combine(star, 0, chosen, busy, subsets);
  for (const auto& subset : subsets) emit(star, subset, {AnswerType::Select, AnswerType::Count});
  // Boolean questions check a single fact.
  for (std::size_t g = 0; g < ground.size(); ++g) emit(ground, {g}, {AnswerType::Ask});

  std::sort(ranked.begin(), ranked.end(), [](const Ranked& a, const Ranked& b) {
    if (a.candidate.used.size() != b.candidate.used.size()) {
      return a.candidate.used.size() > b.candidate.used.size();
    }
    return a.key < b.key;
  });
  std::vector<GraphCandidate> out;
  for (auto& r : ranked) {
    if (out.size() >= limit) break;
    out.push_back(std::move(r.candidate));
  }
  return out;
}

std::vector<GraphCandidate> enumerate_query_graphs(const CandidateAssignment& assignment,
                                                   const KnowledgeGraph& kg, std::size_t limit) {
  const auto& nis = assignment.interpretations;
  std::set<std::size_t> seen;
  bool has_entity = false;
  for (const auto& ni : nis) {
    if (!seen.insert(ni.nugget).second) {
      throw ContractViolation("enumerate_query_graphs: two interpretations of one nugget");
    }
    has_entity = has_entity || ni.kind == ElementKind::Entity;
  }
  if (!has_entity) {
    throw ContractViolation("enumerate_query_graphs: no entity or class interpretation");
  }
  return enumerate_candidate_graphs(nis, kg, limit);
}

AnswerType expected_answer_type(std::string_view question) {
  auto tokens = text::tokenize(question);
  if (tokens.empty()) return AnswerType::Select;
  auto first = text::to_lower(tokens[0].text);
  auto second = tokens.size() > 1 ? text::to_lower(tokens[1].text) : std::string();
  if ((first == "how" && second == "many") || first == "count") return AnswerType::Count;
  static const std::set<std::string> auxiliaries = {"is",  "are", "was", "were", "does",
                                                    "do",  "did", "can", "has",  "have"};
  if (auxiliaries.count(first)) return AnswerType::Ask;
  return AnswerType::Select;
}

double structural_score(const QueryGraph& qg, AnswerType at, const UserQuestion& question,
                        std::span<const NuggetInterpretation> qi) {
  if (question.nuggets.empty() || qg.empty()) return 0.0;
  const auto constants = qg.constants();

  std::set<std::size_t> covered;
  for (const auto& ni : qi) {
    if (constants.count(ni.target)) covered.insert(ni.nugget);
  }
  double score = static_cast<double>(covered.size()) /
                 static_cast<double>(question.nuggets.size());

  std::set<std::size_t> relation_like;
  for (std::size_t i = 0; i < question.nuggets.size(); ++i) {
    if (question.nuggets[i].kind == NuggetKind::Relation) relation_like.insert(i);
  }
  for (const auto& ni : qi) {
    if (ni.kind == ElementKind::Property) relation_like.insert(ni.nugget);
  }

  auto gap = [&](std::size_t a, std::size_t b) {
    const auto& x = question.nuggets[a];
    const auto& y = question.nuggets[b];
    if (x.end <= y.begin) return y.begin - x.end;
    if (y.end <= x.begin) return x.begin - y.end;
    return std::size_t{0};
  };
  auto nearest_relations = [&](std::size_t entity) {
    std::set<std::size_t> best;
    std::size_t best_gap = static_cast<std::size_t>(-1);
    for (auto r : relation_like) {
      if (r == entity) continue;
      auto g = gap(r, entity);
      if (g < best_gap) {
        best_gap = g;
        best.clear();
      }
      if (g == best_gap) best.insert(r);
    }
    return best;
  };

  std::size_t consistent = 0;
  for (const auto& p : qg.patterns()) {
    std::vector<std::size_t> relation_nuggets, entity_nuggets;
    for (const auto& ni : qi) {
      if (ni.kind == ElementKind::Property && ni.target == p.predicate) {
        relation_nuggets.push_back(ni.nugget);
      } else if (ni.kind != ElementKind::Property &&
                 (ni.target == p.subject || ni.target == p.object)) {
        entity_nuggets.push_back(ni.nugget);
      }
    }
    if (entity_nuggets.empty()) continue;
    if (relation_nuggets.empty()) {
      ++consistent;
      continue;
    }
    bool ok = false;
    for (auto e : entity_nuggets) {
      auto near = nearest_relations(e);
      for (auto r : relation_nuggets) ok = ok || near.count(r);
    }
    if (ok) ++consistent;
  }
  score += static_cast<double>(consistent) / static_cast<double>(qg.size());
  if (at == expected_answer_type(question.text)) score += 1.0;
  return score;
}

double cqi_probability(std::span<const double> qi_confidences, double structural_prob) {
  double p = structural_prob;
  for (double c : qi_confidences) p *= c;
  return p;
}

InterpretationSpace assemble_qis(std::vector<Cqi> cqis) {
  std::map<std::string, Cqi> best;
  for (auto& c : cqis) {
    if (c.canonical.empty()) c.canonical = canonicalize(c.answer_type, c.query_graph);
    if (c.id.empty()) c.id = cqi_id_for(c.canonical);
    auto it = best.find(c.canonical);
    if (it == best.end()) {
      best.emplace(c.canonical, std::move(c));
      continue;
    }
    auto keys = [](const Cqi& x) {
      std::vector<std::string> k;
      for (const auto& ni : x.qi) k.push_back(mapping_key(ni));
      return k;
    };
    if (c.probability > it->second.probability ||
        (c.probability == it->second.probability && keys(c) < keys(it->second))) {
      it->second = std::move(c);
    }
  }
  std::vector<Cqi> out;
  out.reserve(best.size());
  for (auto& [key, c] : best) {
    c.probability = std::max(c.probability, kProbabilityFloor);
    out.push_back(std::move(c));
  }
  return InterpretationSpace(std::move(out));
}

}  // namespace iqa
