#include "iqa/pipeline.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>

#include "iqa/errors.hpp"
#include "iqa/normalize.hpp"
#include "iqa/query_builder.hpp"

namespace iqa {

namespace {

// Union of candidate lists by target, keeping the best raw score.
std::vector<NuggetInterpretation> merge(std::size_t nugget, ElementKind kind,
                                        const std::vector<LinkCandidate>& linked,
                                        const LinkCandidate* hinted) {
  std::map<std::string, LinkCandidate> by_target;
  auto take = [&](const LinkCandidate& c) {
    auto [it, inserted] = by_target.try_emplace(c.target, c);
    if (!inserted && c.raw_score > it->second.raw_score) it->second = c;
  };
  if (hinted) take(*hinted);
  for (const auto& c : linked) take(c);

  std::vector<LinkCandidate> ranked;
  for (auto& [t, c] : by_target) ranked.push_back(c);
  std::sort(ranked.begin(), ranked.end(), [](const LinkCandidate& a, const LinkCandidate& b) {
    if (a.raw_score != b.raw_score) return a.raw_score > b.raw_score;
    if (a.secondary != b.secondary) return a.secondary > b.secondary;
    return a.target < b.target;
  });

  std::vector<NuggetInterpretation> out;
  if (ranked.empty()) return out;
  std::vector<double> raw;
  for (const auto& c : ranked) raw.push_back(c.raw_score);
  auto conf = min_max_normalize(raw);
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    ElementKind k = kind;
    if (is_literal(ranked[i].target)) k = ElementKind::Literal;
    out.push_back({nugget, ranked[i].target, k, conf[i], ranked[i].method});
  }
  return out;
}

}  // namespace

std::vector<NuggetCandidates> link_nuggets(const UserQuestion& question,
                                           const KnowledgeGraph& kg, const Lexicon& lexicon,
                                           const PipelineConfig& config) {
  const auto& nuggets = question.nuggets;
  std::vector<NuggetCandidates> out(nuggets.size());

  std::vector<std::vector<LinkCandidate>> entity_links(nuggets.size());
  for (std::size_t i = 0; i < nuggets.size(); ++i) {
    const auto& n = nuggets[i];
    if (n.kind == NuggetKind::Relation) continue;
    entity_links[i] = link_entities(n, kg, config.max_entity_candidates_per_nugget);
    std::optional<LinkCandidate> hint;
    if (!n.hint.empty() && (kg.has_entity(n.hint) || kg.has_literal(n.hint))) {
      hint = LinkCandidate{n.hint, 1.0, 1.0, "lexicon"};
    }
    out[i].entities = merge(i, ElementKind::Entity, entity_links[i], hint ? &*hint : nullptr);
  }

  for (std::size_t i = 0; i < nuggets.size(); ++i) {
    const auto& n = nuggets[i];
    if (n.kind == NuggetKind::Entity) continue;
    std::set<std::string> context;
    if (config.restrict_relations_to_context) {
      for (std::size_t j = 0; j < nuggets.size(); ++j) {
        if (j == i) continue;
        for (const auto& e : out[j].entities) {
          if (e.kind == ElementKind::Entity) context.insert(e.target);
        }
      }
    }
    auto linked = link_relations(n, kg, context, config.max_relation_candidates_per_nugget,
                                 lexicon.stopwords);
    std::optional<LinkCandidate> hint;
    if (!n.hint.empty() && kg.has_property(n.hint)) {
      hint = LinkCandidate{n.hint, 1.0, 1.0, "lexicon"};
    }
    out[i].relations = merge(i, ElementKind::Property, linked, hint ? &*hint : nullptr);
  }
  return out;
}

PipelineOutput run_pipeline(std::string_view question, const KnowledgeGraph& kg,
                            const Lexicon& lexicon, const PipelineConfig& config) {
  if (question.empty()) throw ValidationError("question must not be empty");
  config.validate();

  PipelineOutput out;
  out.question.text = std::string(question);
  out.question.nuggets = shallow_parse(question, lexicon);
  out.candidates = link_nuggets(out.question, kg, lexicon, config);

  std::vector<NuggetInterpretation> pool;
  for (const auto& nc : out.candidates) {
    pool.insert(pool.end(), nc.entities.begin(), nc.entities.end());
    pool.insert(pool.end(), nc.relations.begin(), nc.relations.end());
  }
  bool any_entity = std::any_of(pool.begin(), pool.end(), [](const NuggetInterpretation& ni) {
    return ni.kind == ElementKind::Entity;
  });
  if (!any_entity) return out;

  auto graphs = enumerate_candidate_graphs(
      pool, kg, static_cast<std::size_t>(config.max_query_graphs));

  std::vector<Cqi> cqis;
  std::vector<double> structural;
  for (const auto& g : graphs) {
    std::vector<NuggetInterpretation> qi;
    for (auto idx : g.used) qi.push_back(pool[idx]);
    std::sort(qi.begin(), qi.end(), [](const auto& a, const auto& b) {
      return a.nugget < b.nugget;
    });
    for (auto at : g.answer_types) {
      Cqi c;
      c.qi = qi;
      c.answer_type = at;
      c.query_graph = g.graph;
      structural.push_back(structural_score(c.query_graph, at, out.question, c.qi));
      cqis.push_back(std::move(c));
    }
  }
  if (cqis.empty()) return out;

  auto structural_prob = softmax_normalize(structural);
  for (std::size_t i = 0; i < cqis.size(); ++i) {
    std::vector<double> conf;
    for (const auto& ni : cqis[i].qi) conf.push_back(ni.confidence);
    cqis[i].probability = cqi_probability(conf, structural_prob[i]);
  }

  auto space = assemble_qis(std::move(cqis));
  std::vector<Cqi> kept = space.cqis();
  if (kept.size() > static_cast<std::size_t>(config.max_cqis)) {
    kept.resize(static_cast<std::size_t>(config.max_cqis));
  }
  out.qis = InterpretationSpace(std::move(kept));
  return out;
}

}  // namespace iqa
