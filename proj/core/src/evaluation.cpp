#include "iqa/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "iqa/canonical.hpp"
#include "iqa/errors.hpp"

namespace iqa {

int complexity_category(const QueryGraph& gold, const HierarchyPredicates& predicates) {
  auto props = gold.properties();
  props.erase(predicates.type);
  int n = static_cast<int>(gold.entities().size() + props.size());
  return std::clamp(n, 2, 5);
}

namespace {

std::string string_field(const nlohmann::json& obj, const char* key, const std::string& path) {
  if (!obj.contains(key) || !obj[key].is_string()) {
    throw ParseError("dataset: " + path + "/" + key + " must be a string");
  }
  return obj[key].get<std::string>();
}

}  // namespace

std::vector<EvalQuestion> load_dataset(std::string_view json_text,
                                       const HierarchyPredicates& predicates) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("dataset: ") + e.what());
  }
  if (!doc.is_array()) throw ParseError("dataset: root must be an array");

  std::vector<EvalQuestion> out;
  std::set<std::string> ids;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const auto& item = doc[i];
    const std::string path = "/" + std::to_string(i);
    if (!item.is_object()) throw ParseError("dataset: " + path + " must be an object");

    EvalQuestion q;
    q.id = string_field(item, "id", path);
    if (!ids.insert(q.id).second) throw ParseError("dataset: " + path + "/id is a duplicate");
    q.question = string_field(item, "question", path);
    auto at = parse_answer_type(string_field(item, "answer_type", path));
    if (!at) throw ParseError("dataset: " + path + "/answer_type is not ASK, SELECT or COUNT");
    q.answer_type = *at;

    if (!item.contains("gold") || !item["gold"].is_object()) {
      throw ParseError("dataset: " + path + "/gold must be an object");
    }
    const auto& gold = item["gold"];
    if (!gold.contains("triples") || !gold["triples"].is_array()) {
      throw ParseError("dataset: " + path + "/gold/triples must be an array");
    }
    const auto& triples = gold["triples"];
    for (std::size_t t = 0; t < triples.size(); ++t) {
      const std::string tpath = path + "/gold/triples/" + std::to_string(t);
      const auto& tr = triples[t];
      bool ok = tr.is_array() && tr.size() == 3;
      for (std::size_t k = 0; ok && k < 3; ++k) {
        ok = tr[k].is_string() && !tr[k].get<std::string>().empty();
      }
      if (!ok) throw ParseError("dataset: " + tpath + " must be three non-empty strings");
      TriplePattern p{tr[0].get<std::string>(), tr[1].get<std::string>(),
                      tr[2].get<std::string>()};
      if (is_literal(p.subject) || is_literal(p.predicate) || p.subject == "?" ||
          p.predicate == "?" || p.object == "?") {
        throw ParseError("dataset: " + tpath + " is not a valid triple pattern");
      }
      q.gold.add(std::move(p));
    }
    if (!q.gold.valid()) throw ParseError("dataset: " + path + "/gold/triples is empty");

    if (gold.contains("variables")) {
      const auto& vars = gold["variables"];
      if (!vars.is_array()) throw ParseError("dataset: " + path + "/gold/variables must be an array");
      const auto used = q.gold.variables();
      for (std::size_t v = 0; v < vars.size(); ++v) {
        const std::string vpath = path + "/gold/variables/" + std::to_string(v);
        if (!vars[v].is_string() || !is_variable(vars[v].get<std::string>())) {
          throw ParseError("dataset: " + vpath + " must be a ?-prefixed string");
        }
        if (!used.count(vars[v].get<std::string>())) {
          throw ParseError("dataset: " + vpath + " does not occur in the gold triples");
        }
      }
    }
    if (q.gold.variables().size() > kMaxCanonicalVariables) {
      throw ParseError("dataset: " + path + "/gold has too many variables");
    }
    q.category = complexity_category(q.gold, predicates);
    q.canonical = canonicalize(q.answer_type, q.gold);
    out.push_back(std::move(q));
  }
  return out;
}

std::vector<EvalQuestion> load_dataset_file(const std::filesystem::path& path,
                                            const HierarchyPredicates& predicates) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open dataset file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_dataset(buf.str(), predicates);
}

std::string_view to_string(EvalMode mode) {
  switch (mode) {
    case EvalMode::IqaOg:
      return "og";
    case EvalMode::IqaIg:
      return "ig";
    case EvalMode::Nib:
      return "nib";
    case EvalMode::Sib:
      return "sib";
  }
  return "og";
}

std::optional<EvalMode> parse_eval_mode(std::string_view text) {
  if (text == "og") return EvalMode::IqaOg;
  if (text == "ig") return EvalMode::IqaIg;
  if (text == "nib") return EvalMode::Nib;
  if (text == "sib") return EvalMode::Sib;
  return std::nullopt;
}

const Cqi* find_canonical(const InterpretationSpace& qis, const std::string& canonical) {
  for (const auto& c : qis.cqis()) {
    if (c.canonical == canonical) return &c;
  }
  return nullptr;
}

bool oracle_answer(const InteractionOption& io, const EvalQuestion& gold,
                   const std::string* representative_id, const KnowledgeGraph& kg,
                   int superclass_depth) {
  if (representative_id) return io.subsumed.count(*representative_id) > 0;
  switch (io.category) {
    case OptionCategory::NuggetInterpretation:
      return gold.gold.constants().count(io.payload) > 0;
    case OptionCategory::TypeConstraint:
      for (const auto& x : gold.gold.entities()) {
        if (!kg.has_entity(x)) continue;
        for (const auto& [cls, depth] : type_closure(kg, x, superclass_depth)) {
          if (cls == io.payload) return true;
        }
      }
      return false;
    case OptionCategory::AnswerType:
      return io.payload == to_string(gold.answer_type);
    case OptionCategory::CompleteQuery:
      return false;
  }
  return false;
}

InteractionTrace simulate_oracle(const EvalQuestion& gold, SessionState state,
                                 const KnowledgeGraph& kg, EvalMode mode, int superclass_depth) {
  InteractionTrace trace;
  trace.question_id = gold.id;
  trace.mode = mode;
  trace.category = gold.category;

  const Cqi* rep = find_canonical(state.qis, gold.canonical);
  trace.gold_in_space = rep != nullptr;
  const std::string rep_id = rep ? rep->id : std::string();
  const std::string* rep_ptr = rep ? &rep_id : nullptr;

  while (state.status == SessionStatus::Running) {
    const Cqi* top = top_cqi(state);
    if (top && top->canonical == gold.canonical) {
      trace.steps.push_back("C4:" + top->id + " accept_query");
      state = apply_feedback(std::move(state), "", Decision::AcceptCQI);
      ++trace.cost;
      break;
    }
    auto best = select_best_option(state);
    if (!best) {
      terminate_by_user(state);
      break;
    }
    Decision d = oracle_answer(*best, gold, rep_ptr, kg, superclass_depth) ? Decision::AcceptIO
                                                                          : Decision::RejectIO;
    trace.steps.push_back(best->id + " " + std::string(to_string(d)));
    state = apply_feedback(std::move(state), best->id, d);
    ++trace.cost;
  }

  if (state.status == SessionStatus::AcceptedCQI) trace.final_cqi = state.accepted_id;
  trace.success = state.status == SessionStatus::AcceptedCQI && rep && state.accepted_id == rep_id;
  trace.cost_defined = trace.success;
  return trace;
}

std::optional<int> nib_cost(const InterpretationSpace& qis, const EvalQuestion& gold) {
  int rank = 0;
  for (const auto& c : qis.cqis()) {
    ++rank;
    if (c.canonical == gold.canonical) return rank;
  }
  return std::nullopt;
}

std::optional<int> sib_cost(const std::vector<std::vector<std::string>>& ranked,
                            const std::vector<std::string>& gold) {
  if (ranked.size() != gold.size()) {
    throw ContractViolation("sib_cost: one gold candidate per component required");
  }
  int total = 0;
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    auto it = std::find(ranked[i].begin(), ranked[i].end(), gold[i]);
    if (it == ranked[i].end()) return std::nullopt;
    total += static_cast<int>(it - ranked[i].begin()) + 1;
  }
  return total;
}

std::optional<SibComponents> sib_components(const PipelineOutput& output,
                                            const EvalQuestion& gold) {
  const Cqi* rep = find_canonical(output.qis, gold.canonical);
  if (!rep) return std::nullopt;

  SibComponents out;
  auto add = [&](const std::vector<NuggetInterpretation>& candidates, const std::string& target) {
    std::vector<std::string> list;
    for (const auto& c : candidates) list.push_back(c.target);
    out.ranked.push_back(std::move(list));
    out.gold.push_back(target);
  };
  for (const auto& ni : rep->qi) {
    if (ni.kind != ElementKind::Property) add(output.candidates.at(ni.nugget).entities, ni.target);
  }
  for (const auto& ni : rep->qi) {
    if (ni.kind == ElementKind::Property) add(output.candidates.at(ni.nugget).relations, ni.target);
  }

  std::vector<std::string> queries;
  for (const auto& c : output.qis.cqis()) {
    bool confirmed = std::all_of(c.qi.begin(), c.qi.end(), [&](const NuggetInterpretation& ni) {
      return rep->uses(ni);
    });
    if (confirmed) queries.push_back(c.id);
  }
  out.ranked.push_back(std::move(queries));
  out.gold.push_back(rep->id);
  return out;
}

const ModeReport* MetricsReport::find(EvalMode mode) const {
  for (const auto& m : modes) {
    if (m.mode == mode) return &m;
  }
  return nullptr;
}

namespace {

struct Accumulator {
  int n = 0;
  int in_space = 0;
  int success = 0;
  std::vector<double> costs;

  void add(const InteractionTrace& t) {
    ++n;
    in_space += t.gold_in_space ? 1 : 0;
    success += t.success ? 1 : 0;
    if (t.cost_defined) costs.push_back(t.cost);
  }

  GroupMetrics finish() const {
    GroupMetrics g;
    g.n = n;
    if (n > 0) {
      g.success_rate = static_cast<double>(in_space) / n;
      g.f1 = static_cast<double>(success) / n;
    }
    g.cost_n = static_cast<int>(costs.size());
    if (!costs.empty()) {
      double sum = 0.0;
      for (double c : costs) sum += c;
      double mean = sum / static_cast<double>(costs.size());
      g.cost_mean = mean;
      if (costs.size() > 1) {
        double ss = 0.0;
        for (double c : costs) ss += (c - mean) * (c - mean);
        g.cost_stddev = std::sqrt(ss / static_cast<double>(costs.size() - 1));
      }
    }
    return g;
  }
};

nlohmann::ordered_json group_json(const GroupMetrics& g) {
  auto opt = [](const std::optional<double>& v) -> nlohmann::ordered_json {
    if (v) return *v;
    return nullptr;
  };
  nlohmann::ordered_json j;
  j["n"] = g.n;
  j["success_rate"] = opt(g.success_rate);
  j["f1"] = opt(g.f1);
  j["cost_n"] = g.cost_n;
  j["cost_mean"] = opt(g.cost_mean);
  j["cost_stddev"] = opt(g.cost_stddev);
  return j;
}

std::string cell(const std::optional<double>& v) {
  if (!v) return "-";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", *v);
  return buf;
}

}  // namespace

nlohmann::ordered_json MetricsReport::to_json() const {
  nlohmann::ordered_json modes_json = nlohmann::ordered_json::object();
  for (const auto& m : modes) {
    nlohmann::ordered_json mj;
    mj["overall"] = group_json(m.overall);
    nlohmann::ordered_json cats = nlohmann::ordered_json::object();
    for (const auto& [cat, g] : m.by_category) cats[std::to_string(cat)] = group_json(g);
    mj["categories"] = std::move(cats);
    modes_json[std::string(to_string(m.mode))] = std::move(mj);
  }
  nlohmann::ordered_json j;
  j["modes"] = std::move(modes_json);
  return j;
}

std::string MetricsReport::table() const {
  std::string out;
  char line[160];
  std::snprintf(line, sizeof line, "%-5s %-8s %4s %8s %8s %6s %8s %8s\n", "mode", "category", "n",
                "success", "f1", "cost_n", "cost", "stddev");
  out += line;
  auto row = [&](const std::string& mode, const std::string& cat, const GroupMetrics& g) {
    std::snprintf(line, sizeof line, "%-5s %-8s %4d %8s %8s %6d %8s %8s\n", mode.c_str(),
                  cat.c_str(), g.n, cell(g.success_rate).c_str(), cell(g.f1).c_str(), g.cost_n,
                  cell(g.cost_mean).c_str(), cell(g.cost_stddev).c_str());
    out += line;
  };
  for (const auto& m : modes) {
    std::string name(to_string(m.mode));
    for (const auto& [cat, g] : m.by_category) row(name, std::to_string(cat), g);
    row(name, "all", m.overall);
  }
  return out;
}

MetricsReport compute_metrics(const std::vector<InteractionTrace>& traces,
                              const std::vector<EvalQuestion>& dataset,
                              const std::vector<EvalMode>& modes) {
  std::map<std::string, int> category_of;
  for (const auto& q : dataset) category_of[q.id] = q.category;

  std::map<EvalMode, std::pair<Accumulator, std::map<int, Accumulator>>> acc;
  for (EvalMode m : modes) acc[m];
  for (const auto& t : traces) {
    auto it = category_of.find(t.question_id);
    if (it == category_of.end()) {
      throw ContractViolation("trace for unknown question " + t.question_id);
    }
    auto& [overall, cats] = acc[t.mode];
    overall.add(t);
    cats[it->second].add(t);
  }

  MetricsReport report;
  for (auto& [mode, a] : acc) {
    ModeReport m;
    m.mode = mode;
    m.overall = a.first.finish();
    for (int cat = 2; cat <= 5; ++cat) m.by_category[cat] = a.second[cat].finish();
    report.modes.push_back(std::move(m));
  }
  return report;
}

BenchmarkResult run_benchmark(const std::vector<EvalQuestion>& dataset, const KnowledgeGraph& kg,
                              const Lexicon& lexicon, const PipelineConfig& config,
                              const std::vector<EvalMode>& modes) {
  config.validate();
  BenchmarkResult result;
  for (const auto& q : dataset) {
    auto output = run_pipeline(q.question, kg, lexicon, config);
    const bool in_space = find_canonical(output.qis, q.canonical) != nullptr;
    for (EvalMode mode : modes) {
      switch (mode) {
        case EvalMode::IqaOg:
        case EvalMode::IqaIg: {
          SessionConfig sc;
          sc.omega = mode == EvalMode::IqaIg ? 0 : config.omega;
          sc.max_interactions = config.max_interactions;
          sc.superclass_depth = config.superclass_depth;
          auto state = start_session(output.question, output.qis, kg, sc);
          result.traces.push_back(
              simulate_oracle(q, std::move(state), kg, mode, config.superclass_depth));
          break;
        }
        case EvalMode::Nib: {
          InteractionTrace t;
          t.question_id = q.id;
          t.mode = mode;
          t.category = q.category;
          t.gold_in_space = in_space;
          if (auto rank = nib_cost(output.qis, q)) {
            t.cost = *rank;
            t.cost_defined = true;
            t.success = *rank == 1;
            t.final_cqi = output.qis.cqis()[static_cast<std::size_t>(*rank - 1)].id;
          }
          result.traces.push_back(std::move(t));
          break;
        }
        case EvalMode::Sib: {
          InteractionTrace t;
          t.question_id = q.id;
          t.mode = mode;
          t.category = q.category;
          t.gold_in_space = in_space;
          if (auto comps = sib_components(output, q)) {
            if (auto cost = sib_cost(comps->ranked, comps->gold)) {
              t.cost = *cost;
              t.cost_defined = true;
              t.success = true;
              t.final_cqi = comps->gold.back();
            }
          }
          result.traces.push_back(std::move(t));
          break;
        }
      }
    }
  }
  result.report = compute_metrics(result.traces, dataset, modes);
  return result;
}

}  // namespace iqa
