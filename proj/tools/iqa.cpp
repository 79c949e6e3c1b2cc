// iqa: serve the session API, run the oracle benchmark, or dump one
// question's interpretation space.

#include <CLI11.hpp>

#include <csignal>
#include <fstream>
#include <iostream>
#include <sstream>

#include "iqa/canonical.hpp"
#include "iqa/errors.hpp"
#include "iqa/evaluation.hpp"
#include "iqa/http_service.hpp"
#include "iqa/information.hpp"
#include "iqa/pipeline.hpp"
#include "iqa/session.hpp"
#include "iqa/session_store.hpp"
#include "iqa/verbalizer.hpp"

namespace {

constexpr int kExitInput = 2;

struct Inputs {
  std::string kg_path;
  std::string lexicon_path;
  iqa::PipelineConfig config;
};

// Exit code 2: an input file is missing or malformed.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void add_inputs(CLI::App& cmd, Inputs& in) {
  cmd.add_option("--kg", in.kg_path, "knowledge graph TSV")->required();
  cmd.add_option("--lexicon", in.lexicon_path, "lexicon JSON")->required();
  cmd.add_option("--omega", in.config.omega, "usability exponent of the option gain")
      ->check(CLI::NonNegativeNumber);
  cmd.add_option("--max-interactions", in.config.max_interactions, "interaction budget")
      ->check(CLI::PositiveNumber);
  cmd.add_option("--max-cqis", in.config.max_cqis, "interpretation space size cap")
      ->check(CLI::PositiveNumber);
}

std::pair<iqa::KnowledgeGraph, iqa::Lexicon> load_inputs(const Inputs& in) {
  try {
    return {iqa::load_kg_file(in.kg_path), iqa::load_lexicon_file(in.lexicon_path)};
  } catch (const iqa::Error& e) {
    throw InputError(e.what());
  }
}

nlohmann::ordered_json cqi_json(const iqa::Cqi& c, const iqa::UserQuestion& q,
                                const iqa::KnowledgeGraph& kg) {
  nlohmann::ordered_json j;
  j["id"] = c.id;
  j["probability"] = c.probability;
  j["answer_type"] = std::string(iqa::to_string(c.answer_type));
  j["canonical"] = c.canonical;
  j["formal"] = iqa::to_formal_text(c.answer_type, c.query_graph);
  j["verbalization"] = iqa::verbalize(c, kg);
  nlohmann::ordered_json qi = nlohmann::ordered_json::array();
  for (const auto& ni : c.qi) {
    qi.push_back({{"nugget", q.nuggets[ni.nugget].surface},
                  {"target", ni.target},
                  {"confidence", ni.confidence}});
  }
  j["qi"] = std::move(qi);
  return j;
}

int run_ask(const Inputs& in, const std::string& question) {
  auto [kg, lexicon] = load_inputs(in);
  auto out = iqa::run_pipeline(question, kg, lexicon, in.config);

  nlohmann::ordered_json j;
  j["question"] = question;
  nlohmann::ordered_json nuggets = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < out.question.nuggets.size(); ++i) {
    const auto& n = out.question.nuggets[i];
    nlohmann::ordered_json nj;
    nj["surface"] = n.surface;
    nj["kind"] = std::string(iqa::to_string(n.kind));
    auto list = [](const std::vector<iqa::NuggetInterpretation>& v) {
      nlohmann::ordered_json a = nlohmann::ordered_json::array();
      for (const auto& ni : v) {
        a.push_back({{"target", ni.target}, {"confidence", ni.confidence}, {"by", ni.producer}});
      }
      return a;
    };
    nj["entities"] = list(out.candidates[i].entities);
    nj["relations"] = list(out.candidates[i].relations);
    nuggets.push_back(std::move(nj));
  }
  j["nuggets"] = std::move(nuggets);
  j["entropy"] = iqa::entropy(out.qis);
  nlohmann::ordered_json space = nlohmann::ordered_json::array();
  for (const auto& c : out.qis.cqis()) space.push_back(cqi_json(c, out.question, kg));
  j["qis"] = std::move(space);

  j["first_option"] = nullptr;
  if (!out.qis.empty()) {
    iqa::SessionConfig sc{in.config.omega, in.config.max_interactions, in.config.superclass_depth};
    auto state = iqa::start_session(out.question, out.qis, kg, sc);
    if (auto best = iqa::select_best_option(state)) {
      j["first_option"] = {{"id", best->id},
                           {"inquiry", best->inquiry},
                           {"usability", best->usability},
                           {"option_gain", iqa::option_gain(*best, state.qis, state.omega)}};
    }
  }
  std::cout << j.dump(2) << '\n';
  return 0;
}

nlohmann::ordered_json trace_json(const iqa::InteractionTrace& t) {
  nlohmann::ordered_json j;
  j["question"] = t.question_id;
  j["mode"] = std::string(iqa::to_string(t.mode));
  j["category"] = t.category;
  j["gold_in_space"] = t.gold_in_space;
  j["success"] = t.success;
  j["cost"] = t.cost_defined ? nlohmann::ordered_json(t.cost) : nlohmann::ordered_json();
  j["final"] = t.final_cqi ? nlohmann::ordered_json(*t.final_cqi) : nlohmann::ordered_json();
  j["steps"] = t.steps;
  return j;
}

int run_bench(const Inputs& in, const std::string& dataset_path, const std::string& modes_arg,
              const std::string& out_path, const std::string& traces_path) {
  std::vector<iqa::EvalMode> modes;
  std::stringstream ss(modes_arg);
  for (std::string m; std::getline(ss, m, ',');) {
    auto mode = iqa::parse_eval_mode(m);
    if (!mode) throw CLI::ValidationError("--modes", "unknown mode '" + m + "'");
    if (std::find(modes.begin(), modes.end(), *mode) == modes.end()) modes.push_back(*mode);
  }
  if (modes.empty()) throw CLI::ValidationError("--modes", "no mode given");

  auto [kg, lexicon] = load_inputs(in);
  std::vector<iqa::EvalQuestion> dataset;
  try {
    dataset = iqa::load_dataset_file(dataset_path, kg.hierarchy());
  } catch (const iqa::Error& e) {
    throw InputError(e.what());
  }

  auto result = iqa::run_benchmark(dataset, kg, lexicon, in.config, modes);
  std::cout << result.report.table();

  if (!traces_path.empty()) {
    std::ofstream traces(traces_path, std::ios::binary | std::ios::trunc);
    if (!traces) throw InputError("cannot write traces: " + traces_path);
    for (const auto& t : result.traces) traces << trace_json(t).dump() << '\n';
  }

  auto text = result.report.to_json().dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write report: " + out_path);
    out << text;
  }
  return 0;
}

iqa::HttpService* g_service = nullptr;

void handle_signal(int) {
  if (g_service) g_service->stop();
}

int run_serve(const Inputs& in, const std::string& host, int port, const std::string& static_dir,
              const std::string& log_path) {
  auto [kg, lexicon] = load_inputs(in);
  iqa::SessionStore store(kg, lexicon, in.config, iqa::resolve_log_path(log_path));
  std::optional<std::filesystem::path> dir;
  if (!static_dir.empty()) dir = static_dir;
  iqa::HttpService service(store, dir);

  int bound = service.bind(host, port);
  if (bound < 0) {
    std::cerr << "iqa: cannot bind " << host << ":" << port << '\n';
    return 1;
  }
  g_service = &service;
  std::signal(SIGINT, handle_signal);
  std::signal(SIGTERM, handle_signal);
  std::cerr << "iqa: listening on http://" << host << ":" << bound << '\n';
  bool ok = service.listen();
  g_service = nullptr;
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Interactive semantic query construction"};
  app.require_subcommand(1);

  Inputs inputs;

  auto* ask = app.add_subcommand("ask", "Print the interpretation space of one question");
  std::string question;
  add_inputs(*ask, inputs);
  ask->add_option("--question,-q", question, "natural-language question")->required();

  auto* bench = app.add_subcommand("bench", "Evaluate a dataset with the simulated oracle");
  std::string dataset, modes = "og,ig,nib,sib", out, traces;
  add_inputs(*bench, inputs);
  bench->add_option("--dataset", dataset, "evaluation questions JSON")->required();
  bench->add_option("--modes", modes, "comma-separated subset of og,ig,nib,sib");
  bench->add_option("--out", out, "report path (stdout when omitted)");
  bench->add_option("--traces", traces, "per-question traces as JSON lines");

  auto* serve = app.add_subcommand("serve", "Run the HTTP session API");
  std::string host = "127.0.0.1", static_dir, log_path = "iqa_sessions.jsonl";
  int port = 8080;
  add_inputs(*serve, inputs);
  serve->add_option("--host", host, "bind address");
  serve->add_option("--port", port, "TCP port")->check(CLI::Range(0, 65535));
  serve->add_option("--static-dir", static_dir, "directory served at /");
  serve->add_option("--log", log_path, "session log (IQA_LOG_PATH overrides)");

  CLI11_PARSE(app, argc, argv);

  try {
    inputs.config.validate();
    if (*ask) return run_ask(inputs, question);
    if (*bench) return run_bench(inputs, dataset, modes, out, traces);
    if (*serve) return run_serve(inputs, host, port, static_dir, log_path);
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const InputError& e) {
    std::cerr << "iqa: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "iqa: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
