#include "iqa/session_store.hpp"

#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <random>

#include "iqa/canonical.hpp"
#include "iqa/errors.hpp"
#include "iqa/information.hpp"
#include "iqa/pipeline.hpp"
#include "iqa/verbalizer.hpp"

namespace iqa {

namespace {

std::string iso_time(std::chrono::system_clock::time_point t) {
  auto secs = std::chrono::system_clock::to_time_t(t);
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(t.time_since_epoch()).count() %
            1000;
  std::tm tm{};
  gmtime_r(&secs, &tm);
  char buf[40];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%S", &tm);
  char out[48];
  std::snprintf(out, sizeof out, "%s.%03lldZ", buf, static_cast<long long>(ms));
  return out;
}

bool valid_skip_reason(const std::string& r) {
  return r == "incomprehensible-question" || r == "incomprehensible-options" || r == "other";
}

}  // namespace

nlohmann::ordered_json session_view(const SessionRecord& record, const KnowledgeGraph& kg) {
  const auto& s = record.state;
  nlohmann::ordered_json v;
  v["session_id"] = record.id;
  v["question"] = s.question.text;
  v["mode"] = record.mode;
  v["status"] = std::string(to_string(s.status));
  v["interactions_used"] = s.interactions_used;
  v["max_interactions"] = s.max_interactions;
  v["qis_size"] = s.qis.size();

  v["option"] = nullptr;
  if (auto best = select_best_option(s)) {
    nlohmann::ordered_json o;
    o["id"] = best->id;
    o["category"] = std::string(to_string(best->category));
    o["label"] = best->label;
    o["inquiry"] = best->inquiry;
    o["description"] = best->description;
    o["examples"] = best->examples;
    o["complexity"] = best->complexity;
    o["usability"] = best->usability;
    o["information_gain"] = information_gain(*best, s.qis);
    o["option_gain"] = option_gain(*best, s.qis, s.omega);
    v["option"] = std::move(o);
  }

  v["top_query"] = nullptr;
  const Cqi* top = s.status == SessionStatus::AcceptedCQI ? s.qis.find(s.accepted_id) : top_cqi(s);
  if (top) {
    nlohmann::ordered_json q;
    q["id"] = top->id;
    q["probability"] = top->probability;
    q["answer_type"] = std::string(to_string(top->answer_type));
    q["formal"] = to_formal_text(top->answer_type, top->query_graph);
    q["verbalization"] = verbalize(*top, kg);
    v["top_query"] = std::move(q);
  }
  v["accepted_query"] =
      s.accepted_id.empty() ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(s.accepted_id);

  nlohmann::ordered_json history = nlohmann::ordered_json::array();
  for (const auto& h : s.history) {
    nlohmann::ordered_json e;
    e["option_id"] = h.option_id;
    e["label"] = h.label;
    e["inquiry"] = h.inquiry;
    e["decision"] = std::string(to_string(h.decision));
    history.push_back(std::move(e));
  }
  v["history"] = std::move(history);
  v["rating"] = record.rating ? nlohmann::ordered_json(*record.rating) : nlohmann::ordered_json();
  v["skip_reason"] =
      record.skip_reason ? nlohmann::ordered_json(*record.skip_reason) : nlohmann::ordered_json();
  return v;
}

std::filesystem::path resolve_log_path(const std::filesystem::path& fallback) {
  if (const char* env = std::getenv("IQA_LOG_PATH"); env && *env) return env;
  return fallback;
}

std::string random_session_id() {
  static thread_local std::random_device rd;
  std::uniform_int_distribution<std::uint64_t> dist;
  char buf[33];
  std::snprintf(buf, sizeof buf, "%016llx%016llx",
                static_cast<unsigned long long>(dist(rd)),
                static_cast<unsigned long long>(dist(rd)));
  return buf;
}

SessionStore::SessionStore(const KnowledgeGraph& kg, const Lexicon& lexicon, PipelineConfig config,
                           std::optional<std::filesystem::path> log_path)
    : kg_(kg), lexicon_(lexicon), config_(config) {
  config_.validate();
  if (log_path) {
    log_.emplace(*log_path, std::ios::app);
    if (!*log_) throw Error("cannot open session log: " + log_path->string());
  }
}

std::size_t SessionStore::size() const {
  std::shared_lock lock(sessions_mutex_);
  return sessions_.size();
}

std::shared_ptr<SessionStore::Entry> SessionStore::find(const std::string& id) const {
  std::shared_lock lock(sessions_mutex_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw NotFoundError("no session " + id);
  return it->second;
}

void SessionStore::log(nlohmann::ordered_json event) {
  if (!log_) return;
  std::lock_guard lock(log_mutex_);
  *log_ << event.dump() << '\n';
  log_->flush();
}

nlohmann::ordered_json SessionStore::create(const std::string& question, const std::string& mode,
                                            const nlohmann::json& overrides) {
  if (question.find_first_not_of(" \t\r\n") == std::string::npos) {
    throw ValidationError("question must not be empty");
  }
  if (mode != "og" && mode != "ig") throw ValidationError("mode must be \"og\" or \"ig\"");

  PipelineConfig config = config_;
  if (!overrides.is_object()) throw ValidationError("config overrides must be an object");
  for (const auto& [key, value] : overrides.items()) {
    if (key != "omega" && key != "max_interactions") {
      throw ValidationError("unknown config override " + key);
    }
    if (!value.is_number_integer()) throw ValidationError(key + " must be an integer");
    (key == "omega" ? config.omega : config.max_interactions) = value.get<int>();
  }
  if (mode == "ig") config.omega = 0;
  config.validate();

  auto output = run_pipeline(question, kg_, lexicon_, config);
  SessionConfig sc{config.omega, config.max_interactions, config.superclass_depth};

  auto entry = std::make_shared<Entry>();
  auto& rec = entry->record;
  rec.mode = mode;
  rec.state = start_session(std::move(output.question), std::move(output.qis), kg_, sc);
  rec.created = rec.updated = std::chrono::system_clock::now();

  {
    std::unique_lock lock(sessions_mutex_);
    do {
      rec.id = random_session_id();
    } while (sessions_.count(rec.id));
    sessions_.emplace(rec.id, entry);
  }

  std::lock_guard lock(entry->mutex);
  log({{"event", "create"},
       {"session_id", rec.id},
       {"time", iso_time(rec.created)},
       {"question", question},
       {"mode", mode},
       {"omega", rec.state.omega},
       {"qis_size", rec.state.qis.size()},
       {"status", std::string(to_string(rec.state.status))}});
  return session_view(rec, kg_);
}

nlohmann::ordered_json SessionStore::get(const std::string& id) const {
  auto entry = find(id);
  std::lock_guard lock(entry->mutex);
  return session_view(entry->record, kg_);
}

nlohmann::ordered_json SessionStore::feedback(const std::string& id, const std::string& option_id,
                                              Decision decision) {
  auto entry = find(id);
  std::lock_guard lock(entry->mutex);
  auto& rec = entry->record;
  if (option_id == "top") decision = Decision::AcceptCQI;
  rec.state = apply_feedback(rec.state, option_id, decision);
  rec.updated = std::chrono::system_clock::now();
  const auto& h = rec.state.history.back();
  log({{"event", "feedback"},
       {"session_id", rec.id},
       {"time", iso_time(h.at)},
       {"option_id", h.option_id},
       {"decision", std::string(to_string(h.decision))},
       {"qis_size", rec.state.qis.size()},
       {"status", std::string(to_string(rec.state.status))}});
  return session_view(rec, kg_);
}

nlohmann::ordered_json SessionStore::skip(const std::string& id, const std::string& reason) {
  if (!valid_skip_reason(reason)) throw ValidationError("unknown skip reason " + reason);
  auto entry = find(id);
  std::lock_guard lock(entry->mutex);
  auto& rec = entry->record;
  if (rec.state.status == SessionStatus::UserTerminated && rec.skip_reason) {
    return session_view(rec, kg_);
  }
  if (rec.state.status != SessionStatus::Running) {
    throw InvalidStateError("session is " + std::string(to_string(rec.state.status)));
  }
  terminate_by_user(rec.state);
  rec.skip_reason = reason;
  rec.updated = std::chrono::system_clock::now();
  log({{"event", "skip"},
       {"session_id", rec.id},
       {"time", iso_time(rec.updated)},
       {"reason", reason}});
  return session_view(rec, kg_);
}

nlohmann::ordered_json SessionStore::rate(const std::string& id, int rating) {
  if (rating < 1 || rating > 5) throw ValidationError("rating must be between 1 and 5");
  auto entry = find(id);
  std::lock_guard lock(entry->mutex);
  auto& rec = entry->record;
  if (rec.state.status == SessionStatus::Running) {
    throw InvalidStateError("session is still running");
  }
  rec.rating = rating;
  rec.updated = std::chrono::system_clock::now();
  log({{"event", "rating"},
       {"session_id", rec.id},
       {"time", iso_time(rec.updated)},
       {"rating", rating}});
  return {{"session_id", rec.id}, {"rating", rating}};
}

}  // namespace iqa
