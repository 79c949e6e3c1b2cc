#pragma once

#include <chrono>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>

#include <nlohmann/json.hpp>

#include "iqa/knowledge_graph.hpp"
#include "iqa/linkers.hpp"
#include "iqa/session.hpp"

namespace iqa {

struct SessionRecord {
  std::string id;
  std::string mode;  // "og" or "ig"
  SessionState state;
  std::chrono::system_clock::time_point created;
  std::chrono::system_clock::time_point updated;
  std::optional<int> rating;
  std::optional<std::string> skip_reason;
};

// Wire representation of a session. Contains no timestamps, so the view is
// a function of (question, mode, decisions) apart from the session id.
nlohmann::ordered_json session_view(const SessionRecord& record, const KnowledgeGraph& kg);

// Value of IQA_LOG_PATH if set, `fallback` otherwise.
std::filesystem::path resolve_log_path(const std::filesystem::path& fallback);

// 32 lowercase hex digits from a 128-bit random value.
std::string random_session_id();

/// In-memory sessions over a shared read-only KG and lexicon, with an
/// append-only JSON-lines event log. Operations on one session are
/// serialized by a per-session mutex; distinct sessions run concurrently.
///
/// Errors: ValidationError for bad input, NotFoundError for unknown
/// sessions or options, InvalidStateError for operations the session
/// status forbids.
class SessionStore {
 public:
  SessionStore(const KnowledgeGraph& kg, const Lexicon& lexicon, PipelineConfig config,
               std::optional<std::filesystem::path> log_path = std::nullopt);

  // `overrides` may carry "omega" and "max_interactions". mode "ig" forces
  // omega to 0.
  nlohmann::ordered_json create(const std::string& question, const std::string& mode,
                                const nlohmann::json& overrides = nlohmann::json::object());
  nlohmann::ordered_json get(const std::string& id) const;
  // `option_id` "top" or decision AcceptCQI accepts the current top query.
  nlohmann::ordered_json feedback(const std::string& id, const std::string& option_id,
                                  Decision decision);
  // reason: "incomprehensible-question", "incomprehensible-options" or
  // "other". Repeating a skip returns the same view.
  nlohmann::ordered_json skip(const std::string& id, const std::string& reason);
  // rating in 1..5 on a terminated session.
  nlohmann::ordered_json rate(const std::string& id, int rating);

  std::size_t size() const;

 private:
  struct Entry {
    std::mutex mutex;
    SessionRecord record;
  };

  std::shared_ptr<Entry> find(const std::string& id) const;
  void log(nlohmann::ordered_json event);

  const KnowledgeGraph& kg_;
  const Lexicon& lexicon_;
  PipelineConfig config_;

  mutable std::shared_mutex sessions_mutex_;
  std::map<std::string, std::shared_ptr<Entry>> sessions_;

  std::mutex log_mutex_;
  std::optional<std::ofstream> log_;
};

}  // namespace iqa
