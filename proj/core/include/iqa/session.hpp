#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "iqa/interpretation.hpp"
#include "iqa/knowledge_graph.hpp"
#include "iqa/options.hpp"

namespace iqa {

enum class Decision { AcceptIO, RejectIO, AcceptCQI, Unknown };

// Wire names: "accept", "reject", "accept_query", "unknown".
std::string_view to_string(Decision decision);
std::optional<Decision> parse_decision(std::string_view text);

enum class SessionStatus { Running, AcceptedCQI, ExhaustedSpace, UserTerminated, BudgetExceeded };

// "running", "accepted", "exhausted", "user_terminated", "budget_exceeded".
std::string_view to_string(SessionStatus status);

struct HistoryEntry {
  std::string option_id;
  std::string label;
  std::string inquiry;
  Decision decision = Decision::Unknown;
  std::chrono::system_clock::time_point at;
};

struct SessionConfig {
  int omega = 1;
  int max_interactions = 10;
  int superclass_depth = 2;
};

struct SessionState {
  UserQuestion question;
  InterpretationSpace qis;
  std::vector<InteractionOption> options;  // live pool, ordered by id
  std::vector<HistoryEntry> history;
  int interactions_used = 0;
  SessionStatus status = SessionStatus::Running;
  std::string accepted_id;  // set with AcceptedCQI
  int omega = 1;
  int max_interactions = 10;
};

// Builds the option pool for `qis`. An empty space starts as ExhaustedSpace.
SessionState start_session(UserQuestion question, InterpretationSpace qis,
                           const KnowledgeGraph& kg, const SessionConfig& config);

struct ScoredOption {
  const InteractionOption* option = nullptr;
  double probability = 0.0;
  double information_gain = 0.0;
  double option_gain = 0.0;
};

// Live options in presentation order: option gain descending, then
// usability descending, then id ascending.
std::vector<ScoredOption> rank_options(const SessionState& state);

// Best-ranked option with positive information gain, if any. Absent when
// the session is not running.
std::optional<InteractionOption> select_best_option(const SessionState& state);

// Most probable CQI, ties broken by smaller id.
const Cqi* top_cqi(const SessionState& state);

/// Applies one user decision.
///
/// AcceptIO keeps the option's subsumed CQIs, RejectIO the complement,
/// Unknown keeps the space. The answered option leaves the pool, the
/// remaining options are restricted to the surviving CQIs (empty ones are
/// dropped) and the space is renormalized. AcceptCQI accepts the current
/// top CQI and ignores `option_id`. Every decision counts one interaction.
///
/// Throws InvalidStateError when the session is not running and
/// NotFoundError for an option id outside the live pool.
SessionState apply_feedback(SessionState state, std::string_view option_id, Decision decision);

// Marks a running session as terminated by the user. No-op otherwise.
void terminate_by_user(SessionState& state);

struct Termination {
  bool terminated = false;
  SessionStatus reason = SessionStatus::Running;
};

Termination is_terminated(const SessionState& state);

}  // namespace iqa
