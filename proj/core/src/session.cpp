#include "iqa/session.hpp"

#include <algorithm>

#include "iqa/errors.hpp"
#include "iqa/information.hpp"

namespace iqa {

std::string_view to_string(Decision decision) {
  switch (decision) {
    case Decision::AcceptIO:
      return "accept";
    case Decision::RejectIO:
      return "reject";
    case Decision::AcceptCQI:
      return "accept_query";
    case Decision::Unknown:
      return "unknown";
  }
  return "unknown";
}

std::optional<Decision> parse_decision(std::string_view text) {
  if (text == "accept") return Decision::AcceptIO;
  if (text == "reject") return Decision::RejectIO;
  if (text == "accept_query") return Decision::AcceptCQI;
  if (text == "unknown") return Decision::Unknown;
  return std::nullopt;
}

std::string_view to_string(SessionStatus status) {
  switch (status) {
    case SessionStatus::Running:
      return "running";
    case SessionStatus::AcceptedCQI:
      return "accepted";
    case SessionStatus::ExhaustedSpace:
      return "exhausted";
    case SessionStatus::UserTerminated:
      return "user_terminated";
    case SessionStatus::BudgetExceeded:
      return "budget_exceeded";
  }
  return "running";
}

SessionState start_session(UserQuestion question, InterpretationSpace qis,
                           const KnowledgeGraph& kg, const SessionConfig& config) {
  if (config.omega < 0) throw ValidationError("omega must be a natural number");
  if (config.max_interactions <= 0) throw ValidationError("max_interactions must be positive");
  SessionState state;
  state.question = std::move(question);
  state.qis = std::move(qis);
  state.omega = config.omega;
  state.max_interactions = config.max_interactions;
  if (state.qis.empty()) {
    state.status = SessionStatus::ExhaustedSpace;
    return state;
  }
  state.options = generate_options(state.qis, kg, state.question, config.superclass_depth);
  return state;
}

std::vector<ScoredOption> rank_options(const SessionState& state) {
  std::vector<ScoredOption> ranked;
  ranked.reserve(state.options.size());
  for (const auto& io : state.options) {
    ScoredOption s;
    s.option = &io;
    s.probability = option_probability(io, state.qis);
    s.information_gain = information_gain(io, state.qis);
    double weight = 1.0;
    for (int i = 0; i < state.omega; ++i) weight *= io.usability;
    s.option_gain = weight * s.information_gain;
    ranked.push_back(s);
  }
  std::sort(ranked.begin(), ranked.end(), [](const ScoredOption& a, const ScoredOption& b) {
    if (a.option_gain != b.option_gain) return a.option_gain > b.option_gain;
    if (a.option->usability != b.option->usability) {
      return a.option->usability > b.option->usability;
    }
    return a.option->id < b.option->id;
  });
  return ranked;
}

std::optional<InteractionOption> select_best_option(const SessionState& state) {
  if (state.status != SessionStatus::Running) return std::nullopt;
  for (const auto& s : rank_options(state)) {
    if (s.information_gain > 0.0) return *s.option;
  }
  return std::nullopt;
}

const Cqi* top_cqi(const SessionState& state) {
  const Cqi* best = nullptr;
  for (const auto& c : state.qis.cqis()) {
    if (!best || c.probability > best->probability ||
        (c.probability == best->probability && c.id < best->id)) {
      best = &c;
    }
  }
  return best;
}

SessionState apply_feedback(SessionState state, std::string_view option_id, Decision decision) {
  if (state.status != SessionStatus::Running) {
    throw InvalidStateError("session is " + std::string(to_string(state.status)));
  }

  HistoryEntry entry;
  entry.decision = decision;
  entry.at = std::chrono::system_clock::now();

  if (decision == Decision::AcceptCQI) {
    const Cqi* top = top_cqi(state);
    if (!top) throw InvalidStateError("no query to accept");
    entry.option_id = "C4:" + top->id;
    auto it = std::find_if(state.options.begin(), state.options.end(),
                           [&](const InteractionOption& io) { return io.id == entry.option_id; });
    if (it != state.options.end()) {
      entry.label = it->label;
      entry.inquiry = it->inquiry;
    }
    state.accepted_id = top->id;
    state.status = SessionStatus::AcceptedCQI;
    state.history.push_back(std::move(entry));
    ++state.interactions_used;
    return state;
  }

  auto it = std::find_if(state.options.begin(), state.options.end(),
                         [&](const InteractionOption& io) { return io.id == option_id; });
  if (it == state.options.end()) {
    throw NotFoundError("no live option with id " + std::string(option_id));
  }
  const InteractionOption answered = *it;
  state.options.erase(it);
  entry.option_id = answered.id;
  entry.label = answered.label;
  entry.inquiry = answered.inquiry;

  if (decision == Decision::AcceptIO) {
    state.qis = state.qis.filtered([&](const Cqi& c) { return answered.subsumed.count(c.id) > 0; });
  } else if (decision == Decision::RejectIO) {
    state.qis = state.qis.filtered([&](const Cqi& c) { return answered.subsumed.count(c.id) == 0; });
  }

  std::vector<InteractionOption> live;
  for (auto& io : state.options) {
    std::set<std::string> kept;
    for (const auto& id : io.subsumed) {
      if (state.qis.contains(id)) kept.insert(id);
    }
    if (kept.empty()) continue;
    io.subsumed = std::move(kept);
    live.push_back(std::move(io));
  }
  state.options = std::move(live);

  state.history.push_back(std::move(entry));
  ++state.interactions_used;
  if (state.qis.empty()) {
    state.status = SessionStatus::ExhaustedSpace;
  } else if (state.interactions_used >= state.max_interactions) {
    state.status = SessionStatus::BudgetExceeded;
  }
  return state;
}

void terminate_by_user(SessionState& state) {
  if (state.status == SessionStatus::Running) state.status = SessionStatus::UserTerminated;
}

Termination is_terminated(const SessionState& state) {
  return {state.status != SessionStatus::Running, state.status};
}

}  // namespace iqa
