#include "humat/communication.hpp"

#include <algorithm>
#include <cmath>

#include "humat/errors.hpp"

namespace humat {

void InfluenceParams::validate() const {
  auto in_unit = [](double v) { return v >= 0.0 && v <= 1.0; };
  if (!in_unit(similarity_weight)) {
    throw InvalidConfig("influence.similarity_weight", "must lie in [0,1]");
  }
  if (!in_unit(aspiration_weight)) {
    throw InvalidConfig("influence.aspiration_weight", "must lie in [0,1]");
  }
  if (std::abs(similarity_weight + aspiration_weight - 1.0) > 1e-12) {
    throw InvalidConfig("influence", "similarity_weight + aspiration_weight must equal 1");
  }
  if (!in_unit(learning_rate)) {
    throw InvalidConfig("influence.learning_rate", "must lie in [0,1]");
  }
}

std::string_view to_string(EventKind kind) {
  return kind == EventKind::Signal ? "signal" : "inquire";
}

std::optional<EventKind> parse_event_kind(std::string_view text) {
  if (text == "signal") return EventKind::Signal;
  if (text == "inquire") return EventKind::Inquire;
  return std::nullopt;
}

namespace {

double importance_similarity(const Humat& ego, std::span<const double> other) {
  const std::size_t m = ego.motive_states.size();
  if (m == 0) return 1.0;
  double distance = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    distance += std::abs(ego.motive_states[i].importance - other[i]);
  }
  return 1.0 - distance / static_cast<double>(m);
}

template <typename Score>
AgentId argmax_alter(const Humat& ego, Score score) {
  if (ego.alters.empty()) {
    throw NoNeighbors("agent " + std::to_string(ego.agent_id) + " has no neighbors");
  }
  // Alters are sorted by id, so a strict comparison keeps the lowest id on ties.
  AgentId best = ego.alters.front().alter_id;
  double best_score = score(ego.alters.front());
  for (std::size_t i = 1; i < ego.alters.size(); ++i) {
    const double s = score(ego.alters[i]);
    if (s > best_score) {
      best_score = s;
      best = ego.alters[i].alter_id;
    }
  }
  return best;
}

std::vector<double> importances_of(const Humat& agent) {
  std::vector<double> out;
  out.reserve(agent.motive_states.size());
  for (const MotiveState& m : agent.motive_states) out.push_back(m.importance);
  return out;
}

void move_toward(Humat& receiver, const Humat& source, AltId subject, double w) {
  for (std::size_t i = 0; i < receiver.motive_states.size(); ++i) {
    double& s = receiver.motive_states[i].satisfaction[subject];
    s = convex_step(s, source.motive_states[i].satisfaction[subject], w);
  }
}

void refresh_beliefs(AlterRepresentation& rep, const Humat& alter, AltId subject) {
  for (std::size_t i = 0; i < alter.motive_states.size(); ++i) {
    rep.believed_satisfactions[i][subject] = alter.motive_states[i].satisfaction[subject];
  }
}

}  // namespace

double convex_step(double from, double to, double w) {
  const double v = (1.0 - w) * from + w * to;
  return std::clamp(v, std::min(from, to), std::max(from, to));
}

double similarity(const Humat& ego, const AlterRepresentation& rep) {
  return importance_similarity(ego, rep.believed_importances);
}

double persuasiveness(const Humat& ego, const AlterRepresentation& rep,
                      double alter_aspiration, const InfluenceParams& params) {
  return params.similarity_weight * similarity(ego, rep) +
         params.aspiration_weight * alter_aspiration;
}

double gullibility(const Humat& ego, const AlterRepresentation& rep,
                   const InfluenceParams& params) {
  return params.similarity_weight * similarity(ego, rep) +
         params.aspiration_weight * ego.aspiration;
}

AgentId select_inquiry_target(const Humat& ego, std::span<const Humat> agents,
                              const InfluenceParams& params) {
  return argmax_alter(ego, [&](const AlterRepresentation& rep) {
    return persuasiveness(ego, rep, agents[rep.alter_id].aspiration, params);
  });
}

AgentId select_signal_target(const Humat& ego, const InfluenceParams& params) {
  return argmax_alter(
      ego, [&](const AlterRepresentation& rep) { return gullibility(ego, rep, params); });
}

CommunicationEvent inquire(Humat& ego, const Humat& alter, AltId subject,
                           const InfluenceParams& params, std::uint64_t tick) {
  AlterRepresentation* rep = ego.find_alter(alter.agent_id);
  if (rep == nullptr) {
    throw NotNeighbor("agent " + std::to_string(alter.agent_id) + " is not a neighbor of " +
                      std::to_string(ego.agent_id));
  }
  const double p = persuasiveness(ego, *rep, alter.aspiration, params);
  move_toward(ego, alter, subject, params.learning_rate * p);
  refresh_beliefs(*rep, alter, subject);
  return {tick, ego.agent_id, alter.agent_id, EventKind::Inquire, subject};
}

CommunicationEvent signal(const Humat& ego, Humat& alter, AltId subject,
                          const InfluenceParams& params, std::uint64_t tick) {
  AlterRepresentation* rep = alter.find_alter(ego.agent_id);
  if (rep == nullptr) {
    throw NotNeighbor("agent " + std::to_string(alter.agent_id) + " is not a neighbor of " +
                      std::to_string(ego.agent_id));
  }
  const std::vector<double> ego_importances = importances_of(ego);
  const double q = params.similarity_weight * importance_similarity(alter, ego_importances) +
                   params.aspiration_weight * ego.aspiration;
  move_toward(alter, ego, subject, params.learning_rate * q);
  refresh_beliefs(*rep, ego, subject);
  return {tick, ego.agent_id, alter.agent_id, EventKind::Signal, subject};
}

Action act(const Humat& ego, std::span<const Humat> agents, const InfluenceParams& params) {
  if (ego.dilemma == DilemmaStatus::NoDilemma || ego.alters.empty()) return {};
  if (ego.dilemma == DilemmaStatus::SocialDilemma) {
    return {ActionKind::Signal, select_signal_target(ego, params)};
  }
  return {ActionKind::Inquire, select_inquiry_target(ego, agents, params)};
}

std::optional<CommunicationEvent> perform(const Action& action, AgentId ego_id,
                                          std::span<Humat> agents,
                                          const InfluenceParams& params,
                                          std::uint64_t tick) {
  Humat& ego = agents[ego_id];
  switch (action.kind) {
    case ActionKind::Nothing:
      return std::nullopt;
    case ActionKind::Inquire:
      return inquire(ego, agents[action.target], ego.current_choice, params, tick);
    case ActionKind::Signal:
      return signal(ego, agents[action.target], ego.current_choice, params, tick);
  }
  return std::nullopt;
}

}  // namespace humat
