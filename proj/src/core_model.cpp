#include "humat/core_model.hpp"

#include <algorithm>

#include "humat/errors.hpp"

namespace humat {

double evaluation(const Humat& agent, AltId alt) {
  double weighted = 0.0;
  double total = 0.0;
  for (const MotiveState& m : agent.motive_states) {
    weighted += m.importance * m.satisfaction[alt];
    total += m.importance;
  }
  if (!(total > 0.0)) {
    throw ZeroImportance("agent " + std::to_string(agent.agent_id) +
                         " has zero total motive importance");
  }
  return weighted / total;
}

ProsCons pros_cons(const Humat& agent, AltId alt) {
  ProsCons pc;
  for (const MotiveState& m : agent.motive_states) {
    const double s = m.satisfaction[alt];
    if (s > 0.0) {
      pc.pros += m.importance;
    } else if (s < 0.0) {
      pc.cons += m.importance;
    }
  }
  return pc;
}

double dissonance_strength(const Humat& agent, AltId alt) {
  const ProsCons pc = pros_cons(agent, alt);
  const double total = pc.pros + pc.cons;
  if (total == 0.0) return 0.0;
  return 2.0 * std::min(pc.pros, pc.cons) / total;
}

AltId choose(const Humat& agent) {
  const std::size_t k = agent.motive_states.empty()
                            ? 0
                            : agent.motive_states.front().satisfaction.size();
  AltId best = 0;
  double best_value = 0.0;
  bool current_is_max = false;
  for (AltId a = 0; a < k; ++a) {
    const double v = evaluation(agent, a);
    if (a == 0 || v > best_value) {
      best = a;
      best_value = v;
      current_is_max = (a == agent.current_choice);
    } else if (v == best_value && a == agent.current_choice) {
      current_is_max = true;
    }
  }
  return current_is_max ? agent.current_choice : best;
}

double social_satisfaction(double like_minded_fraction) {
  return 2.0 * like_minded_fraction - 1.0;
}

double social_need_level(const Scenario& scenario, const Humat& agent, AltId alt) {
  double weighted = 0.0;
  double total = 0.0;
  bool any = false;
  for (const Motive& motive : scenario.motives) {
    if (motive.group != MotiveGroup::Social) continue;
    any = true;
    const MotiveState& m = agent.motive_states[motive.id];
    weighted += m.importance * m.satisfaction[alt];
    total += m.importance;
  }
  if (!any) throw NoSocialMotive("scenario defines no social motive");
  if (total == 0.0) return 0.0;
  return weighted / total;
}

DilemmaStatus classify_dilemma(const Scenario& scenario, const Humat& agent,
                               double epsilon) {
  const double level = social_need_level(scenario, agent, agent.current_choice);
  if (agent.dissonance[agent.current_choice] <= epsilon) {
    return DilemmaStatus::NoDilemma;
  }
  return level < 0.0 ? DilemmaStatus::SocialDilemma : DilemmaStatus::NonSocialDilemma;
}

void apply_social_satisfaction(const Scenario& scenario, Humat& agent, double value) {
  for (const Motive& motive : scenario.motives) {
    if (motive.group == MotiveGroup::Social) {
      agent.motive_states[motive.id].satisfaction[agent.current_choice] = value;
    }
  }
}

void refresh_dissonance(Humat& agent) {
  const std::size_t k = agent.motive_states.empty()
                            ? 0
                            : agent.motive_states.front().satisfaction.size();
  agent.dissonance.resize(k);
  for (AltId a = 0; a < k; ++a) agent.dissonance[a] = dissonance_strength(agent, a);
}

}  // namespace humat
