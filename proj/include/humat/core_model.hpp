#pragma once

// Single-agent attitude math. Every function here is pure.

#include "humat/types.hpp"

namespace humat {

struct ProsCons {
  double pros = 0.0;  // summed importance of motives the alternative satisfies
  double cons = 0.0;  // summed importance of motives it dissatisfies
};

/// Importance-weighted mean satisfaction of `alt`, in [-1, 1].
/// Throws ZeroImportance when every importance is 0.
double evaluation(const Humat& agent, AltId alt);

/// Partitions importance by the sign of each motive's satisfaction with
/// `alt`. Zero satisfaction counts as neither pro nor con.
ProsCons pros_cons(const Humat& agent, AltId alt);

/// 2*min(P,C)/(P+C); 0 when P+C is 0.
double dissonance_strength(const Humat& agent, AltId alt);

/// Argmax of evaluation. Ties keep current_choice when it is among the
/// maximizers, otherwise the lowest alt id wins.
AltId choose(const Humat& agent);

/// Maps the like-minded neighbor fraction onto the satisfaction scale.
double social_satisfaction(double like_minded_fraction);

/// Importance-weighted mean of Social-group satisfactions for `alt`
/// (0 if the Social importances sum to 0).
/// Throws NoSocialMotive if the scenario has no Social motive.
double social_need_level(const Scenario& scenario, const Humat& agent, AltId alt);

/// Requires agent.dissonance to be current for current_choice.
DilemmaStatus classify_dilemma(const Scenario& scenario, const Humat& agent,
                               double epsilon);

/// Writes `value` into every Social motive's satisfaction for the agent's
/// current choice.
void apply_social_satisfaction(const Scenario& scenario, Humat& agent, double value);

/// Recomputes agent.dissonance for every alternative.
void refresh_dissonance(Humat& agent);

}  // namespace humat
