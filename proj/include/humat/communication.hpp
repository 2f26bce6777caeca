#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

#include "humat/types.hpp"

namespace humat {

struct InfluenceParams {
  double similarity_weight = 0.5;
  double aspiration_weight = 0.5;
  double learning_rate = 0.5;  // lambda

  /// Throws InvalidConfig (field path under `influence`) when weights are
  /// outside [0,1], do not sum to 1, or lambda is outside [0,1].
  void validate() const;

  bool operator==(const InfluenceParams&) const = default;
};

enum class EventKind { Signal, Inquire };

std::string_view to_string(EventKind kind);
std::optional<EventKind> parse_event_kind(std::string_view text);

/// One activated link: `source` talked to `target` about alternative `subject`.
struct CommunicationEvent {
  std::uint64_t tick = 0;
  AgentId source = 0;
  AgentId target = 0;
  EventKind kind = EventKind::Signal;
  AltId subject = 0;

  bool operator==(const CommunicationEvent&) const = default;
};

/// 1 - (L1 distance between the importance vectors) / M.
double similarity(const Humat& ego, const AlterRepresentation& rep);

/// How persuasive the alter looks to ego.
double persuasiveness(const Humat& ego, const AlterRepresentation& rep,
                      double alter_aspiration, const InfluenceParams& params);

/// How susceptible ego believes the alter is to ego's message.
double gullibility(const Humat& ego, const AlterRepresentation& rep,
                   const InfluenceParams& params);

/// Most persuasive alter, lowest id on ties. Aspirations are read from
/// `agents` (indexed by id); everything else comes from ego's
/// representations. Throws NoNeighbors.
AgentId select_inquiry_target(const Humat& ego, std::span<const Humat> agents,
                              const InfluenceParams& params);

/// Most gullible alter, lowest id on ties. Throws NoNeighbors.
AgentId select_signal_target(const Humat& ego, const InfluenceParams& params);

/// Ego moves its satisfactions for `subject` toward the alter's by
/// lambda*p and refreshes its beliefs about the alter's satisfactions for
/// `subject`. Throws NotNeighbor.
CommunicationEvent inquire(Humat& ego, const Humat& alter, AltId subject,
                           const InfluenceParams& params, std::uint64_t tick);

/// The alter moves its satisfactions for `subject` toward ego's by lambda*q,
/// q computed from true states, and refreshes its beliefs about ego.
/// Throws NotNeighbor.
CommunicationEvent signal(const Humat& ego, Humat& alter, AltId subject,
                          const InfluenceParams& params, std::uint64_t tick);

/// (1-w)*from + w*to, clamped to the segment between the two.
double convex_step(double from, double to, double w);

enum class ActionKind { Nothing, Signal, Inquire };

struct Action {
  ActionKind kind = ActionKind::Nothing;
  AgentId target = 0;

  bool operator==(const Action&) const = default;
};

/// The signal-or-inquire decision: no dilemma does nothing, a non-social
/// dilemma inquires, a social dilemma signals. Agents without neighbors do
/// nothing.
Action act(const Humat& ego, std::span<const Humat> agents, const InfluenceParams& params);

/// Applies `action` taken by agents[ego_id] about its current choice.
/// Returns the event, or nothing for ActionKind::Nothing.
std::optional<CommunicationEvent> perform(const Action& action, AgentId ego_id,
                                          std::span<Humat> agents,
                                          const InfluenceParams& params,
                                          std::uint64_t tick);

}  // namespace humat
