#pragma once

#include <cstdint>
#include <functional>
#include <variant>
#include <vector>

#include "humat/communication.hpp"
#include "humat/rng.hpp"
#include "humat/social_network.hpp"
#include "humat/types.hpp"

namespace humat {

struct UniformRange {
  double lo = 0.0;
  double hi = 1.0;

  bool operator==(const UniformRange&) const = default;
};

/// Every importance, satisfaction and aspiration drawn independently from
/// its range. Draw order: agents by id; per agent, each motive's importance
/// followed by its satisfactions for each alternative; then aspiration.
struct UniformAgents {
  UniformRange importance{0.0, 1.0};
  UniformRange satisfaction{-1.0, 1.0};
  UniformRange aspiration{0.0, 1.0};

  bool operator==(const UniformAgents&) const = default;
};

struct AgentRow {
  std::vector<double> importances;                 // [motive]
  std::vector<std::vector<double>> satisfactions;  // [motive][alternative]
  double aspiration = 0.0;

  bool operator==(const AgentRow&) const = default;
};

/// Explicit per-agent values, one row per agent id.
struct TableAgents {
  std::vector<AgentRow> rows;

  bool operator==(const TableAgents&) const = default;
};

using AgentInit = std::variant<UniformAgents, TableAgents>;

enum class ActivationOrder { ByIdAscending, ShuffledEachTick };

std::string_view to_string(ActivationOrder order);
std::optional<ActivationOrder> parse_activation_order(std::string_view text);

struct ScenarioConfig {
  Scenario scenario;
  std::size_t population = 1;
  AgentInit agents = UniformAgents{};
  NetworkSpec network = net::Complete{1};  // node count must equal population
  BeliefInit beliefs = BeliefInit::Perfect;
  InfluenceParams influence;
  double epsilon = 0.0;
  std::uint64_t ticks = 0;
  std::uint64_t seed = 0;
  ActivationOrder activation_order = ActivationOrder::ByIdAscending;

  /// Throws InvalidConfig naming the offending field.
  void validate() const;
};

struct ModelState {
  std::uint64_t tick = 0;
  Scenario scenario;
  std::vector<Humat> agents;  // agents[i].agent_id == i
  SocialNetwork network;
  Rng schedule_rng;

  bool operator==(const ModelState&) const = default;
};

/// Checks every type invariant of a state (ranges, dimensions, id density,
/// alter sets matching the network). Throws ValidationFailure with the
/// field path of the first violation.
void validate_state(const ModelState& state);

/// Builds the tick-0 state. Fully determined by the config (including seed).
ModelState initialize(const ScenarioConfig& config);

using SyncObserver = std::function<void(const ModelState&)>;

/// Advances one tick in place and returns the tick's communication events.
/// Sub-phases: sync beliefs; refresh social satisfaction, dissonance and
/// dilemma; every agent acts in activation order with effects applied
/// immediately; sync again; refresh social satisfaction and dissonance;
/// every agent chooses.
/// `after_sync`, when set, sees the state right after the second sync.
std::vector<CommunicationEvent> step(ModelState& state, const ScenarioConfig& config,
                                     const SyncObserver& after_sync = {});

/// Recomputes social satisfaction for the current choice and all dissonances.
void refresh_agent(const Scenario& scenario, Humat& agent);

}  // namespace humat
