#pragma once

// Hand-rolled generators for property tests. They use std::mt19937_64 so the
// corpus is independent of the library's own RNG.

#include <random>
#include <vector>

#include "humat/engine.hpp"
#include "humat/types.hpp"

namespace humat::testing {

inline Scenario make_scenario(std::size_t motives, std::size_t alternatives,
                              std::size_t social_index = 1) {
  Scenario sc;
  for (std::size_t i = 0; i < motives; ++i) {
    MotiveGroup g = i == social_index % motives ? MotiveGroup::Social
                    : i % 2 == 0                ? MotiveGroup::Experiential
                                                : MotiveGroup::Value;
    sc.motives.push_back({static_cast<MotiveId>(i), "m" + std::to_string(i), g});
  }
  for (std::size_t a = 0; a < alternatives; ++a) {
    sc.alternatives.push_back({static_cast<AltId>(a), std::string(1, static_cast<char>('A' + a))});
  }
  return sc;
}

/// Agent with the given importances and [motive][alternative] satisfactions.
inline Humat make_agent(std::vector<double> importances,
                        std::vector<std::vector<double>> satisfactions, AltId choice = 0,
                        AgentId id = 0) {
  Humat h;
  h.agent_id = id;
  for (std::size_t i = 0; i < importances.size(); ++i) {
    h.motive_states.push_back({importances[i], satisfactions[i]});
  }
  h.current_choice = choice;
  h.dissonance.assign(satisfactions.empty() ? 0 : satisfactions.front().size(), 0.0);
  return h;
}

inline Humat random_agent(std::mt19937_64& gen, std::size_t m, std::size_t k) {
  std::uniform_real_distribution<double> imp(0.01, 1.0);
  std::uniform_real_distribution<double> sat(-1.0, 1.0);
  std::vector<double> importances(m);
  std::vector<std::vector<double>> sats(m, std::vector<double>(k));
  for (std::size_t i = 0; i < m; ++i) {
    importances[i] = imp(gen);
    for (auto& s : sats[i]) s = sat(gen);
  }
  return make_agent(importances, sats, static_cast<AltId>(gen() % k));
}

/// Small random scenario configs covering every generator, both activation
/// orders, both belief modes, uniform and table agents.
inline ScenarioConfig random_config(std::mt19937_64& gen, std::size_t max_n = 5,
                                    std::uint64_t max_t = 10) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  ScenarioConfig cfg;
  const std::size_t m = 1 + gen() % 4;
  const std::size_t k = 2 + gen() % 2;
  cfg.scenario = make_scenario(m, k, gen() % m);
  cfg.population = 1 + gen() % max_n;
  const std::size_t n = cfg.population;
  switch (gen() % 5) {
    case 0:
      cfg.network = net::Complete{n};
      break;
    case 1:
      cfg.network = net::Ring{n, n > 2 ? std::size_t{2} : std::size_t{0}};
      break;
    case 2:
      cfg.network = net::ErdosRenyi{n, unit(gen)};
      break;
    case 3:
      cfg.network = net::WattsStrogatz{n, std::size_t{n > 4 ? 4u : (n > 2 ? 2u : 0u)}, unit(gen)};
      break;
    default: {
      net::Explicit ex{n, {}};
      for (AgentId i = 0; i < n; ++i) {
        for (AgentId j = i + 1; j < n; ++j) {
          if (gen() % 2) ex.edges.emplace_back(i, j);
        }
      }
      cfg.network = ex;
    }
  }
  if (gen() % 3 == 0) {
    TableAgents table;
    std::uniform_real_distribution<double> sat(-1.0, 1.0);
    for (std::size_t r = 0; r < n; ++r) {
      AgentRow row;
      for (std::size_t i = 0; i < m; ++i) {
        row.importances.push_back(0.05 + 0.95 * unit(gen));
        std::vector<double> s(k);
        for (auto& v : s) v = sat(gen);
        row.satisfactions.push_back(s);
      }
      row.aspiration = unit(gen);
      table.rows.push_back(row);
    }
    cfg.agents = table;
  } else {
    cfg.agents = UniformAgents{{0.05, 1.0}, {-1.0, 1.0}, {0.0, 1.0}};
  }
  cfg.beliefs = gen() % 4 == 0 ? BeliefInit::Uninformative : BeliefInit::Perfect;
  const double sw = unit(gen);
  cfg.influence = {sw, 1.0 - sw, unit(gen)};
  cfg.epsilon = gen() % 3 == 0 ? 0.2 * unit(gen) : 0.0;
  cfg.ticks = gen() % (max_t + 1);
  cfg.seed = gen();
  cfg.activation_order =
      gen() % 2 ? ActivationOrder::ShuffledEachTick : ActivationOrder::ByIdAscending;
  return cfg;
}

/// Table-agent config in which every agent's satisfactions share one sign per
/// alternative. Alternative `positive` is the only positively valued one, so
/// every agent picks it and is surrounded by like-minded alters.
inline ScenarioConfig sign_consistent_config(std::mt19937_64& gen, std::size_t n,
                                             std::uint64_t ticks) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  ScenarioConfig cfg;
  const std::size_t m = 1 + gen() % 4;
  const std::size_t k = 2 + gen() % 3;
  const std::size_t positive = gen() % k;
  cfg.scenario = make_scenario(m, k, gen() % m);
  cfg.population = n;
  cfg.network = n > 4 ? NetworkSpec(net::WattsStrogatz{n, 4, unit(gen)})
                      : NetworkSpec(net::Complete{n});
  TableAgents table;
  for (std::size_t r = 0; r < n; ++r) {
    AgentRow row;
    for (std::size_t i = 0; i < m; ++i) {
      row.importances.push_back(0.05 + 0.95 * unit(gen));
      std::vector<double> s(k);
      for (std::size_t a = 0; a < k; ++a) {
        const double mag = 0.01 + 0.99 * unit(gen);
        s[a] = a == positive ? mag : -mag;
      }
      row.satisfactions.push_back(s);
    }
    row.aspiration = unit(gen);
    table.rows.push_back(row);
  }
  cfg.agents = table;
  const double sw = unit(gen);
  cfg.influence = {sw, 1.0 - sw, unit(gen)};
  cfg.ticks = ticks;
  cfg.seed = gen();
  cfg.activation_order =
      gen() % 2 ? ActivationOrder::ShuffledEachTick : ActivationOrder::ByIdAscending;
  return cfg;
}

}  // namespace humat::testing
