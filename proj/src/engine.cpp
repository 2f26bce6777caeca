#include "humat/engine.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <string>

#include "humat/core_model.hpp"
#include "humat/errors.hpp"

namespace humat {

std::string_view to_string(ActivationOrder order) {
  return order == ActivationOrder::ByIdAscending ? "by_id" : "shuffled";
}

std::optional<ActivationOrder> parse_activation_order(std::string_view text) {
  if (text == "by_id") return ActivationOrder::ByIdAscending;
  if (text == "shuffled") return ActivationOrder::ShuffledEachTick;
  return std::nullopt;
}

namespace {

bool within(double v, double lo, double hi) { return v >= lo && v <= hi; }

std::string idx(std::string_view base, std::size_t i) {
  return std::string(base) + "[" + std::to_string(i) + "]";
}

void check_range(const UniformRange& r, double lo, double hi, const std::string& path) {
  if (!within(r.lo, lo, hi) || !within(r.hi, lo, hi)) {
    throw InvalidConfig(path, "range must lie within [" + std::to_string(lo) + ", " +
                                  std::to_string(hi) + "]");
  }
  if (r.lo > r.hi) throw InvalidConfig(path, "lower bound exceeds upper bound");
}

void check_scenario_config(const Scenario& scenario) {
  if (scenario.motives.empty()) throw InvalidConfig("motives", "at least one motive is required");
  for (std::size_t i = 0; i < scenario.motives.size(); ++i) {
    if (scenario.motives[i].id != i) throw InvalidConfig(idx("motives", i) + ".id", "ids must be 0..M-1");
  }
  if (!scenario.has_social_motive()) {
    throw InvalidConfig("motives", "at least one motive must belong to the social group");
  }
  if (scenario.alternatives.size() < 2) {
    throw InvalidConfig("alternatives", "at least two alternatives are required");
  }
  for (std::size_t i = 0; i < scenario.alternatives.size(); ++i) {
    const Alternative& alt = scenario.alternatives[i];
    if (alt.id != i) throw InvalidConfig(idx("alternatives", i) + ".id", "ids must be 0..K-1");
    // Labels become CSV column names.
    const bool plain = !alt.label.empty() &&
                       std::all_of(alt.label.begin(), alt.label.end(), [](unsigned char c) {
                         return std::isalnum(c) || c == '_' || c == '-';
                       });
    if (!plain) {
      throw InvalidConfig(idx("alternatives", i), "label must be non-empty [A-Za-z0-9_-]");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (scenario.alternatives[j].label == alt.label) {
        throw InvalidConfig(idx("alternatives", i), "duplicate label '" + alt.label + "'");
      }
    }
  }
}

void check_network_config(const NetworkSpec& spec, std::size_t population) {
  if (node_count(spec) != population) {
    throw InvalidConfig("network", "node count must equal population");
  }
  auto lattice = [&](std::size_t k) {
    if (k % 2 != 0) throw InvalidConfig("network.k", "must be even");
    if (k >= population) throw InvalidConfig("network.k", "must be smaller than population");
  };
  if (const auto* ring = std::get_if<net::Ring>(&spec)) lattice(ring->k);
  if (const auto* er = std::get_if<net::ErdosRenyi>(&spec); er && !within(er->p, 0.0, 1.0)) {
    throw InvalidConfig("network.p", "must lie in [0,1]");
  }
  if (const auto* ws = std::get_if<net::WattsStrogatz>(&spec)) {
    lattice(ws->k);
    if (!within(ws->beta, 0.0, 1.0)) throw InvalidConfig("network.beta", "must lie in [0,1]");
  }
  if (const auto* ex = std::get_if<net::Explicit>(&spec)) {
    try {
      SocialNetwork check(ex->n, ex->edges);
    } catch (const InvalidSpec& e) {
      throw InvalidConfig("network.edges", e.what());
    }
  }
}

void check_table(const TableAgents& table, const ScenarioConfig& config) {
  const std::size_t m = config.scenario.motive_count();
  const std::size_t k = config.scenario.alternative_count();
  if (table.rows.size() != config.population) {
    throw InvalidConfig("agents.table", "row count must equal population");
  }
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const AgentRow& row = table.rows[r];
    const std::string base = idx("agents.table", r);
    if (row.importances.size() != m) {
      throw InvalidConfig(base + ".importances", "expected one entry per motive");
    }
    if (row.satisfactions.size() != m) {
      throw InvalidConfig(base + ".satisfactions", "expected one row per motive");
    }
    double total = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      if (!within(row.importances[i], 0.0, 1.0)) {
        throw InvalidConfig(idx(base + ".importances", i), "must lie in [0,1]");
      }
      total += row.importances[i];
      if (row.satisfactions[i].size() != k) {
        throw InvalidConfig(idx(base + ".satisfactions", i), "expected one entry per alternative");
      }
      for (std::size_t a = 0; a < k; ++a) {
        if (!within(row.satisfactions[i][a], -1.0, 1.0)) {
          throw InvalidConfig(idx(idx(base + ".satisfactions", i), a), "must lie in [-1,1]");
        }
      }
    }
    if (!(total > 0.0)) throw InvalidConfig(base + ".importances", "must not all be zero");
    if (!within(row.aspiration, 0.0, 1.0)) {
      throw InvalidConfig(base + ".aspiration", "must lie in [0,1]");
    }
  }
}

}  // namespace

void ScenarioConfig::validate() const {
  check_scenario_config(scenario);
  if (population < 1) throw InvalidConfig("population", "must be at least 1");
  if (const auto* uniform = std::get_if<UniformAgents>(&agents)) {
    check_range(uniform->importance, 0.0, 1.0, "agents.importance");
    check_range(uniform->satisfaction, -1.0, 1.0, "agents.satisfaction");
    check_range(uniform->aspiration, 0.0, 1.0, "agents.aspiration");
    if (uniform->importance.hi <= 0.0) {
      throw InvalidConfig("agents.importance", "upper bound must be positive");
    }
  } else {
    check_table(std::get<TableAgents>(agents), *this);
  }
  check_network_config(network, population);
  influence.validate();
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
    throw InvalidConfig("epsilon", "must be a finite non-negative number");
  }
}

void validate_state(const ModelState& state) {
  const Scenario& sc = state.scenario;
  const std::size_t m = sc.motive_count();
  const std::size_t k = sc.alternative_count();
  if (m == 0) throw ValidationFailure("scenario.motives", "at least one motive is required");
  for (std::size_t i = 0; i < m; ++i) {
    if (sc.motives[i].id != i) throw ValidationFailure(idx("scenario.motives", i) + ".id", "ids must be 0..M-1");
  }
  if (!sc.has_social_motive()) {
    throw ValidationFailure("scenario.motives", "at least one motive must belong to the social group");
  }
  if (k < 2) throw ValidationFailure("scenario.alternatives", "at least two alternatives are required");
  for (std::size_t a = 0; a < k; ++a) {
    if (sc.alternatives[a].id != a) {
      throw ValidationFailure(idx("scenario.alternatives", a) + ".id", "ids must be 0..K-1");
    }
  }
  if (state.network.agent_count() != state.agents.size()) {
    throw ValidationFailure("network.agent_count", "must equal the number of agents");
  }

  for (std::size_t n = 0; n < state.agents.size(); ++n) {
    const Humat& h = state.agents[n];
    const std::string base = idx("agents", n);
    if (h.agent_id != n) throw ValidationFailure(base + ".agent_id", "ids must be 0..N-1 in order");
    if (h.motive_states.size() != m) {
      throw ValidationFailure(base + ".motive_states", "expected one entry per motive");
    }
    for (std::size_t i = 0; i < m; ++i) {
      const MotiveState& ms = h.motive_states[i];
      const std::string mpath = idx(base + ".motive_states", i);
      if (!within(ms.importance, 0.0, 1.0)) {
        throw ValidationFailure(mpath + ".importance", "must lie in [0,1]");
      }
      if (ms.satisfaction.size() != k) {
        throw ValidationFailure(mpath + ".satisfaction", "expected one entry per alternative");
      }
      for (std::size_t a = 0; a < k; ++a) {
        if (!within(ms.satisfaction[a], -1.0, 1.0)) {
          throw ValidationFailure(idx(mpath + ".satisfaction", a), "must lie in [-1,1]");
        }
      }
    }
    if (h.current_choice >= k) {
      throw ValidationFailure(base + ".current_choice", "not a valid alternative id");
    }
    if (h.dissonance.size() != k) {
      throw ValidationFailure(base + ".dissonance", "expected one entry per alternative");
    }
    for (std::size_t a = 0; a < k; ++a) {
      if (!within(h.dissonance[a], 0.0, 1.0)) {
        throw ValidationFailure(idx(base + ".dissonance", a), "must lie in [0,1]");
      }
    }
    if (!within(h.aspiration, 0.0, 1.0)) {
      throw ValidationFailure(base + ".aspiration", "must lie in [0,1]");
    }

    const auto neighbors = state.network.neighbors(h.agent_id);
    if (h.alters.size() != neighbors.size()) {
      throw ValidationFailure(base + ".alters", "must cover exactly the agent's neighbors");
    }
    for (std::size_t j = 0; j < h.alters.size(); ++j) {
      const AlterRepresentation& rep = h.alters[j];
      const std::string rpath = idx(base + ".alters", j);
      if (rep.alter_id != neighbors[j]) {
        throw ValidationFailure(rpath + ".alter_id", "must match the sorted neighbor list");
      }
      if (rep.believed_choice >= k) {
        throw ValidationFailure(rpath + ".believed_choice", "not a valid alternative id");
      }
      if (rep.believed_importances.size() != m) {
        throw ValidationFailure(rpath + ".believed_importances", "expected one entry per motive");
      }
      if (rep.believed_satisfactions.size() != m) {
        throw ValidationFailure(rpath + ".believed_satisfactions", "expected one row per motive");
      }
      for (std::size_t i = 0; i < m; ++i) {
        if (!within(rep.believed_importances[i], 0.0, 1.0)) {
          throw ValidationFailure(idx(rpath + ".believed_importances", i), "must lie in [0,1]");
        }
        const auto& row = rep.believed_satisfactions[i];
        const std::string spath = idx(rpath + ".believed_satisfactions", i);
        if (row.size() != k) throw ValidationFailure(spath, "expected one entry per alternative");
        for (std::size_t a = 0; a < k; ++a) {
          if (!within(row[a], -1.0, 1.0)) {
            throw ValidationFailure(idx(spath, a), "must lie in [-1,1]");
          }
        }
      }
    }
  }
}

void refresh_agent(const Scenario& scenario, Humat& agent) {
  apply_social_satisfaction(scenario, agent, social_satisfaction(like_minded_fraction(agent)));
  refresh_dissonance(agent);
}

ModelState initialize(const ScenarioConfig& config) {
  config.validate();
  const Scenario& sc = config.scenario;
  const std::size_t m = sc.motive_count();
  const std::size_t k = sc.alternative_count();

  ModelState state;
  state.scenario = sc;
  state.network = generate_network(config.network, stream_seed(config.seed, RngStream::Network));
  state.schedule_rng = Rng::for_stream(config.seed, RngStream::Schedule);

  Rng init_rng = Rng::for_stream(config.seed, RngStream::Init);
  state.agents.resize(config.population);
  for (std::size_t n = 0; n < config.population; ++n) {
    Humat& h = state.agents[n];
    h.agent_id = static_cast<AgentId>(n);
    h.motive_states.resize(m);
    if (const auto* uniform = std::get_if<UniformAgents>(&config.agents)) {
      for (MotiveState& ms : h.motive_states) {
        ms.importance = init_rng.uniform(uniform->importance.lo, uniform->importance.hi);
        ms.satisfaction.resize(k);
        for (double& s : ms.satisfaction) {
          s = init_rng.uniform(uniform->satisfaction.lo, uniform->satisfaction.hi);
        }
      }
      h.aspiration = init_rng.uniform(uniform->aspiration.lo, uniform->aspiration.hi);
    } else {
      const AgentRow& row = std::get<TableAgents>(config.agents).rows[n];
      for (std::size_t i = 0; i < m; ++i) {
        h.motive_states[i].importance = row.importances[i];
        h.motive_states[i].satisfaction = row.satisfactions[i];
      }
      h.aspiration = row.aspiration;
    }
    h.current_choice = 0;
    h.current_choice = choose(h);
  }

  init_alter_representations(state.network, state.agents, config.beliefs);
  for (Humat& h : state.agents) {
    refresh_agent(sc, h);
    h.dilemma = classify_dilemma(sc, h, config.epsilon);
  }
  return state;
}

std::vector<CommunicationEvent> step(ModelState& state, const ScenarioConfig& config,
                                     const SyncObserver& after_sync) {
  const std::uint64_t next_tick = state.tick + 1;
  const Scenario& sc = state.scenario;

  sync_alter_choices(state.agents);
  for (Humat& h : state.agents) {
    refresh_agent(sc, h);
    h.dilemma = classify_dilemma(sc, h, config.epsilon);
  }

  std::vector<AgentId> order(state.agents.size());
  std::iota(order.begin(), order.end(), AgentId{0});
  if (config.activation_order == ActivationOrder::ShuffledEachTick) {
    state.schedule_rng.shuffle(std::span<AgentId>(order));
  }

  std::vector<CommunicationEvent> events;
  for (AgentId id : order) {
    const Action action = act(state.agents[id], state.agents, config.influence);
    if (auto event = perform(action, id, state.agents, config.influence, next_tick)) {
      events.push_back(*event);
    }
  }

  sync_alter_choices(state.agents);
  if (after_sync) after_sync(state);
  for (Humat& h : state.agents) refresh_agent(sc, h);
  for (Humat& h : state.agents) h.current_choice = choose(h);

  state.tick = next_tick;
  return events;
}

}  // namespace humat
