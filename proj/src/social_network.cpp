#include "humat/social_network.hpp"

#include <algorithm>
#include <sstream>

#include "humat/errors.hpp"
#include "humat/rng.hpp"

namespace humat {

SocialNetwork::SocialNetwork(std::size_t agent_count, std::vector<Edge> edges)
    : agent_count_(agent_count), edges_(std::move(edges)) {
  for (Edge& e : edges_) {
    if (e.first == e.second) {
      throw InvalidSpec("self-loop at agent " + std::to_string(e.first));
    }
    if (e.first >= agent_count_ || e.second >= agent_count_) {
      throw InvalidSpec("edge (" + std::to_string(e.first) + "," +
                        std::to_string(e.second) + ") references an unknown agent");
    }
    if (e.first > e.second) std::swap(e.first, e.second);
  }
  std::sort(edges_.begin(), edges_.end());
  if (auto dup = std::adjacent_find(edges_.begin(), edges_.end()); dup != edges_.end()) {
    throw InvalidSpec("duplicate edge (" + std::to_string(dup->first) + "," +
                      std::to_string(dup->second) + ")");
  }

  std::vector<std::size_t> degree(agent_count_, 0);
  for (const Edge& e : edges_) {
    ++degree[e.first];
    ++degree[e.second];
  }
  offsets_.assign(agent_count_ + 1, 0);
  for (std::size_t i = 0; i < agent_count_; ++i) offsets_[i + 1] = offsets_[i] + degree[i];
  adjacency_.resize(offsets_.back());
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (const Edge& e : edges_) {
    adjacency_[cursor[e.first]++] = e.second;
    adjacency_[cursor[e.second]++] = e.first;
  }
  for (std::size_t i = 0; i < agent_count_; ++i) {
    std::sort(adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[i]),
              adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[i + 1]));
  }
}

std::span<const AgentId> SocialNetwork::neighbors(AgentId id) const {
  if (id >= agent_count_) throw UnknownAgent("agent " + std::to_string(id) + " not in network");
  return {adjacency_.data() + offsets_[id], offsets_[id + 1] - offsets_[id]};
}

bool SocialNetwork::has_edge(AgentId a, AgentId b) const {
  if (a >= agent_count_ || b >= agent_count_) return false;
  auto adj = neighbors(a);
  return std::binary_search(adj.begin(), adj.end(), b);
}

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void check_lattice(std::size_t n, std::size_t k, const char* name) {
  if (k % 2 != 0) throw InvalidSpec(std::string(name) + ": k must be even");
  if (n > 0 && k >= n) throw InvalidSpec(std::string(name) + ": k must be < N");
}

void check_probability(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidSpec(std::string(name) + " must lie in [0,1]");
}

std::vector<Edge> ring_edges(std::size_t n, std::size_t k) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 1; j <= k / 2; ++j) {
      edges.emplace_back(static_cast<AgentId>(i), static_cast<AgentId>((i + j) % n));
    }
  }
  return edges;
}

// Rewiring pass: for offset j = 1..k/2, then node i = 0..N-1, the lattice edge
// (i, i+j mod N) is replaced with probability beta by (i, u), u drawn
// uniformly by rejection among nodes that are neither i nor already linked
// to i. Nodes linked to everyone keep their edge.
std::vector<Edge> watts_strogatz_edges(std::size_t n, std::size_t k, double beta, Rng& rng) {
  std::vector<std::vector<AgentId>> adj(n);
  auto link = [&](AgentId a, AgentId b) {
    adj[a].insert(std::upper_bound(adj[a].begin(), adj[a].end(), b), b);
    adj[b].insert(std::upper_bound(adj[b].begin(), adj[b].end(), a), a);
  };
  auto unlink = [&](AgentId a, AgentId b) {
    adj[a].erase(std::lower_bound(adj[a].begin(), adj[a].end(), b));
    adj[b].erase(std::lower_bound(adj[b].begin(), adj[b].end(), a));
  };
  auto linked = [&](AgentId a, AgentId b) {
    return std::binary_search(adj[a].begin(), adj[a].end(), b);
  };
  for (const Edge& e : ring_edges(n, k)) link(e.first, e.second);

  for (std::size_t j = 1; j <= k / 2; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      const auto u = static_cast<AgentId>(i);
      const auto v = static_cast<AgentId>((i + j) % n);
      if (!(rng.uniform01() < beta)) continue;
      if (adj[u].size() + 1 >= n) continue;
      AgentId w = u;
      do {
        w = static_cast<AgentId>(rng.bounded(n));
      } while (w == u || linked(u, w));
      unlink(u, v);
      link(u, w);
    }
  }

  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (AgentId nb : adj[i]) {
      if (nb > i) edges.emplace_back(static_cast<AgentId>(i), nb);
    }
  }
  return edges;
}

}  // namespace

std::size_t node_count(const NetworkSpec& spec) {
  return std::visit([](const auto& s) { return s.n; }, spec);
}

NetworkSpec with_node_count(NetworkSpec spec, std::size_t n) {
  std::visit([n](auto& s) { s.n = n; }, spec);
  return spec;
}

std::string generator_name(const NetworkSpec& spec) {
  return std::visit(Overloaded{
                        [](const net::Complete&) { return std::string("complete"); },
                        [](const net::Ring&) { return std::string("ring"); },
                        [](const net::ErdosRenyi&) { return std::string("erdos_renyi"); },
                        [](const net::WattsStrogatz&) { return std::string("watts_strogatz"); },
                        [](const net::Explicit&) { return std::string("explicit"); },
                    },
                    spec);
}

SocialNetwork generate_network(const NetworkSpec& spec, std::uint64_t seed) {
  Rng rng(seed);
  return std::visit(
      Overloaded{
          [](const net::Complete& s) {
            std::vector<Edge> edges;
            for (std::size_t i = 0; i < s.n; ++i) {
              for (std::size_t j = i + 1; j < s.n; ++j) {
                edges.emplace_back(static_cast<AgentId>(i), static_cast<AgentId>(j));
              }
            }
            return SocialNetwork(s.n, std::move(edges));
          },
          [](const net::Ring& s) {
            check_lattice(s.n, s.k, "ring");
            return SocialNetwork(s.n, ring_edges(s.n, s.k));
          },
          [&rng](const net::ErdosRenyi& s) {
            check_probability(s.p, "erdos_renyi p");
            std::vector<Edge> edges;
            for (std::size_t i = 0; i < s.n; ++i) {
              for (std::size_t j = i + 1; j < s.n; ++j) {
                if (rng.uniform01() < s.p) {
                  edges.emplace_back(static_cast<AgentId>(i), static_cast<AgentId>(j));
                }
              }
            }
            return SocialNetwork(s.n, std::move(edges));
          },
          [&rng](const net::WattsStrogatz& s) {
            check_lattice(s.n, s.k, "watts_strogatz");
            check_probability(s.beta, "watts_strogatz beta");
            return SocialNetwork(s.n, watts_strogatz_edges(s.n, s.k, s.beta, rng));
          },
          [](const net::Explicit& s) { return SocialNetwork(s.n, s.edges); },
      },
      spec);
}

void init_alter_representations(const SocialNetwork& network, std::vector<Humat>& agents,
                                BeliefInit mode) {
  for (Humat& ego : agents) {
    ego.alters.clear();
    for (AgentId id : network.neighbors(ego.agent_id)) {
      const Humat& alter = agents[id];
      AlterRepresentation rep;
      rep.alter_id = id;
      rep.believed_choice = alter.current_choice;
      for (const MotiveState& m : alter.motive_states) {
        if (mode == BeliefInit::Perfect) {
          rep.believed_importances.push_back(m.importance);
          rep.believed_satisfactions.push_back(m.satisfaction);
        } else {
          rep.believed_importances.push_back(0.0);
          rep.believed_satisfactions.emplace_back(m.satisfaction.size(), 0.0);
        }
      }
      ego.alters.push_back(std::move(rep));
    }
  }
}

void sync_alter_choices(std::vector<Humat>& agents) {
  for (Humat& ego : agents) {
    for (AlterRepresentation& rep : ego.alters) {
      rep.believed_choice = agents[rep.alter_id].current_choice;
    }
  }
}

double like_minded_fraction(const Humat& ego) {
  if (ego.alters.empty()) return 1.0;
  std::size_t same = 0;
  for (const AlterRepresentation& rep : ego.alters) {
    if (rep.believed_choice == ego.current_choice) ++same;
  }
  return static_cast<double>(same) / static_cast<double>(ego.alters.size());
}

std::string edges_csv(const SocialNetwork& network) {
  std::ostringstream out;
  out << "source_id,target_id\n";
  for (const Edge& e : network.edges()) out << e.first << ',' << e.second << '\n';
  return out.str();
}

}  // namespace humat
