#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "humat/types.hpp"

namespace humat {

using Edge = std::pair<AgentId, AgentId>;  // always first < second

/// Immutable undirected graph over agents 0..N-1. Neighbor lists are sorted
/// ascending; edges are stored in lexicographic order.
class SocialNetwork {
 public:
  SocialNetwork() = default;
  /// Throws InvalidSpec on self-loops, duplicates or out-of-range endpoints.
  SocialNetwork(std::size_t agent_count, std::vector<Edge> edges);

  std::size_t agent_count() const { return agent_count_; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }

  /// Throws UnknownAgent for ids outside the network.
  std::span<const AgentId> neighbors(AgentId id) const;
  bool has_edge(AgentId a, AgentId b) const;

  bool operator==(const SocialNetwork& other) const {
    return agent_count_ == other.agent_count_ && edges_ == other.edges_;
  }

 private:
  std::size_t agent_count_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_;
  std::vector<AgentId> adjacency_;
};

namespace net {

struct Complete {
  std::size_t n = 0;
};
/// Ring lattice: each node linked to its k nearest neighbors (k even).
struct Ring {
  std::size_t n = 0;
  std::size_t k = 0;
};
struct ErdosRenyi {
  std::size_t n = 0;
  double p = 0.0;
};
struct WattsStrogatz {
  std::size_t n = 0;
  std::size_t k = 0;
  double beta = 0.0;
};
/// A fixed edge list, e.g. imported from another implementation.
struct Explicit {
  std::size_t n = 0;
  std::vector<Edge> edges;
};

}  // namespace net

using NetworkSpec =
    std::variant<net::Complete, net::Ring, net::ErdosRenyi, net::WattsStrogatz, net::Explicit>;

std::size_t node_count(const NetworkSpec& spec);
NetworkSpec with_node_count(NetworkSpec spec, std::size_t n);
std::string generator_name(const NetworkSpec& spec);

/// Deterministic for fixed (spec, seed). Throws InvalidSpec on bad parameters.
SocialNetwork generate_network(const NetworkSpec& spec, std::uint64_t seed);

/// How believed satisfactions/importances start out.
enum class BeliefInit { Perfect, Uninformative };

/// Builds every agent's alter representations from its neighbors. Believed
/// choices are the alters' current choices.
void init_alter_representations(const SocialNetwork& network, std::vector<Humat>& agents,
                                BeliefInit mode);

/// Perfect information: every ego's believed_choice of each alter becomes the
/// alter's actual choice. Other beliefs are left alone.
void sync_alter_choices(std::vector<Humat>& agents);

/// Fraction of the ego's alters believed to share its current choice;
/// 1.0 for an agent without neighbors.
double like_minded_fraction(const Humat& ego);

/// Two-column CSV (source_id,target_id), one row per undirected edge, i<j.
std::string edges_csv(const SocialNetwork& network);

}  // namespace humat
