#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace humat {

using AgentId = std::uint32_t;
using AltId = std::uint32_t;
using MotiveId = std::uint32_t;

enum class MotiveGroup { Experiential, Social, Value };

std::string_view to_string(MotiveGroup group);
std::optional<MotiveGroup> parse_motive_group(std::string_view text);

struct Motive {
  MotiveId id = 0;
  std::string name;
  MotiveGroup group = MotiveGroup::Experiential;

  bool operator==(const Motive&) const = default;
};

struct Alternative {
  AltId id = 0;
  std::string label;

  bool operator==(const Alternative&) const = default;
};

/// The fixed dimensions of a scenario: motives (ids 0..M-1) and
/// alternatives (ids 0..K-1).
struct Scenario {
  std::vector<Motive> motives;
  std::vector<Alternative> alternatives;

  std::size_t motive_count() const { return motives.size(); }
  std::size_t alternative_count() const { return alternatives.size(); }
  bool has_social_motive() const;

  bool operator==(const Scenario&) const = default;
};

/// Importance of one motive and how well each alternative satisfies it.
struct MotiveState {
  double importance = 0.0;            // [0, 1]
  std::vector<double> satisfaction;   // one entry per alternative, [-1, 1]

  bool operator==(const MotiveState&) const = default;
};

enum class DilemmaStatus { NoDilemma, SocialDilemma, NonSocialDilemma };

std::string_view to_string(DilemmaStatus status);
std::optional<DilemmaStatus> parse_dilemma(std::string_view text);

/// Ego's beliefs about one linked alter.
struct AlterRepresentation {
  AgentId alter_id = 0;
  AltId believed_choice = 0;
  // [motive][alternative]
  std::vector<std::vector<double>> believed_satisfactions;
  std::vector<double> believed_importances;

  bool operator==(const AlterRepresentation&) const = default;
};

struct Humat {
  AgentId agent_id = 0;
  std::vector<MotiveState> motive_states;  // indexed by motive id
  AltId current_choice = 0;
  std::vector<double> dissonance;  // per alternative, [0, 1]
  DilemmaStatus dilemma = DilemmaStatus::NoDilemma;
  double aspiration = 0.0;
  // Sorted by alter_id; exactly the agent's neighbors.
  std::vector<AlterRepresentation> alters;

  const AlterRepresentation* find_alter(AgentId id) const;
  AlterRepresentation* find_alter(AgentId id);

  bool operator==(const Humat&) const = default;
};

}  // namespace humat
