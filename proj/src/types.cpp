#include "humat/types.hpp"

#include <algorithm>
#include <utility>

namespace humat {

std::string_view to_string(MotiveGroup group) {
  switch (group) {
    case MotiveGroup::Experiential:
      return "experiential";
    case MotiveGroup::Social:
      return "social";
    case MotiveGroup::Value:
      return "value";
  }
  return "experiential";
}

std::optional<MotiveGroup> parse_motive_group(std::string_view text) {
  if (text == "experiential") return MotiveGroup::Experiential;
  if (text == "social") return MotiveGroup::Social;
  if (text == "value") return MotiveGroup::Value;
  return std::nullopt;
}

std::string_view to_string(DilemmaStatus status) {
  switch (status) {
    case DilemmaStatus::NoDilemma:
      return "none";
    case DilemmaStatus::SocialDilemma:
      return "social";
    case DilemmaStatus::NonSocialDilemma:
      return "nonsocial";
  }
  return "none";
}

std::optional<DilemmaStatus> parse_dilemma(std::string_view text) {
  if (text == "none") return DilemmaStatus::NoDilemma;
  if (text == "social") return DilemmaStatus::SocialDilemma;
  if (text == "nonsocial") return DilemmaStatus::NonSocialDilemma;
  return std::nullopt;
}

bool Scenario::has_social_motive() const {
  return std::any_of(motives.begin(), motives.end(), [](const Motive& m) {
    return m.group == MotiveGroup::Social;
  });
}

const AlterRepresentation* Humat::find_alter(AgentId id) const {
  auto it = std::lower_bound(
      alters.begin(), alters.end(), id,
      [](const AlterRepresentation& rep, AgentId key) { return rep.alter_id < key; });
  if (it == alters.end() || it->alter_id != id) return nullptr;
  return &*it;
}

AlterRepresentation* Humat::find_alter(AgentId id) {
  return const_cast<AlterRepresentation*>(std::as_const(*this).find_alter(id));
}

}  // namespace humat
