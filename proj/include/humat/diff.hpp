#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "humat/engine.hpp"
#include "humat/snapshot.hpp"
#include "humat/trace.hpp"

namespace humat {

/// Absolute tolerances for real-valued fields, keyed by field name without
/// indices: `evaluations`, `dissonance`, `social_satisfaction`,
/// `mean_dissonance`. Integer and enum fields always compare exactly.
struct Tolerances {
  double default_real = 0.0;
  std::map<std::string, double> fields;

  double for_field(const std::string& name) const;

  static Tolerances same_engine() { return {}; }
  static Tolerances cross_implementation() { return {1e-9, {}}; }
  /// `{"default": 1e-9, "fields": {"evaluations": 1e-6}}`; throws InvalidConfig.
  static Tolerances from_json(const nlohmann::json& doc);
};

struct Discrepancy {
  std::uint64_t tick = 0;
  std::optional<AgentId> agent_id;  // empty for tick-level fields
  std::string field;                // e.g. `evaluations[1]`, `metrics.n_signal`, `events[0]`
  std::string left;
  std::string right;
  std::optional<double> abs_diff;  // reals only

  bool operator==(const Discrepancy&) const = default;
};

struct ShapeMismatch {
  std::string dimension;  // N, M, K, T or start_tick
  std::string left;
  std::string right;

  bool operator==(const ShapeMismatch&) const = default;
};

struct DiffReport {
  std::vector<ShapeMismatch> shape_mismatches;
  std::vector<Discrepancy> discrepancies;  // ordered by (tick, agent_id, field)
  std::size_t ticks_compared = 0;

  bool empty() const { return shape_mismatches.empty() && discrepancies.empty(); }
  bool has_shape_mismatch() const { return !shape_mismatches.empty(); }
  std::optional<std::uint64_t> first_divergence_tick() const;

  std::string to_text() const;
  nlohmann::json to_json() const;
};

/// Compares every agent parameter, event and metric at every tick. Traces
/// whose dimensions differ yield only shape mismatches.
DiffReport diff_traces(const RunTrace& left, const RunTrace& right, const Tolerances& tol);

/// Imports `snapshot`, steps it to the golden trace's last tick and diffs the
/// result against the golden records from the snapshot tick onward. The
/// snapshot-tick record is compared without its events (they happened before
/// the snapshot was taken). Throws Error if the snapshot tick is outside the
/// golden trace.
DiffReport replay_check(const Snapshot& snapshot, const RunTrace& golden,
                        const ScenarioConfig& config, const Tolerances& tol);

}  // namespace humat
