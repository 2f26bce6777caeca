#pragma once

#include <cstdint>

#include "humat/engine.hpp"
#include "humat/trace.hpp"

namespace humat {

TraceHeader make_header(const ScenarioConfig& config);

/// Initializes, records tick 0, then steps config.ticks times recording
/// every tick. Returns the final state.
ModelState run(const ScenarioConfig& config, TraceSink& sink);

/// In-memory convenience wrapper.
RunTrace run(const ScenarioConfig& config);

/// Steps an existing state until `final_tick`, recording one record per tick
/// including the starting state (with no events). Does not call
/// sink.begin/end.
ModelState continue_run(ModelState state, const ScenarioConfig& config,
                        std::uint64_t final_tick, TraceSink& sink);

}  // namespace humat
