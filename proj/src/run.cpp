#include "humat/run.hpp"

#include "humat/config.hpp"

namespace humat {

TraceHeader make_header(const ScenarioConfig& config) {
  TraceHeader h;
  h.config_digest = config_digest(config);
  h.seed = config.seed;
  h.activation_order = config.activation_order;
  h.scenario = config.scenario;
  h.agent_count = config.population;
  h.ticks = config.ticks;
  return h;
}

ModelState continue_run(ModelState state, const ScenarioConfig& config,
                        std::uint64_t final_tick, TraceSink& sink) {
  sink.record(make_record(state, {}));
  while (state.tick < final_tick) {
    auto events = step(state, config);
    sink.record(make_record(state, std::move(events)));
  }
  return state;
}

ModelState run(const ScenarioConfig& config, TraceSink& sink) {
  ModelState state = initialize(config);
  sink.begin(make_header(config));
  state = continue_run(std::move(state), config, config.ticks, sink);
  sink.end();
  return state;
}

RunTrace run(const ScenarioConfig& config) {
  MemoryTraceSink sink;
  run(config, sink);
  return sink.take();
}

}  // namespace humat
