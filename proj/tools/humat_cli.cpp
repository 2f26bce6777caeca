// humat: batch front end for running, sweeping, snapshotting and diffing
// HUMAT simulations.
//
// Exit codes:
//   0  success (diff/replay: no discrepancies)
//   1  runtime or I/O failure, or a failed sweep run
//   2  invalid config or command-line usage
//   3  trace shape mismatch (different N, M, K or tick count)
//   4  discrepancies found

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <iostream>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "humat/canonical_json.hpp"
#include "humat/config.hpp"
#include "humat/diff.hpp"
#include "humat/errors.hpp"
#include "humat/run.hpp"
#include "humat/snapshot.hpp"
#include "humat/trace.hpp"

namespace fs = std::filesystem;
using namespace humat;

namespace {

enum Exit : int { kOk = 0, kFailure = 1, kUsage = 2, kShape = 3, kDiscrepancy = 4 };

std::vector<Override> parse_overrides(const std::vector<std::string>& raw) {
  std::vector<Override> out;
  for (const auto& r : raw) out.push_back(parse_override(r));
  return out;
}

struct RunSummary {
  std::uint64_t events = 0;
  TickMetrics final_metrics;
  std::string final_row;
};

// Writes header.json, records.jsonl, metrics.csv, config.json, edges.csv and
// final_snapshot.json into `out`.
RunSummary execute_run(const ScenarioConfig& config, const fs::path& out, bool flat_csv) {
  struct Tap : TraceSink {
    TraceSink& inner;
    RunSummary summary;
    explicit Tap(TraceSink& s) : inner(s) {}
    void begin(const TraceHeader& h) override { inner.begin(h); }
    void record(const TraceRecord& r) override {
      summary.events += r.events.size();
      summary.final_metrics = r.metrics;
      summary.final_row = metrics_csv_row(r);
      inner.record(r);
    }
    void end() override { inner.end(); }
  };

  TraceDirectoryWriter writer(out, flat_csv);
  Tap tap(writer);
  ModelState final_state = run(config, tap);
  const std::string digest = config_digest(config);
  write_file(out / "config.json", canonical_dump(config_to_json(config)) + "\n");
  write_file(out / "edges.csv", edges_csv(final_state.network));
  write_snapshot_file(out / "final_snapshot.json", Snapshot{digest, std::move(final_state)});
  return tap.summary;
}

std::string counts_text(const Scenario& sc, const TickMetrics& m) {
  std::string out;
  for (std::size_t a = 0; a < sc.alternatives.size(); ++a) {
    if (!out.empty()) out += ' ';
    out += sc.alternatives[a].label + "=" + std::to_string(m.choice_counts[a]);
  }
  return out;
}

int report_diff(const DiffReport& report, const std::string& json_out) {
  std::cout << report.to_text();
  if (!json_out.empty()) write_file(json_out, canonical_dump(report.to_json()) + "\n");
  if (report.has_shape_mismatch()) return kShape;
  return report.empty() ? kOk : kDiscrepancy;
}

Tolerances load_tolerances(const std::string& path, Tolerances fallback) {
  if (path.empty()) return fallback;
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw InvalidConfig(path, std::string("tolerance file is not valid JSON: ") + e.what());
  }
  return Tolerances::from_json(doc);
}

std::vector<std::string> split_values(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

int cmd_sweep(const std::string& config_path, const std::vector<std::string>& sets,
              const std::string& axis, const std::string& values_text, const fs::path& out,
              unsigned jobs) {
  const std::vector<std::string> values = split_values(values_text);
  if (values.empty()) {
    std::cerr << "sweep: --values must list at least one value\n";
    return kUsage;
  }
  std::string key;
  if (axis == "seed") {
    key = "seed";
  } else if (axis == "population") {
    key = "population";
  } else {
    std::cerr << "sweep: --axis must be seed or population\n";
    return kUsage;
  }
  const std::vector<Override> base = parse_overrides(sets);
  // Fail fast on a broken base config before spawning runs.
  const ScenarioConfig base_config = load_config(config_path, base);

  struct Outcome {
    std::string status = "pending";
    std::string row;
  };
  std::vector<Outcome> outcomes(values.size());
  std::atomic<std::size_t> next{0};
  std::mutex log_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < values.size(); i = next++) {
      try {
        auto overrides = base;
        overrides.push_back({key, values[i]});
        const ScenarioConfig cfg = load_config(config_path, overrides);
        RunSummary s = execute_run(cfg, out / (axis + "_" + values[i]), false);
        outcomes[i] = {"ok", s.final_row};
      } catch (const std::exception& e) {
        outcomes[i] = {std::string("failed: ") + e.what(), ""};
      }
      std::lock_guard<std::mutex> lock(log_mutex);
      std::cout << "sweep " << axis << "=" << values[i] << ": " << outcomes[i].status << '\n';
    }
  };
  std::vector<std::thread> pool;
  for (unsigned j = 0; j < std::max(1u, jobs); ++j) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  std::ostringstream csv;
  csv << axis << ",status," << metrics_csv_header(base_config.scenario) << '\n';
  bool ok = true;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const bool good = outcomes[i].status == "ok";
    ok = ok && good;
    csv << values[i] << ',' << (good ? "ok" : "failed") << ',' << outcomes[i].row << '\n';
  }
  write_file(out / "aggregate.csv", csv.str());

  std::cout << "status table:\n";
  for (std::size_t i = 0; i < values.size(); ++i) {
    std::cout << "  " << axis << "=" << values[i] << "  " << outcomes[i].status << '\n';
  }
  return ok ? kOk : kFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"HUMAT socio-cognitive simulation engine and replication harness"};
  app.require_subcommand(1);

  std::string config_path, out_dir, left, right, tolerances, json_out, snapshot_path, golden,
      trace_dir, axis, values;
  std::vector<std::string> sets;
  bool flat_csv = false;
  std::uint64_t tick = 0;
  unsigned jobs = 1;

  auto* run_cmd = app.add_subcommand("run", "Run a scenario and write its trace");
  run_cmd->add_option("--config", config_path, "Scenario file (YAML or JSON)")->required();
  run_cmd->add_option("--out", out_dir, "Output directory")->required();
  run_cmd->add_option("--set", sets, "Override key.path=value (repeatable)");
  run_cmd->add_flag("--trace-csv", flat_csv, "Also write flat trace.csv");

  auto* sweep_cmd = app.add_subcommand("sweep", "Run one scenario over several seeds or populations");
  sweep_cmd->add_option("--config", config_path, "Scenario file")->required();
  sweep_cmd->add_option("--axis", axis, "seed or population")->required();
  sweep_cmd->add_option("--values", values, "Comma-separated values")->required();
  sweep_cmd->add_option("--out", out_dir, "Output directory")->required();
  sweep_cmd->add_option("--jobs", jobs, "Concurrent runs");
  sweep_cmd->add_option("--set", sets, "Override key.path=value (repeatable)");

  auto* snap_cmd = app.add_subcommand("snapshot", "Export the full state at a tick of a trace");
  snap_cmd->add_option("--trace", trace_dir, "Trace directory written by run")->required();
  snap_cmd->add_option("--tick", tick, "Tick to export")->required();
  snap_cmd->add_option("--out", out_dir, "Snapshot file to write")->required();

  auto* diff_cmd = app.add_subcommand("diff", "Compare two traces tick by tick");
  diff_cmd->add_option("--left", left, "Trace directory")->required();
  diff_cmd->add_option("--right", right, "Trace directory")->required();
  diff_cmd->add_option("--tolerances", tolerances, "Tolerance JSON file");
  diff_cmd->add_option("--json-out", json_out, "Write the report as JSON");

  auto* replay_cmd = app.add_subcommand("replay", "Continue a snapshot and diff against a golden trace");
  replay_cmd->add_option("--snapshot", snapshot_path, "Snapshot file")->required();
  replay_cmd->add_option("--golden", golden, "Golden trace directory")->required();
  replay_cmd->add_option("--config", config_path, "Scenario file")->required();
  replay_cmd->add_option("--set", sets, "Override key.path=value (repeatable)");
  replay_cmd->add_option("--tolerances", tolerances, "Tolerance JSON file");
  replay_cmd->add_option("--json-out", json_out, "Write the report as JSON");

  auto* validate_cmd = app.add_subcommand("validate-config", "Check a scenario file");
  validate_cmd->add_option("--config", config_path, "Scenario file")->required();
  validate_cmd->add_option("--set", sets, "Override key.path=value (repeatable)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*run_cmd) {
      const ScenarioConfig config = load_config(config_path, parse_overrides(sets));
      RunSummary s = execute_run(config, out_dir, flat_csv);
      std::cout << "run: N=" << config.population << " T=" << config.ticks
                << " events=" << s.events << " final " << counts_text(config.scenario, s.final_metrics)
                << " mean_dissonance=" << format_real(s.final_metrics.mean_dissonance)
                << " digest=" << config_digest(config).substr(0, 12) << " -> " << out_dir << '\n';
      return kOk;
    }
    if (*sweep_cmd) return cmd_sweep(config_path, sets, axis, values, out_dir, jobs);
    if (*snap_cmd) {
      const ScenarioConfig config = load_config(fs::path(trace_dir) / "config.json");
      const RunTrace recorded = read_trace_directory(trace_dir);
      if (tick > config.ticks) {
        std::cerr << "snapshot: tick " << tick << " is beyond the trace's last tick "
                  << config.ticks << '\n';
        return kUsage;
      }
      ScenarioConfig partial = config;
      partial.ticks = tick;
      MemoryTraceSink sink;
      ModelState state = run(partial, sink);
      // The regenerated prefix must match what the trace recorded.
      RunTrace prefix = recorded;
      prefix.records.resize(std::min<std::size_t>(prefix.records.size(), tick + 1));
      DiffReport check = diff_traces(sink.trace(), prefix, Tolerances::same_engine());
      if (!check.empty()) {
        std::cerr << "snapshot: trace does not match its own config\n" << check.to_text();
        return kFailure;
      }
      write_snapshot_file(out_dir, Snapshot{config_digest(config), std::move(state)});
      std::cout << "snapshot: tick " << tick << " -> " << out_dir << '\n';
      return kOk;
    }
    if (*diff_cmd) {
      const RunTrace l = read_trace_directory(left);
      const RunTrace r = read_trace_directory(right);
      return report_diff(diff_traces(l, r, load_tolerances(tolerances, Tolerances::same_engine())),
                         json_out);
    }
    if (*replay_cmd) {
      const ScenarioConfig config = load_config(config_path, parse_overrides(sets));
      const Snapshot snap = read_snapshot_file(snapshot_path);
      const RunTrace g = read_trace_directory(golden);
      return report_diff(
          replay_check(snap, g, config, load_tolerances(tolerances, Tolerances::same_engine())),
          json_out);
    }
    if (*validate_cmd) {
      const ScenarioConfig config = load_config(config_path, parse_overrides(sets));
      std::cout << "config ok: N=" << config.population << " M=" << config.scenario.motive_count()
                << " K=" << config.scenario.alternative_count() << " T=" << config.ticks
                << " digest=" << config_digest(config) << '\n';
      return kOk;
    }
  } catch (const InvalidConfig& e) {
    std::cerr << "invalid config: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kUsage;
}
