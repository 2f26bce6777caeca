#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "humat/communication.hpp"
#include "humat/engine.hpp"
#include "humat/types.hpp"

namespace humat {

inline constexpr std::string_view kTraceSchema = "humat-trace/1";
inline constexpr int kMetricsCsvVersion = 1;

/// Per-agent parameters observed at the end of a tick.
struct AgentTrace {
  AgentId agent_id = 0;
  AltId choice = 0;
  std::vector<double> evaluations;  // per alternative
  std::vector<double> dissonance;   // per alternative
  DilemmaStatus dilemma = DilemmaStatus::NoDilemma;
  double social_satisfaction = 0.0;  // weighted Social satisfaction of the choice

  bool operator==(const AgentTrace&) const = default;
};

struct TickMetrics {
  std::vector<std::uint64_t> choice_counts;  // per alternative
  double mean_dissonance = 0.0;              // over each agent's current choice
  std::uint64_t n_social_dilemma = 0;
  std::uint64_t n_nonsocial_dilemma = 0;
  std::uint64_t n_signal = 0;
  std::uint64_t n_inquire = 0;

  bool operator==(const TickMetrics&) const = default;
};

struct TraceRecord {
  std::uint64_t tick = 0;
  std::vector<AgentTrace> agents;
  std::vector<CommunicationEvent> events;
  TickMetrics metrics;

  bool operator==(const TraceRecord&) const = default;
};

struct TraceHeader {
  std::string schema_version{kTraceSchema};
  std::string config_digest;
  std::string rng_algorithm{kRngAlgorithm};
  std::uint64_t seed = 0;
  ActivationOrder activation_order = ActivationOrder::ByIdAscending;
  Scenario scenario;
  std::size_t agent_count = 0;
  std::uint64_t ticks = 0;
  int metrics_csv_version = kMetricsCsvVersion;

  bool operator==(const TraceHeader&) const = default;
};

struct RunTrace {
  TraceHeader header;
  std::vector<TraceRecord> records;

  bool operator==(const RunTrace&) const = default;
};

TickMetrics compute_metrics(const ModelState& state, std::span<const AgentTrace> agents,
                            std::span<const CommunicationEvent> events);
TraceRecord make_record(const ModelState& state, std::vector<CommunicationEvent> events);

nlohmann::json to_json(const TraceRecord& record);
nlohmann::json to_json(const TraceHeader& header);
nlohmann::json to_json(const Scenario& scenario);
/// Throw SchemaMismatch on malformed documents.
TraceRecord record_from_json(const nlohmann::json& doc);
TraceHeader header_from_json(const nlohmann::json& doc);
Scenario scenario_from_json(const nlohmann::json& doc);

/// `tick,alt_<label>_count...,mean_dissonance,n_social_dilemma,n_nonsocial_dilemma,n_signal,n_inquire`
std::string metrics_csv_header(const Scenario& scenario);
std::string metrics_csv_row(const TraceRecord& record);

/// Canonical header line followed by one canonical line per record.
std::string canonical_bytes(const RunTrace& trace);

class TraceSink {
 public:
  virtual ~TraceSink() = default;
  virtual void begin(const TraceHeader& header) = 0;
  virtual void record(const TraceRecord& record) = 0;
  virtual void end() {}
};

class MemoryTraceSink : public TraceSink {
 public:
  void begin(const TraceHeader& header) override { trace_.header = header; }
  void record(const TraceRecord& record) override { trace_.records.push_back(record); }

  const RunTrace& trace() const { return trace_; }
  RunTrace take() { return std::move(trace_); }

 private:
  RunTrace trace_;
};

/// Streams a run into a trace directory:
///   header.json     trace header
///   records.jsonl   one canonical record per line
///   metrics.csv     per-tick metrics
///   trace.csv       flat (tick,agent_id,field,value) rows, when enabled
class TraceDirectoryWriter : public TraceSink {
 public:
  explicit TraceDirectoryWriter(std::filesystem::path dir, bool flat_csv = false);

  void begin(const TraceHeader& header) override;
  void record(const TraceRecord& record) override;
  void end() override;

 private:
  std::filesystem::path dir_;
  bool flat_csv_;
  std::ofstream records_;
  std::ofstream metrics_;
  std::ofstream flat_;
};

/// Reads header.json and records.jsonl. Throws IoFailure / SchemaMismatch.
RunTrace read_trace_directory(const std::filesystem::path& dir);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace humat
