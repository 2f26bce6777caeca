#include "humat/trace.hpp"

#include <sstream>

#include "humat/canonical_json.hpp"
#include "humat/core_model.hpp"
#include "humat/errors.hpp"

namespace humat {

using nlohmann::json;

TickMetrics compute_metrics(const ModelState& state, std::span<const AgentTrace> agents,
                            std::span<const CommunicationEvent> events) {
  TickMetrics m;
  m.choice_counts.assign(state.scenario.alternative_count(), 0);
  double dissonance_sum = 0.0;
  for (const AgentTrace& a : agents) {
    ++m.choice_counts[a.choice];
    dissonance_sum += a.dissonance[a.choice];
    if (a.dilemma == DilemmaStatus::SocialDilemma) ++m.n_social_dilemma;
    if (a.dilemma == DilemmaStatus::NonSocialDilemma) ++m.n_nonsocial_dilemma;
  }
  m.mean_dissonance = agents.empty() ? 0.0 : dissonance_sum / static_cast<double>(agents.size());
  for (const CommunicationEvent& e : events) {
    if (e.kind == EventKind::Signal) ++m.n_signal;
    if (e.kind == EventKind::Inquire) ++m.n_inquire;
  }
  return m;
}

TraceRecord make_record(const ModelState& state, std::vector<CommunicationEvent> events) {
  TraceRecord record;
  record.tick = state.tick;
  record.agents.reserve(state.agents.size());
  const std::size_t k = state.scenario.alternative_count();
  for (const Humat& h : state.agents) {
    AgentTrace a;
    a.agent_id = h.agent_id;
    a.choice = h.current_choice;
    a.evaluations.resize(k);
    for (AltId alt = 0; alt < k; ++alt) a.evaluations[alt] = evaluation(h, alt);
    a.dissonance = h.dissonance;
    a.dilemma = h.dilemma;
    a.social_satisfaction = social_need_level(state.scenario, h, h.current_choice);
    record.agents.push_back(std::move(a));
  }
  record.events = std::move(events);
  record.metrics = compute_metrics(state, record.agents, record.events);
  return record;
}

namespace {

json reals(const std::vector<double>& values) {
  json out = json::array();
  for (double v : values) out.push_back(v);
  return out;
}

std::vector<double> reals_from(const json& doc) {
  std::vector<double> out;
  for (const auto& v : doc) {
    if (!v.is_number()) throw SchemaMismatch("expected a number");
    out.push_back(v.get<double>());
  }
  return out;
}

template <typename Fn>
auto parse_guarded(const char* what, Fn&& fn) {
  try {
    return fn();
  } catch (const json::exception& e) {
    throw SchemaMismatch(std::string("malformed ") + what + ": " + e.what());
  }
}

}  // namespace

json to_json(const Scenario& scenario) {
  json motives = json::array();
  for (const Motive& m : scenario.motives) {
    motives.push_back({{"id", m.id}, {"name", m.name}, {"group", std::string(to_string(m.group))}});
  }
  json alternatives = json::array();
  for (const Alternative& a : scenario.alternatives) {
    alternatives.push_back({{"id", a.id}, {"label", a.label}});
  }
  return {{"motives", motives}, {"alternatives", alternatives}};
}

Scenario scenario_from_json(const json& doc) {
  return parse_guarded("scenario", [&] {
    Scenario sc;
    for (const auto& m : doc.at("motives")) {
      auto group = parse_motive_group(m.at("group").get<std::string>());
      if (!group) throw SchemaMismatch("unknown motive group");
      sc.motives.push_back({m.at("id").get<MotiveId>(), m.at("name").get<std::string>(), *group});
    }
    for (const auto& a : doc.at("alternatives")) {
      sc.alternatives.push_back({a.at("id").get<AltId>(), a.at("label").get<std::string>()});
    }
    return sc;
  });
}

json to_json(const TraceRecord& record) {
  json agents = json::array();
  for (const AgentTrace& a : record.agents) {
    agents.push_back({{"id", a.agent_id},
                      {"choice", a.choice},
                      {"evaluations", reals(a.evaluations)},
                      {"dissonance", reals(a.dissonance)},
                      {"dilemma", std::string(to_string(a.dilemma))},
                      {"social_satisfaction", a.social_satisfaction}});
  }
  json events = json::array();
  for (const CommunicationEvent& e : record.events) {
    events.push_back({{"tick", e.tick},
                      {"source", e.source},
                      {"target", e.target},
                      {"kind", std::string(to_string(e.kind))},
                      {"subject", e.subject}});
  }
  const TickMetrics& m = record.metrics;
  json metrics = {{"choice_counts", m.choice_counts},
                  {"mean_dissonance", m.mean_dissonance},
                  {"n_social_dilemma", m.n_social_dilemma},
                  {"n_nonsocial_dilemma", m.n_nonsocial_dilemma},
                  {"n_signal", m.n_signal},
                  {"n_inquire", m.n_inquire}};
  return {{"tick", record.tick}, {"agents", agents}, {"events", events}, {"metrics", metrics}};
}

TraceRecord record_from_json(const json& doc) {
  return parse_guarded("trace record", [&] {
    TraceRecord r;
    r.tick = doc.at("tick").get<std::uint64_t>();
    for (const auto& a : doc.at("agents")) {
      AgentTrace t;
      t.agent_id = a.at("id").get<AgentId>();
      t.choice = a.at("choice").get<AltId>();
      t.evaluations = reals_from(a.at("evaluations"));
      t.dissonance = reals_from(a.at("dissonance"));
      auto dilemma = parse_dilemma(a.at("dilemma").get<std::string>());
      if (!dilemma) throw SchemaMismatch("unknown dilemma status");
      t.dilemma = *dilemma;
      t.social_satisfaction = a.at("social_satisfaction").get<double>();
      r.agents.push_back(std::move(t));
    }
    for (const auto& e : doc.at("events")) {
      auto kind = parse_event_kind(e.at("kind").get<std::string>());
      if (!kind) throw SchemaMismatch("unknown event kind");
      r.events.push_back({e.at("tick").get<std::uint64_t>(), e.at("source").get<AgentId>(),
                          e.at("target").get<AgentId>(), *kind, e.at("subject").get<AltId>()});
    }
    const json& m = doc.at("metrics");
    r.metrics.choice_counts = m.at("choice_counts").get<std::vector<std::uint64_t>>();
    r.metrics.mean_dissonance = m.at("mean_dissonance").get<double>();
    r.metrics.n_social_dilemma = m.at("n_social_dilemma").get<std::uint64_t>();
    r.metrics.n_nonsocial_dilemma = m.at("n_nonsocial_dilemma").get<std::uint64_t>();
    r.metrics.n_signal = m.at("n_signal").get<std::uint64_t>();
    r.metrics.n_inquire = m.at("n_inquire").get<std::uint64_t>();
    return r;
  });
}

json to_json(const TraceHeader& header) {
  json doc = to_json(header.scenario);
  doc["schema_version"] = header.schema_version;
  doc["config_digest"] = header.config_digest;
  doc["rng_algorithm"] = header.rng_algorithm;
  doc["seed"] = header.seed;
  doc["activation_order"] = std::string(to_string(header.activation_order));
  doc["agent_count"] = header.agent_count;
  doc["ticks"] = header.ticks;
  doc["metrics_csv_version"] = header.metrics_csv_version;
  return doc;
}

TraceHeader header_from_json(const json& doc) {
  return parse_guarded("trace header", [&] {
    TraceHeader h;
    h.schema_version = doc.at("schema_version").get<std::string>();
    if (h.schema_version != kTraceSchema) {
      throw SchemaMismatch("unsupported trace schema_version '" + h.schema_version + "'");
    }
    h.config_digest = doc.at("config_digest").get<std::string>();
    h.rng_algorithm = doc.at("rng_algorithm").get<std::string>();
    h.seed = doc.at("seed").get<std::uint64_t>();
    auto order = parse_activation_order(doc.at("activation_order").get<std::string>());
    if (!order) throw SchemaMismatch("unknown activation_order");
    h.activation_order = *order;
    h.scenario = scenario_from_json(doc);
    h.agent_count = doc.at("agent_count").get<std::size_t>();
    h.ticks = doc.at("ticks").get<std::uint64_t>();
    h.metrics_csv_version = doc.at("metrics_csv_version").get<int>();
    return h;
  });
}

std::string metrics_csv_header(const Scenario& scenario) {
  std::string out = "tick";
  for (const Alternative& a : scenario.alternatives) out += ",alt_" + a.label + "_count";
  out += ",mean_dissonance,n_social_dilemma,n_nonsocial_dilemma,n_signal,n_inquire";
  return out;
}

std::string metrics_csv_row(const TraceRecord& record) {
  const TickMetrics& m = record.metrics;
  std::string out = std::to_string(record.tick);
  for (auto c : m.choice_counts) out += "," + std::to_string(c);
  out += "," + format_real(m.mean_dissonance);
  out += "," + std::to_string(m.n_social_dilemma);
  out += "," + std::to_string(m.n_nonsocial_dilemma);
  out += "," + std::to_string(m.n_signal);
  out += "," + std::to_string(m.n_inquire);
  return out;
}

std::string canonical_bytes(const RunTrace& trace) {
  std::string out = canonical_dump(to_json(trace.header));
  out += '\n';
  for (const TraceRecord& r : trace.records) {
    out += canonical_dump(to_json(r));
    out += '\n';
  }
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoFailure("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoFailure("error reading " + path.string());
  return buf.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoFailure("cannot write " + path.string());
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw IoFailure("error writing " + path.string());
}

TraceDirectoryWriter::TraceDirectoryWriter(std::filesystem::path dir, bool flat_csv)
    : dir_(std::move(dir)), flat_csv_(flat_csv) {}

void TraceDirectoryWriter::begin(const TraceHeader& header) {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) throw IoFailure("cannot create " + dir_.string() + ": " + ec.message());
  write_file(dir_ / "header.json", canonical_dump(to_json(header)) + "\n");
  records_.open(dir_ / "records.jsonl", std::ios::binary | std::ios::trunc);
  metrics_.open(dir_ / "metrics.csv", std::ios::binary | std::ios::trunc);
  if (!records_ || !metrics_) throw IoFailure("cannot open trace files in " + dir_.string());
  metrics_ << metrics_csv_header(header.scenario) << '\n';
  if (flat_csv_) {
    flat_.open(dir_ / "trace.csv", std::ios::binary | std::ios::trunc);
    if (!flat_) throw IoFailure("cannot open trace.csv in " + dir_.string());
    flat_ << "tick,agent_id,field,value\n";
  }
}

void TraceDirectoryWriter::record(const TraceRecord& record) {
  records_ << canonical_dump(to_json(record)) << '\n';
  metrics_ << metrics_csv_row(record) << '\n';
  if (flat_csv_) {
    for (const AgentTrace& a : record.agents) {
      const std::string prefix = std::to_string(record.tick) + "," + std::to_string(a.agent_id) + ",";
      flat_ << prefix << "choice," << a.choice << '\n';
      flat_ << prefix << "dilemma," << to_string(a.dilemma) << '\n';
      for (std::size_t i = 0; i < a.dissonance.size(); ++i) {
        flat_ << prefix << "dissonance[" << i << "]," << format_real(a.dissonance[i]) << '\n';
      }
      for (std::size_t i = 0; i < a.evaluations.size(); ++i) {
        flat_ << prefix << "evaluations[" << i << "]," << format_real(a.evaluations[i]) << '\n';
      }
      flat_ << prefix << "social_satisfaction," << format_real(a.social_satisfaction) << '\n';
    }
  }
  if (!records_ || !metrics_ || (flat_csv_ && !flat_)) {
    throw IoFailure("error writing trace records in " + dir_.string());
  }
}

void TraceDirectoryWriter::end() {
  records_.close();
  metrics_.close();
  if (flat_csv_) flat_.close();
  if (records_.fail() || metrics_.fail()) throw IoFailure("error closing trace files");
}

RunTrace read_trace_directory(const std::filesystem::path& dir) {
  RunTrace trace;
  const std::string header_text = read_file(dir / "header.json");
  json header_doc = parse_guarded("header.json", [&] { return json::parse(header_text); });
  trace.header = header_from_json(header_doc);

  std::ifstream in(dir / "records.jsonl", std::ios::binary);
  if (!in) throw IoFailure("cannot open " + (dir / "records.jsonl").string());
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json doc = parse_guarded("records.jsonl", [&] { return json::parse(line); });
    trace.records.push_back(record_from_json(doc));
  }
  return trace;
}

}  // namespace humat
