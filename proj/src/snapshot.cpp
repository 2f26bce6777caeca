#include "humat/snapshot.hpp"

#include <cstdio>

#include "humat/canonical_json.hpp"
#include "humat/errors.hpp"
#include "humat/trace.hpp"

namespace humat {

using nlohmann::json;

namespace {

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::uint64_t parse_hex64(const std::string& text) {
  if (text.size() != 16) throw SchemaMismatch("rng_state words must be 16 hex digits");
  std::uint64_t v = 0;
  for (char c : text) {
    v <<= 4;
    if (c >= '0' && c <= '9') {
      v |= static_cast<std::uint64_t>(c - '0');
    } else if (c >= 'a' && c <= 'f') {
      v |= static_cast<std::uint64_t>(c - 'a' + 10);
    } else {
      throw SchemaMismatch("rng_state words must be lowercase hex");
    }
  }
  return v;
}

json agent_to_json(const Humat& h) {
  json motives = json::array();
  for (const MotiveState& m : h.motive_states) {
    motives.push_back({{"importance", m.importance}, {"satisfaction", m.satisfaction}});
  }
  json alters = json::array();
  for (const AlterRepresentation& rep : h.alters) {
    alters.push_back({{"alter_id", rep.alter_id},
                      {"believed_choice", rep.believed_choice},
                      {"believed_importances", rep.believed_importances},
                      {"believed_satisfactions", rep.believed_satisfactions}});
  }
  return {{"agent_id", h.agent_id},
          {"aspiration", h.aspiration},
          {"current_choice", h.current_choice},
          {"dilemma", std::string(to_string(h.dilemma))},
          {"dissonance", h.dissonance},
          {"motive_states", motives},
          {"alters", alters}};
}

std::vector<double> numbers(const json& doc) {
  if (!doc.is_array()) throw SchemaMismatch("expected an array of numbers");
  std::vector<double> out;
  out.reserve(doc.size());
  for (const auto& v : doc) {
    if (!v.is_number()) throw SchemaMismatch("expected a number");
    out.push_back(v.get<double>());
  }
  return out;
}

Humat agent_from_json(const json& doc) {
  Humat h;
  h.agent_id = doc.at("agent_id").get<AgentId>();
  h.aspiration = doc.at("aspiration").get<double>();
  h.current_choice = doc.at("current_choice").get<AltId>();
  auto dilemma = parse_dilemma(doc.at("dilemma").get<std::string>());
  if (!dilemma) throw SchemaMismatch("unknown dilemma status");
  h.dilemma = *dilemma;
  h.dissonance = numbers(doc.at("dissonance"));
  for (const auto& m : doc.at("motive_states")) {
    h.motive_states.push_back({m.at("importance").get<double>(), numbers(m.at("satisfaction"))});
  }
  for (const auto& r : doc.at("alters")) {
    AlterRepresentation rep;
    rep.alter_id = r.at("alter_id").get<AgentId>();
    rep.believed_choice = r.at("believed_choice").get<AltId>();
    rep.believed_importances = numbers(r.at("believed_importances"));
    for (const auto& row : r.at("believed_satisfactions")) {
      rep.believed_satisfactions.push_back(numbers(row));
    }
    h.alters.push_back(std::move(rep));
  }
  return h;
}

}  // namespace

std::string export_snapshot(const Snapshot& snapshot) {
  const ModelState& st = snapshot.state;
  json agents = json::array();
  for (const Humat& h : st.agents) agents.push_back(agent_to_json(h));
  json edges = json::array();
  for (const Edge& e : st.network.edges()) edges.push_back({e.first, e.second});
  json rng_state = json::array();
  for (std::uint64_t w : st.schedule_rng.state()) rng_state.push_back(hex64(w));

  json doc = {{"schema_version", std::string(kSnapshotSchema)},
              {"config_digest", snapshot.config_digest},
              {"tick", st.tick},
              {"rng_algorithm", std::string(kRngAlgorithm)},
              {"rng_state", rng_state},
              {"scenario", to_json(st.scenario)},
              {"network", {{"agent_count", st.network.agent_count()}, {"edges", edges}}},
              {"agents", agents}};
  return canonical_dump(doc) + "\n";
}

Snapshot import_snapshot(std::string_view bytes) {
  json doc;
  try {
    doc = json::parse(bytes);
  } catch (const json::exception& e) {
    throw SchemaMismatch(std::string("snapshot is not valid JSON: ") + e.what());
  }

  Snapshot snap;
  try {
    if (!doc.is_object()) throw SchemaMismatch("snapshot must be a JSON object");
    const std::string version = doc.at("schema_version").get<std::string>();
    if (version != kSnapshotSchema) {
      throw SchemaMismatch("unsupported snapshot schema_version '" + version + "'");
    }
    const std::string rng_algorithm = doc.at("rng_algorithm").get<std::string>();
    if (rng_algorithm != kRngAlgorithm) {
      throw SchemaMismatch("unsupported rng_algorithm '" + rng_algorithm + "'");
    }
    snap.config_digest = doc.at("config_digest").get<std::string>();

    ModelState& st = snap.state;
    st.tick = doc.at("tick").get<std::uint64_t>();
    const json& words = doc.at("rng_state");
    if (!words.is_array() || words.size() != 4) throw SchemaMismatch("rng_state must hold 4 words");
    Rng::State rs{};
    for (std::size_t i = 0; i < 4; ++i) rs[i] = parse_hex64(words[i].get<std::string>());
    st.schedule_rng = Rng::from_state(rs);
    st.scenario = scenario_from_json(doc.at("scenario"));

    const json& net_doc = doc.at("network");
    std::vector<Edge> edges;
    for (const auto& e : net_doc.at("edges")) {
      if (!e.is_array() || e.size() != 2) throw SchemaMismatch("edges must be [i, j] pairs");
      edges.emplace_back(e[0].get<AgentId>(), e[1].get<AgentId>());
    }
    try {
      st.network = SocialNetwork(net_doc.at("agent_count").get<std::size_t>(), std::move(edges));
    } catch (const InvalidSpec& e) {
      throw ValidationFailure("network.edges", e.what());
    }
    for (const auto& a : doc.at("agents")) st.agents.push_back(agent_from_json(a));
  } catch (const json::exception& e) {
    throw SchemaMismatch(std::string("malformed snapshot: ") + e.what());
  }

  validate_state(snap.state);
  return snap;
}

void write_snapshot_file(const std::filesystem::path& path, const Snapshot& snapshot) {
  write_file(path, export_snapshot(snapshot));
}

Snapshot read_snapshot_file(const std::filesystem::path& path) {
  return import_snapshot(read_file(path));
}

}  // namespace humat
