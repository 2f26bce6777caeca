#include "humat/config.hpp"

#include <openssl/evp.h>
#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <charconv>
#include <initializer_list>

#include "humat/canonical_json.hpp"
#include "humat/errors.hpp"
#include "humat/trace.hpp"

namespace humat {

using nlohmann::json;

namespace {

std::string join(const std::string& base, std::string_view key) {
  return base.empty() ? std::string(key) : base + "." + std::string(key);
}

std::string at_index(const std::string& base, std::size_t i) {
  return base + "[" + std::to_string(i) + "]";
}

void require_map(const YAML::Node& node, const std::string& path) {
  if (!node.IsMap()) throw InvalidConfig(path, "expected a mapping");
}

void require_seq(const YAML::Node& node, const std::string& path) {
  if (!node.IsSequence()) throw InvalidConfig(path, "expected a list");
}

void reject_unknown_keys(const YAML::Node& node, const std::string& path,
                         std::initializer_list<std::string_view> allowed) {
  for (const auto& kv : node) {
    const auto key = kv.first.as<std::string>();
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw InvalidConfig(join(path, key), "unknown key");
    }
  }
}

YAML::Node required(const YAML::Node& parent, std::string_view key, const std::string& path) {
  YAML::Node node = parent[std::string(key)];
  if (!node.IsDefined() || node.IsNull()) throw InvalidConfig(join(path, key), "is required");
  return node;
}

template <typename T>
T scalar(const YAML::Node& node, const std::string& path, const char* expected) {
  if (!node.IsScalar()) throw InvalidConfig(path, std::string("expected ") + expected);
  try {
    return node.as<T>();
  } catch (const YAML::Exception&) {
    throw InvalidConfig(path, std::string("expected ") + expected);
  }
}

double real(const YAML::Node& node, const std::string& path) {
  return scalar<double>(node, path, "a number");
}

std::uint64_t count(const YAML::Node& node, const std::string& path) {
  const auto text = scalar<std::string>(node, path, "a non-negative integer");
  std::uint64_t value = 0;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size()) {
    throw InvalidConfig(path, "expected a non-negative integer");
  }
  return value;
}

std::string text(const YAML::Node& node, const std::string& path) {
  return scalar<std::string>(node, path, "a string");
}

std::vector<double> reals(const YAML::Node& node, const std::string& path) {
  require_seq(node, path);
  std::vector<double> out;
  for (std::size_t i = 0; i < node.size(); ++i) out.push_back(real(node[i], at_index(path, i)));
  return out;
}

UniformRange range(const YAML::Node& parent, std::string_view key, const std::string& path,
                   UniformRange fallback) {
  YAML::Node node = parent[std::string(key)];
  if (!node.IsDefined()) return fallback;
  const std::string p = join(path, key);
  auto values = reals(node, p);
  if (values.size() != 2) throw InvalidConfig(p, "expected [lo, hi]");
  return {values[0], values[1]};
}

Scenario parse_scenario(const YAML::Node& root) {
  Scenario sc;
  YAML::Node motives = required(root, "motives", "");
  require_seq(motives, "motives");
  for (std::size_t i = 0; i < motives.size(); ++i) {
    const std::string p = at_index("motives", i);
    require_map(motives[i], p);
    reject_unknown_keys(motives[i], p, {"id", "name", "group"});
    if (motives[i]["id"].IsDefined() && count(motives[i]["id"], p + ".id") != i) {
      throw InvalidConfig(p + ".id", "motive ids must be 0..M-1 in list order");
    }
    const std::string group_text = text(required(motives[i], "group", p), p + ".group");
    auto group = parse_motive_group(group_text);
    if (!group) throw InvalidConfig(p + ".group", "must be experiential, social or value");
    sc.motives.push_back({static_cast<MotiveId>(i), text(required(motives[i], "name", p), p + ".name"),
                          *group});
  }
  YAML::Node alts = required(root, "alternatives", "");
  require_seq(alts, "alternatives");
  for (std::size_t i = 0; i < alts.size(); ++i) {
    const std::string p = at_index("alternatives", i);
    std::string label;
    if (alts[i].IsMap()) {
      reject_unknown_keys(alts[i], p, {"id", "label"});
      if (alts[i]["id"].IsDefined() && count(alts[i]["id"], p + ".id") != i) {
        throw InvalidConfig(p + ".id", "alternative ids must be 0..K-1 in list order");
      }
      label = text(required(alts[i], "label", p), p + ".label");
    } else {
      label = text(alts[i], p);
    }
    sc.alternatives.push_back({static_cast<AltId>(i), label});
  }
  return sc;
}

AgentInit parse_agents(const YAML::Node& root, const Scenario& sc) {
  YAML::Node node = root["agents"];
  if (!node.IsDefined() || node.IsNull()) return UniformAgents{};
  require_map(node, "agents");
  reject_unknown_keys(node, "agents", {"mode", "importance", "satisfaction", "aspiration", "table"});
  std::string mode = node["mode"].IsDefined() ? text(node["mode"], "agents.mode")
                                              : (node["table"].IsDefined() ? "table" : "uniform");
  if (mode == "uniform") {
    UniformAgents u;
    u.importance = range(node, "importance", "agents", u.importance);
    u.satisfaction = range(node, "satisfaction", "agents", u.satisfaction);
    u.aspiration = range(node, "aspiration", "agents", u.aspiration);
    return u;
  }
  if (mode != "table") throw InvalidConfig("agents.mode", "must be uniform or table");
  TableAgents t;
  YAML::Node rows = required(node, "table", "agents");
  require_seq(rows, "agents.table");
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const std::string p = at_index("agents.table", r);
    require_map(rows[r], p);
    reject_unknown_keys(rows[r], p, {"importances", "satisfactions", "aspiration"});
    AgentRow row;
    row.importances = reals(required(rows[r], "importances", p), p + ".importances");
    YAML::Node sats = required(rows[r], "satisfactions", p);
    require_seq(sats, p + ".satisfactions");
    for (std::size_t i = 0; i < sats.size(); ++i) {
      row.satisfactions.push_back(reals(sats[i], at_index(p + ".satisfactions", i)));
    }
    row.aspiration = real(required(rows[r], "aspiration", p), p + ".aspiration");
    t.rows.push_back(std::move(row));
  }
  (void)sc;
  return t;
}

NetworkSpec parse_network(const YAML::Node& root, std::size_t population) {
  YAML::Node node = root["network"];
  std::string path = "network";
  if (YAML::Node list = root["networks"]; list.IsDefined()) {
    if (node.IsDefined()) throw InvalidConfig("networks", "give either network or networks");
    require_seq(list, "networks");
    if (list.size() != 1) {
      throw InvalidConfig("networks", "exactly one social network is supported");
    }
    node = list[0];
    path = "networks[0]";
  }
  if (!node.IsDefined() || node.IsNull()) throw InvalidConfig("network", "is required");
  require_map(node, path);
  reject_unknown_keys(node, path, {"generator", "k", "p", "beta", "edges"});
  const std::string gen = text(required(node, "generator", path), join(path, "generator"));
  auto k = [&] { return static_cast<std::size_t>(count(required(node, "k", path), join(path, "k"))); };
  if (gen == "complete") return net::Complete{population};
  if (gen == "ring") return net::Ring{population, k()};
  if (gen == "erdos_renyi") {
    return net::ErdosRenyi{population, real(required(node, "p", path), join(path, "p"))};
  }
  if (gen == "watts_strogatz") {
    return net::WattsStrogatz{population, k(),
                              real(required(node, "beta", path), join(path, "beta"))};
  }
  if (gen == "explicit") {
    net::Explicit ex{population, {}};
    YAML::Node edges = required(node, "edges", path);
    const std::string ep = join(path, "edges");
    require_seq(edges, ep);
    for (std::size_t i = 0; i < edges.size(); ++i) {
      const std::string p = at_index(ep, i);
      require_seq(edges[i], p);
      if (edges[i].size() != 2) throw InvalidConfig(p, "expected [source, target]");
      ex.edges.emplace_back(static_cast<AgentId>(count(edges[i][0], p)),
                            static_cast<AgentId>(count(edges[i][1], p)));
    }
    return ex;
  }
  throw InvalidConfig(join(path, "generator"),
                      "must be complete, ring, erdos_renyi, watts_strogatz or explicit");
}

ScenarioConfig from_yaml(const YAML::Node& root) {
  require_map(root, "");
  reject_unknown_keys(root, "",
                      {"motives", "alternatives", "population", "agents", "network", "networks",
                       "beliefs", "influence", "epsilon", "ticks", "seed", "activation_order"});
  ScenarioConfig cfg;
  cfg.scenario = parse_scenario(root);
  cfg.population = static_cast<std::size_t>(count(required(root, "population", ""), "population"));
  cfg.agents = parse_agents(root, cfg.scenario);
  cfg.network = parse_network(root, cfg.population);
  if (YAML::Node b = root["beliefs"]; b.IsDefined()) {
    const std::string mode = text(b, "beliefs");
    if (mode == "perfect") {
      cfg.beliefs = BeliefInit::Perfect;
    } else if (mode == "uninformative") {
      cfg.beliefs = BeliefInit::Uninformative;
    } else {
      throw InvalidConfig("beliefs", "must be perfect or uninformative");
    }
  }
  if (YAML::Node inf = root["influence"]; inf.IsDefined()) {
    require_map(inf, "influence");
    reject_unknown_keys(inf, "influence", {"similarity_weight", "aspiration_weight", "learning_rate"});
    if (inf["similarity_weight"].IsDefined()) {
      cfg.influence.similarity_weight = real(inf["similarity_weight"], "influence.similarity_weight");
    }
    if (inf["aspiration_weight"].IsDefined()) {
      cfg.influence.aspiration_weight = real(inf["aspiration_weight"], "influence.aspiration_weight");
    }
    if (inf["learning_rate"].IsDefined()) {
      cfg.influence.learning_rate = real(inf["learning_rate"], "influence.learning_rate");
    }
  }
  if (YAML::Node e = root["epsilon"]; e.IsDefined()) cfg.epsilon = real(e, "epsilon");
  cfg.ticks = count(required(root, "ticks", ""), "ticks");
  if (YAML::Node s = root["seed"]; s.IsDefined()) cfg.seed = count(s, "seed");
  if (YAML::Node a = root["activation_order"]; a.IsDefined()) {
    auto order = parse_activation_order(text(a, "activation_order"));
    if (!order) throw InvalidConfig("activation_order", "must be by_id or shuffled");
    cfg.activation_order = *order;
  }
  cfg.validate();
  return cfg;
}

void set_path(YAML::Node node, const std::vector<std::string>& parts, std::size_t i,
              const YAML::Node& value, const std::string& full) {
  const std::string& key = parts[i];
  const bool last = i + 1 == parts.size();
  if (node.IsSequence()) {
    std::size_t index = 0;
    auto [end, ec] = std::from_chars(key.data(), key.data() + key.size(), index);
    if (ec != std::errc() || end != key.data() + key.size() || index >= node.size()) {
      throw InvalidConfig(full, "'" + key + "' is not a valid list index");
    }
    if (last) {
      node[index] = value;
    } else {
      set_path(node[index], parts, i + 1, value, full);
    }
    return;
  }
  if (!node.IsMap() && !node.IsNull()) {
    throw InvalidConfig(full, "cannot descend into a scalar");
  }
  if (last) {
    node[key] = value;
    return;
  }
  if (!node[key].IsDefined() || node[key].IsNull()) node[key] = YAML::Node(YAML::NodeType::Map);
  set_path(node[key], parts, i + 1, value, full);
}

void apply_override(YAML::Node& root, const Override& ov) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t dot = ov.path.find('.', start);
    parts.push_back(ov.path.substr(start, dot - start));
    if (dot == std::string::npos) break;
    start = dot + 1;
  }
  if (std::any_of(parts.begin(), parts.end(), [](const std::string& p) { return p.empty(); })) {
    throw InvalidConfig(ov.path, "malformed override path");
  }
  YAML::Node value;
  try {
    value = YAML::Load(ov.value);
  } catch (const YAML::Exception& e) {
    throw InvalidConfig(ov.path, std::string("unparseable override value: ") + e.what());
  }
  set_path(root, parts, 0, value, ov.path);
}

std::string agents_mode(const AgentInit& init) {
  return std::holds_alternative<UniformAgents>(init) ? "uniform" : "table";
}

}  // namespace

Override parse_override(std::string_view text) {
  const auto eq = text.find('=');
  if (eq == std::string_view::npos || eq == 0) {
    throw InvalidConfig(std::string(text), "override must have the form key.path=value");
  }
  return {std::string(text.substr(0, eq)), std::string(text.substr(eq + 1))};
}

ScenarioConfig parse_config(std::string_view text, const std::vector<Override>& overrides) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::Exception& e) {
    throw InvalidConfig("", std::string("config is not valid YAML: ") + e.what());
  }
  if (root.IsNull()) root = YAML::Node(YAML::NodeType::Map);
  for (const Override& ov : overrides) apply_override(root, ov);
  return from_yaml(root);
}

ScenarioConfig load_config(const std::filesystem::path& path,
                           const std::vector<Override>& overrides) {
  std::string contents;
  try {
    contents = read_file(path);
  } catch (const IoFailure& e) {
    throw InvalidConfig("", e.what());
  }
  return parse_config(contents, overrides);
}

json config_to_json(const ScenarioConfig& config) {
  json motives = json::array();
  for (const Motive& m : config.scenario.motives) {
    motives.push_back({{"name", m.name}, {"group", std::string(to_string(m.group))}});
  }
  json alternatives = json::array();
  for (const Alternative& a : config.scenario.alternatives) alternatives.push_back(a.label);

  json agents = {{"mode", agents_mode(config.agents)}};
  if (const auto* u = std::get_if<UniformAgents>(&config.agents)) {
    agents["importance"] = {u->importance.lo, u->importance.hi};
    agents["satisfaction"] = {u->satisfaction.lo, u->satisfaction.hi};
    agents["aspiration"] = {u->aspiration.lo, u->aspiration.hi};
  } else {
    json rows = json::array();
    for (const AgentRow& row : std::get<TableAgents>(config.agents).rows) {
      rows.push_back({{"importances", row.importances},
                      {"satisfactions", row.satisfactions},
                      {"aspiration", row.aspiration}});
    }
    agents["table"] = rows;
  }

  json network = {{"generator", generator_name(config.network)}};
  if (const auto* r = std::get_if<net::Ring>(&config.network)) network["k"] = r->k;
  if (const auto* er = std::get_if<net::ErdosRenyi>(&config.network)) network["p"] = er->p;
  if (const auto* ws = std::get_if<net::WattsStrogatz>(&config.network)) {
    network["k"] = ws->k;
    network["beta"] = ws->beta;
  }
  if (const auto* ex = std::get_if<net::Explicit>(&config.network)) {
    json edges = json::array();
    for (const Edge& e : ex->edges) edges.push_back({e.first, e.second});
    network["edges"] = edges;
  }

  return {{"motives", motives},
          {"alternatives", alternatives},
          {"population", config.population},
          {"agents", agents},
          {"network", network},
          {"beliefs", config.beliefs == BeliefInit::Perfect ? "perfect" : "uninformative"},
          {"influence",
           {{"similarity_weight", config.influence.similarity_weight},
            {"aspiration_weight", config.influence.aspiration_weight},
            {"learning_rate", config.influence.learning_rate}}},
          {"epsilon", config.epsilon},
          {"ticks", config.ticks},
          {"seed", config.seed},
          {"activation_order", std::string(to_string(config.activation_order))}};
}

std::string config_digest(const ScenarioConfig& config) {
  const std::string canonical = canonical_dump(config_to_json(config));
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(canonical.data(), canonical.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
    throw Error("SHA-256 digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(length * 2);
  for (unsigned int i = 0; i < length; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 0xF];
  }
  return out;
}

}  // namespace humat
