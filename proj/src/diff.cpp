#include "humat/diff.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "humat/canonical_json.hpp"
#include "humat/errors.hpp"
#include "humat/run.hpp"

namespace humat {

using nlohmann::json;

double Tolerances::for_field(const std::string& name) const {
  auto it = fields.find(name);
  return it == fields.end() ? default_real : it->second;
}

Tolerances Tolerances::from_json(const json& doc) {
  Tolerances tol;
  auto check = [](const json& v, const std::string& path) {
    if (!v.is_number() || !(v.get<double>() >= 0.0)) {
      throw InvalidConfig(path, "tolerance must be a non-negative number");
    }
    return v.get<double>();
  };
  if (!doc.is_object()) throw InvalidConfig("", "tolerance document must be an object");
  for (const auto& [key, value] : doc.items()) {
    if (key == "default") {
      tol.default_real = check(value, "default");
    } else if (key == "fields") {
      if (!value.is_object()) throw InvalidConfig("fields", "must be an object");
      for (const auto& [field, v] : value.items()) {
        static const std::vector<std::string> known = {"evaluations", "dissonance",
                                                       "social_satisfaction", "mean_dissonance"};
        if (std::find(known.begin(), known.end(), field) == known.end()) {
          throw InvalidConfig("fields." + field, "not a real-valued trace field");
        }
        tol.fields[field] = check(v, "fields." + field);
      }
    } else {
      throw InvalidConfig(key, "unknown key");
    }
  }
  return tol;
}

namespace {

class Comparer {
 public:
  Comparer(const Tolerances& tol, std::vector<Discrepancy>& out) : tol_(tol), out_(out) {}

  void real(std::uint64_t tick, std::optional<AgentId> agent, const std::string& name,
            std::optional<std::size_t> index, double l, double r) {
    const double d = std::abs(l - r);
    const bool metric = name.rfind("metrics.", 0) == 0;
    if (d <= tol_.for_field(metric ? name.substr(8) : name)) return;
    out_.push_back({tick, agent, label(name, index), format_real(l), format_real(r), d});
  }

  template <typename T>
  void exact(std::uint64_t tick, std::optional<AgentId> agent, const std::string& name,
             std::optional<std::size_t> index, const T& l, const T& r) {
    if (l == r) return;
    out_.push_back({tick, agent, label(name, index), text(l), text(r), std::nullopt});
  }

 private:
  static std::string label(const std::string& name, std::optional<std::size_t> index) {
    return index ? name + "[" + std::to_string(*index) + "]" : name;
  }
  template <typename T>
  static std::string text(const T& v) {
    if constexpr (std::is_same_v<T, DilemmaStatus>) {
      return std::string(to_string(v));
    } else if constexpr (std::is_same_v<T, std::string>) {
      return v;
    } else {
      return std::to_string(v);
    }
  }

  const Tolerances& tol_;
  std::vector<Discrepancy>& out_;
};

std::string event_text(const std::optional<CommunicationEvent>& e) {
  if (!e) return "<none>";
  std::ostringstream s;
  s << to_string(e->kind) << ' ' << e->source << "->" << e->target << " subject=" << e->subject
    << " tick=" << e->tick;
  return s.str();
}

void check_shape(const RunTrace& l, const RunTrace& r, DiffReport& report) {
  auto add = [&](const char* dim, auto a, auto b) {
    if (a != b) report.shape_mismatches.push_back({dim, std::to_string(a), std::to_string(b)});
  };
  add("N", l.header.agent_count, r.header.agent_count);
  add("M", l.header.scenario.motive_count(), r.header.scenario.motive_count());
  add("K", l.header.scenario.alternative_count(), r.header.scenario.alternative_count());
  add("T", l.records.size(), r.records.size());
  if (!report.shape_mismatches.empty()) return;
  if (!l.records.empty()) add("start_tick", l.records.front().tick, r.records.front().tick);

  const std::size_t k = l.header.scenario.alternative_count();
  for (const RunTrace* t : {&l, &r}) {
    for (std::size_t i = 0; i < t->records.size(); ++i) {
      const TraceRecord& rec = t->records[i];
      const bool gap = rec.tick != t->records.front().tick + i;
      bool bad_agents = rec.agents.size() != t->header.agent_count ||
                        rec.metrics.choice_counts.size() != k;
      for (const AgentTrace& a : rec.agents) {
        bad_agents = bad_agents || a.evaluations.size() != k || a.dissonance.size() != k;
      }
      if (gap || bad_agents) {
        report.shape_mismatches.push_back(
            {gap ? "T" : "N", t == &l ? "malformed record at tick " + std::to_string(rec.tick) : "",
             t == &r ? "malformed record at tick " + std::to_string(rec.tick) : ""});
        return;
      }
    }
  }
}

}  // namespace

std::optional<std::uint64_t> DiffReport::first_divergence_tick() const {
  if (discrepancies.empty()) return std::nullopt;
  return discrepancies.front().tick;
}

std::string DiffReport::to_text() const {
  std::ostringstream out;
  if (!shape_mismatches.empty()) {
    out << "diff: shape mismatch\n";
    for (const auto& s : shape_mismatches) {
      out << "  " << s.dimension << ": left=" << s.left << " right=" << s.right << '\n';
    }
    return out.str();
  }
  if (discrepancies.empty()) {
    out << "diff: traces match (" << ticks_compared << " ticks compared)\n";
    return out.str();
  }
  out << "diff: " << discrepancies.size() << " discrepanc"
      << (discrepancies.size() == 1 ? "y" : "ies") << ", first divergence at tick "
      << *first_divergence_tick() << '\n';
  for (const auto& d : discrepancies) {
    out << "  tick " << d.tick << ' ';
    if (d.agent_id) {
      out << "agent " << *d.agent_id;
    } else {
      out << "global";
    }
    out << ' ' << d.field << ": left=" << d.left << " right=" << d.right;
    if (d.abs_diff) out << " |diff|=" << format_real(*d.abs_diff);
    out << '\n';
  }
  return out.str();
}

json DiffReport::to_json() const {
  json shapes = json::array();
  for (const auto& s : shape_mismatches) {
    shapes.push_back({{"dimension", s.dimension}, {"left", s.left}, {"right", s.right}});
  }
  json items = json::array();
  std::map<std::string, std::size_t> by_field;
  for (const auto& d : discrepancies) {
    json item = {{"tick", d.tick},
                 {"agent_id", d.agent_id ? json(*d.agent_id) : json(nullptr)},
                 {"field", d.field},
                 {"left", d.left},
                 {"right", d.right},
                 {"abs_diff", d.abs_diff ? json(*d.abs_diff) : json(nullptr)}};
    items.push_back(std::move(item));
    ++by_field[d.field.substr(0, d.field.find('['))];
  }
  auto first = first_divergence_tick();
  return {{"shape_mismatches", shapes},
          {"discrepancies", items},
          {"summary",
           {{"total", discrepancies.size()},
            {"ticks_compared", ticks_compared},
            {"by_field", by_field},
            {"first_divergence_tick", first ? json(*first) : json(nullptr)}}}};
}

DiffReport diff_traces(const RunTrace& left, const RunTrace& right, const Tolerances& tol) {
  DiffReport report;
  check_shape(left, right, report);
  if (report.has_shape_mismatch()) return report;

  Comparer cmp(tol, report.discrepancies);
  for (std::size_t i = 0; i < left.records.size(); ++i) {
    const TraceRecord& l = left.records[i];
    const TraceRecord& r = right.records[i];
    const std::uint64_t t = l.tick;
    const std::optional<AgentId> global;

    const std::size_t n_events = std::max(l.events.size(), r.events.size());
    for (std::size_t e = 0; e < n_events; ++e) {
      std::optional<CommunicationEvent> le, re;
      if (e < l.events.size()) le = l.events[e];
      if (e < r.events.size()) re = r.events[e];
      cmp.exact(t, global, "events", e, event_text(le), event_text(re));
    }
    const TickMetrics& lm = l.metrics;
    const TickMetrics& rm = r.metrics;
    for (std::size_t a = 0; a < lm.choice_counts.size(); ++a) {
      cmp.exact(t, global, "metrics.choice_counts", a, lm.choice_counts[a], rm.choice_counts[a]);
    }
    cmp.real(t, global, "metrics.mean_dissonance", std::nullopt, lm.mean_dissonance, rm.mean_dissonance);
    cmp.exact(t, global, "metrics.n_inquire", std::nullopt, lm.n_inquire, rm.n_inquire);
    cmp.exact(t, global, "metrics.n_nonsocial_dilemma", std::nullopt, lm.n_nonsocial_dilemma,
              rm.n_nonsocial_dilemma);
    cmp.exact(t, global, "metrics.n_signal", std::nullopt, lm.n_signal, rm.n_signal);
    cmp.exact(t, global, "metrics.n_social_dilemma", std::nullopt, lm.n_social_dilemma,
              rm.n_social_dilemma);

    for (std::size_t n = 0; n < l.agents.size(); ++n) {
      const AgentTrace& la = l.agents[n];
      const AgentTrace& ra = r.agents[n];
      const std::optional<AgentId> id = la.agent_id;
      cmp.exact(t, id, "agent_id", std::nullopt, la.agent_id, ra.agent_id);
      cmp.exact(t, id, "choice", std::nullopt, la.choice, ra.choice);
      cmp.exact(t, id, "dilemma", std::nullopt, la.dilemma, ra.dilemma);
      for (std::size_t a = 0; a < la.dissonance.size(); ++a) {
        cmp.real(t, id, "dissonance", a, la.dissonance[a], ra.dissonance[a]);
      }
      for (std::size_t a = 0; a < la.evaluations.size(); ++a) {
        cmp.real(t, id, "evaluations", a, la.evaluations[a], ra.evaluations[a]);
      }
      cmp.real(t, id, "social_satisfaction", std::nullopt, la.social_satisfaction,
               ra.social_satisfaction);
    }
  }
  report.ticks_compared = left.records.size();
  return report;
}

DiffReport replay_check(const Snapshot& snapshot, const RunTrace& golden,
                        const ScenarioConfig& config, const Tolerances& tol) {
  const std::uint64_t start = snapshot.state.tick;
  auto first = std::find_if(golden.records.begin(), golden.records.end(),
                            [&](const TraceRecord& r) { return r.tick == start; });
  if (first == golden.records.end()) {
    throw Error("snapshot tick " + std::to_string(start) + " is not covered by the golden trace");
  }

  RunTrace expected;
  expected.header = golden.header;
  expected.records.assign(first, golden.records.end());
  TraceRecord& head = expected.records.front();
  head.events.clear();
  head.metrics.n_signal = 0;
  head.metrics.n_inquire = 0;

  MemoryTraceSink sink;
  TraceHeader header = golden.header;
  header.agent_count = snapshot.state.agents.size();
  header.scenario = snapshot.state.scenario;
  sink.begin(header);
  const std::uint64_t last = golden.records.back().tick;
  continue_run(snapshot.state, config, last, sink);

  return diff_traces(sink.trace(), expected, tol);
}

}  // namespace humat
