// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any fail.

#include <sys/resource.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "humat/core_model.hpp"
#include "humat/diff.hpp"
#include "humat/run.hpp"
#include "humat/snapshot.hpp"
#include "humat/trace.hpp"
#include "support/generators.hpp"
#include "support/oracle_compare.hpp"

namespace fs = std::filesystem;
using namespace humat;
using testing::make_agent;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Check {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok && out_.pass) {
      out_.pass = false;
      out_.detail = what;
    }
  }
  void near(double got, double want, double tol, const std::string& what) {
    std::ostringstream ss;
    ss.precision(17);
    ss << what << ": got " << got << ", want " << want;
    expect(std::abs(got - want) <= tol, ss.str());
  }
  void note(const std::string& text) {
    if (out_.pass) out_.detail = text;
  }
  Outcome outcome() const { return out_; }

 private:
  Outcome out_;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

long peak_rss_kib() {
  rusage usage{};
  getrusage(RUSAGE_SELF, &usage);
  return usage.ru_maxrss;
}

Outcome core_math() {
  const auto start = Clock::now();
  Check c;
  constexpr double tol = 1e-12;

  c.near(evaluation(make_agent({1.0}, {{1.0, 0.0}}), 0), 1.0, tol, "evaluation single motive");
  c.near(evaluation(make_agent({0.5, 0.5}, {{1.0, 0.0}, {-1.0, 0.0}}), 0), 0.0, tol,
         "evaluation cancellation");
  const Humat weighted = make_agent({0.8, 0.2}, {{1.0, 0.0}, {-0.5, 0.0}});
  c.near(evaluation(weighted, 0), (0.8 * 1.0 + 0.2 * -0.5) / (0.8 + 0.2), tol,
         "evaluation weighted (term-by-term)");
  c.near(evaluation(weighted, 0), 0.7, tol, "evaluation weighted");

  ProsCons pc = pros_cons(make_agent({0.6, 0.4}, {{0.3, 0.0}, {0.8, 0.0}}), 0);
  c.near(pc.pros, 1.0, tol, "pros all positive");
  c.near(pc.cons, 0.0, tol, "cons all positive");
  pc = pros_cons(make_agent({0.5, 0.5}, {{1.0, 0.0}, {-1.0, 0.0}}), 0);
  c.near(pc.pros, 0.5, tol, "pros symmetric");
  c.near(pc.cons, 0.5, tol, "cons symmetric");
  pc = pros_cons(weighted, 0);
  c.near(pc.pros, 0.8, tol, "pros partition");
  c.near(pc.cons, 0.2, tol, "cons partition");

  c.near(dissonance_strength(make_agent({0.4, 0.6}, {{-0.3, 0.0}, {-0.8, 0.0}}), 0), 0.0, tol,
         "dissonance same sign");
  c.near(dissonance_strength(make_agent({0.5, 0.5}, {{1.0, 0.0}, {-1.0, 0.0}}), 0), 1.0, tol,
         "dissonance balanced");
  c.near(dissonance_strength(weighted, 0), 2.0 * 0.2 / 1.0, tol, "dissonance P=0.8 C=0.2");

  c.near(social_satisfaction(1.0), 1.0, tol, "social satisfaction f=1");
  c.near(social_satisfaction(0.0), -1.0, tol, "social satisfaction f=0");
  c.near(social_satisfaction(0.5), 0.0, tol, "social satisfaction f=0.5");

  c.expect(choose(make_agent({1.0}, {{0.7, 0.1}}, 1)) == 0, "choose strict argmax");
  c.expect(choose(make_agent({1.0}, {{0.4, 0.4}}, 1)) == 1, "choose sticky tie");
  c.expect(choose(make_agent({1.0}, {{0.2, 0.9, 0.9}}, 0)) == 1, "choose lowest maximizer");

  const Scenario sc = testing::make_scenario(2, 2, 1);
  Humat d = make_agent({0.5, 0.5}, {{0.5, 0.0}, {-0.5, 0.0}});
  d.dissonance = {0.0, 0.0};
  c.expect(classify_dilemma(sc, d, 0.0) == DilemmaStatus::NoDilemma, "no dilemma");
  d.dissonance = {0.6, 0.0};
  c.expect(classify_dilemma(sc, d, 0.0) == DilemmaStatus::SocialDilemma, "social dilemma");
  d.motive_states[1].satisfaction[0] = 0.5;
  c.expect(classify_dilemma(sc, d, 0.0) == DilemmaStatus::NonSocialDilemma, "nonsocial dilemma");

  const double elapsed = seconds_since(start);
  c.expect(elapsed < 1.0, "runtime " + std::to_string(elapsed) + " s");
  c.note(std::to_string(elapsed) + " s");
  return c.outcome();
}

Outcome scale_invariance() {
  Check c;
  std::mt19937_64 gen(20240101);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 1000 && c.outcome().pass; ++trial) {
    const std::size_t m = 1 + gen() % 6;
    const std::size_t k = 2 + gen() % 4;
    const Humat h = testing::random_agent(gen, m, k);
    const double scale = 10.0 * (1.0 - unit(gen));  // (0, 10]
    Humat scaled = h;
    for (auto& ms : scaled.motive_states) ms.importance *= scale;
    for (AltId a = 0; a < k; ++a) {
      c.near(evaluation(scaled, a), evaluation(h, a), 1e-12, "evaluation");
      c.near(dissonance_strength(scaled, a), dissonance_strength(h, a), 1e-12, "dissonance");
    }
    c.expect(choose(scaled) == choose(h), "choose changed under scaling");
  }
  c.note("1000 agents");
  return c.outcome();
}

Outcome dissonance_bounds() {
  Check c;
  std::mt19937_64 gen(31337);
  std::uniform_real_distribution<double> mag(1e-6, 1.0);
  std::uniform_real_distribution<double> imp(0.01, 1.0);
  std::size_t balanced_cases = 0;
  for (int trial = 0; trial < 10000 && c.outcome().pass; ++trial) {
    const int kind = trial % 4;
    std::vector<double> importances;
    std::vector<std::vector<double>> sats;
    bool share_sign = false;
    if (kind == 3) {
      // Mirrored pairs: each pro is matched by a con of equal importance.
      const std::size_t pairs = 1 + gen() % 4;
      for (std::size_t p = 0; p < pairs; ++p) {
        const double w = imp(gen);
        importances.push_back(w);
        sats.push_back({mag(gen), 0.0});
        importances.push_back(w);
        sats.push_back({-mag(gen), 0.0});
      }
      Humat h = make_agent(importances, sats);
      const double d = dissonance_strength(h, 0);
      c.expect(d == 1.0, "balanced case gave " + std::to_string(d));
      ++balanced_cases;
      continue;
    }
    const std::size_t m = 1 + gen() % 6;
    for (std::size_t i = 0; i < m; ++i) {
      importances.push_back(imp(gen));
      double s = mag(gen);
      if (kind == 1 || (kind == 2 && gen() % 2)) s = -s;
      sats.push_back({s, 0.0});
    }
    if (kind == 2 && m >= 2) {
      sats[0][0] = std::abs(sats[0][0]);
      sats[1][0] = -std::abs(sats[1][0]);
    }
    bool any_pos = false;
    bool any_neg = false;
    for (const auto& row : sats) {
      any_pos |= row[0] > 0.0;
      any_neg |= row[0] < 0.0;
    }
    share_sign = !(any_pos && any_neg);
    const Humat h = make_agent(importances, sats);
    const double d = dissonance_strength(h, 0);
    c.expect(d >= 0.0 && d <= 1.0, "dissonance out of [0,1]: " + std::to_string(d));
    c.expect((d == 0.0) == share_sign, "zero iff shared sign violated");
  }
  c.note("10000 configurations, " + std::to_string(balanced_cases) + " balanced");
  return c.outcome();
}

ScenarioConfig determinism_config(ActivationOrder order) {
  ScenarioConfig cfg;
  cfg.scenario = testing::make_scenario(3, 2, 1);
  cfg.population = 100;
  cfg.network = net::Complete{100};
  cfg.ticks = 50;
  cfg.seed = 123456789;
  cfg.influence = {0.5, 0.5, 0.3};
  cfg.activation_order = order;
  return cfg;
}

Outcome determinism() {
  const auto start = Clock::now();
  Check c;
  for (ActivationOrder order : {ActivationOrder::ByIdAscending, ActivationOrder::ShuffledEachTick}) {
    const ScenarioConfig cfg = determinism_config(order);
    const std::string a = canonical_bytes(run(cfg));
    const std::string b = canonical_bytes(run(cfg));
    c.expect(a == b, std::string("traces differ for ") + std::string(to_string(order)));
  }
  const double elapsed = seconds_since(start);
  c.expect(elapsed < 5.0, "runtime " + std::to_string(elapsed) + " s");
  c.note(std::to_string(elapsed) + " s for 4 runs");
  return c.outcome();
}

Outcome oracle_equivalence() {
  Check c;
  std::mt19937_64 gen(4242);
  for (int trial = 0; trial < 100 && c.outcome().pass; ++trial) {
    const ScenarioConfig cfg = testing::random_config(gen, 5, 10);
    const std::string mismatch = testing::compare_with_reference(cfg);
    c.expect(mismatch.empty(), "config " + std::to_string(trial) + ": " + mismatch);
  }
  c.note("100 configs");
  return c.outcome();
}

Outcome fixed_point() {
  Check c;
  std::mt19937_64 gen(606);
  for (int trial = 0; trial < 60 && c.outcome().pass; ++trial) {
    const std::size_t n = 1 + gen() % 40;
    const ScenarioConfig cfg = testing::sign_consistent_config(gen, n, 20);
    ModelState s = initialize(cfg);
    std::vector<AltId> choices;
    for (const Humat& h : s.agents) choices.push_back(h.current_choice);
    for (std::uint64_t t = 0; t < cfg.ticks; ++t) {
      const auto events = step(s, cfg);
      c.expect(events.empty(), "events at tick " + std::to_string(s.tick));
      for (std::size_t i = 0; i < s.agents.size(); ++i) {
        c.expect(s.agents[i].current_choice == choices[i], "choice changed");
      }
    }
  }
  c.note("60 scenarios x 20 ticks");
  return c.outcome();
}

Outcome harness() {
  Check c;
  std::mt19937_64 gen(777);
  for (int trial = 0; trial < 100 && c.outcome().pass; ++trial) {
    const ScenarioConfig cfg = testing::random_config(gen, 8, 8);
    ModelState s = initialize(cfg);
    for (std::uint64_t t = 0; t < cfg.ticks; ++t) step(s, cfg);
    const Snapshot snap{"roundtrip", s};
    const std::string bytes = export_snapshot(snap);
    const Snapshot back = import_snapshot(bytes);
    c.expect(back == snap, "import(export(state)) != state");
    c.expect(export_snapshot(back) == bytes, "export(import(bytes)) != bytes");

    const RunTrace trace = run(cfg);
    c.expect(diff_traces(trace, trace, Tolerances::same_engine()).empty(), "self diff not empty");

    RunTrace perturbed = trace;
    const std::size_t rec = gen() % perturbed.records.size();
    const std::size_t agent = gen() % perturbed.records[rec].agents.size();
    const std::size_t alt = gen() % perturbed.records[rec].agents[agent].dissonance.size();
    perturbed.records[rec].agents[agent].dissonance[alt] += 1e-6;
    const DiffReport r = diff_traces(trace, perturbed, Tolerances::cross_implementation());
    const bool localized = r.discrepancies.size() == 1 &&
                           r.discrepancies[0].tick == trace.records[rec].tick &&
                           r.discrepancies[0].agent_id == static_cast<AgentId>(agent) &&
                           r.discrepancies[0].field == "dissonance[" + std::to_string(alt) + "]";
    c.expect(localized, "perturbation not localized");
  }
  for (int trial = 0; trial < 20 && c.outcome().pass; ++trial) {
    const ScenarioConfig cfg = testing::random_config(gen, 10, 10);
    const RunTrace golden = run(cfg);
    ModelState s = initialize(cfg);
    const std::uint64_t at = gen() % (cfg.ticks + 1);
    for (std::uint64_t t = 0; t < at; ++t) step(s, cfg);
    const Snapshot snap = import_snapshot(export_snapshot({"replay", s}));
    const DiffReport r = replay_check(snap, golden, cfg, Tolerances::same_engine());
    c.expect(r.empty(), "replay " + std::to_string(trial) + ": " + r.to_text());
  }
  c.note("100 roundtrips, 100 diffs, 20 replays");
  return c.outcome();
}

// Three agents on a triangle who all pick A although a value motive speaks
// against it, so each is in a non-social dilemma and inquires. Whoever
// inquires first changes what the next inquirer hears.
ScenarioConfig triangle(ActivationOrder order) {
  ScenarioConfig cfg;
  cfg.scenario = testing::make_scenario(3, 2, 1);
  cfg.population = 3;
  cfg.network = net::Complete{3};
  cfg.agents = TableAgents{{
      {{0.6, 0.2, 0.4}, {{0.9, -0.5}, {0.0, 0.0}, {-0.6, -0.1}}, 0.2},
      {{0.5, 0.2, 0.5}, {{0.8, -0.3}, {0.0, 0.0}, {-0.2, -0.4}}, 0.9},
      {{0.7, 0.2, 0.3}, {{0.4, -0.7}, {0.0, 0.0}, {-0.9, -0.2}}, 0.5},
  }};
  cfg.influence = {0.5, 0.5, 0.9};
  cfg.ticks = 5;
  cfg.seed = 11;
  cfg.activation_order = order;
  return cfg;
}

Outcome scheduling_sensitivity() {
  Check c;
  const RunTrace by_id = run(triangle(ActivationOrder::ByIdAscending));
  const RunTrace shuffled = run(triangle(ActivationOrder::ShuffledEachTick));
  std::optional<std::uint64_t> first;
  for (std::size_t t = 0; t < by_id.records.size() && !first; ++t) {
    const TraceRecord& a = by_id.records[t];
    const TraceRecord& b = shuffled.records[t];
    if (a.agents != b.agents || a.events != b.events || a.metrics != b.metrics) first = a.tick;
  }
  c.expect(first.has_value(), "orders produced identical records");
  const DiffReport r = diff_traces(by_id, shuffled, Tolerances::same_engine());
  c.expect(!r.empty(), "diff reported no discrepancy");
  c.expect(r.first_divergence_tick() == first, "diff located the wrong divergence tick");
  if (first) c.note("first divergence at tick " + std::to_string(*first));
  return c.outcome();
}

ScenarioConfig performance_config(std::size_t n) {
  ScenarioConfig cfg;
  cfg.scenario = testing::make_scenario(3, 2, 1);
  cfg.population = n;
  cfg.network = net::WattsStrogatz{n, 10, 0.1};
  cfg.ticks = 100;
  cfg.seed = 2025;
  cfg.influence = {0.5, 0.5, 0.3};
  cfg.activation_order = ActivationOrder::ShuffledEachTick;
  return cfg;
}

Outcome performance() {
  Check c;
  const fs::path root = fs::temp_directory_path() / "humat_acceptance_perf";
  fs::remove_all(root);
  auto timed_run = [&](std::size_t n) {
    const fs::path dir = root / ("n" + std::to_string(n));
    const auto start = Clock::now();
    TraceDirectoryWriter writer(dir);
    run(performance_config(n), writer);
    const double elapsed = seconds_since(start);
    return std::pair{elapsed, fs::file_size(dir / "records.jsonl")};
  };
  const auto [t_small, bytes_small] = timed_run(1000);
  const auto [t_large, bytes_large] = timed_run(10000);
  const double rss_mib = static_cast<double>(peak_rss_kib()) / 1024.0;
  const double per_agent_small = static_cast<double>(bytes_small) / 1000.0;
  const double per_agent_large = static_cast<double>(bytes_large) / 10000.0;
  const double ratio = per_agent_large / per_agent_small;
  c.expect(t_large < 60.0, "N=10000 took " + std::to_string(t_large) + " s");
  c.expect(rss_mib < 2048.0, "peak RSS " + std::to_string(rss_mib) + " MiB");
  c.expect(ratio > 0.9 && ratio < 1.1,
           "trace bytes per agent ratio " + std::to_string(ratio));
  std::ostringstream note;
  note.precision(3);
  note << "N=10000 " << t_large << " s, peak RSS " << rss_mib << " MiB, bytes/agent "
       << per_agent_small << " (N=1000) vs " << per_agent_large << " (N=10000)";
  c.note(note.str());
  fs::remove_all(root);
  return c.outcome();
}

Outcome perfect_information() {
  Check c;
  std::mt19937_64 gen(1010);
  std::size_t ticks_checked = 0;
  for (int trial = 0; trial < 300 && c.outcome().pass; ++trial) {
    const ScenarioConfig cfg =
        trial < 200 ? testing::random_config(gen, 5, 10) : testing::random_config(gen, 40, 25);
    ModelState s = initialize(cfg);
    for (std::uint64_t t = 0; t < cfg.ticks; ++t) {
      step(s, cfg, [&](const ModelState& mid) {
        for (const auto& [a, b] : mid.network.edges()) {
          const AlterRepresentation* ab = mid.agents[a].find_alter(b);
          const AlterRepresentation* ba = mid.agents[b].find_alter(a);
          c.expect(ab != nullptr && ba != nullptr, "missing alter representation");
          if (ab == nullptr || ba == nullptr) break;
          c.expect(ab->believed_choice == mid.agents[b].current_choice &&
                       ba->believed_choice == mid.agents[a].current_choice,
                   "stale believed choice in tick " + std::to_string(mid.tick + 1));
        }
      });
      ++ticks_checked;
    }
  }
  c.note("300 configs, " + std::to_string(ticks_checked) + " ticks");
  return c.outcome();
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"core math examples", core_math},
      {"importance scale invariance", scale_invariance},
      {"dissonance bounds", dissonance_bounds},
      {"run determinism", determinism},
      {"reference oracle equivalence", oracle_equivalence},
      {"no-dissonance fixed point", fixed_point},
      {"snapshot, diff and replay harness", harness},
      {"scheduling sensitivity", scheduling_sensitivity},
      {"desk-scale performance", performance},
      {"perfect information after sync", perfect_information},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("%s %2zu %s (%s)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
