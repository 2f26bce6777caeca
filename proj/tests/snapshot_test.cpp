#include "humat/snapshot.hpp"

#include <gtest/gtest.h>

#include <json.hpp>
#include <random>

#include "humat/errors.hpp"
#include "support/generators.hpp"

namespace humat {
namespace {

ModelState random_state(std::mt19937_64& gen) {
  const ScenarioConfig cfg = testing::random_config(gen, 6, 6);
  ModelState s = initialize(cfg);
  for (std::uint64_t t = 0; t < cfg.ticks; ++t) step(s, cfg);
  return s;
}

TEST(Snapshot, RoundTripProperty) {
  std::mt19937_64 gen(101);
  for (int trial = 0; trial < 50; ++trial) {
    const Snapshot snap{"abc123", random_state(gen)};
    const std::string bytes = export_snapshot(snap);
    const Snapshot back = import_snapshot(bytes);
    EXPECT_EQ(back, snap);
    EXPECT_EQ(export_snapshot(back), bytes);
  }
}

TEST(Snapshot, InitialStateRecordsTickZero) {
  std::mt19937_64 gen(5);
  const ScenarioConfig cfg = testing::random_config(gen);
  const auto doc = nlohmann::json::parse(export_snapshot({"x", initialize(cfg)}));
  EXPECT_EQ(doc.at("tick"), 0);
  EXPECT_EQ(doc.at("schema_version"), std::string(kSnapshotSchema));
  EXPECT_EQ(doc.at("rng_algorithm"), std::string(kRngAlgorithm));
}

TEST(Snapshot, DistinctStatesDistinctBytes) {
  std::mt19937_64 gen(6);
  Snapshot snap{"x", random_state(gen)};
  const std::string a = export_snapshot(snap);
  snap.state.agents[0].aspiration = std::nextafter(snap.state.agents[0].aspiration, 2.0);
  if (snap.state.agents[0].aspiration > 1.0) snap.state.agents[0].aspiration = 0.0;
  EXPECT_NE(export_snapshot(snap), a);
}

TEST(Snapshot, OutOfRangeSatisfactionNamesField) {
  std::mt19937_64 gen(7);
  ModelState s;
  do {
    s = random_state(gen);
  } while (s.agents.size() < 2 || s.scenario.motive_count() < 2);
  auto doc = nlohmann::json::parse(export_snapshot({"x", s}));
  doc["agents"][1]["motive_states"][1]["satisfaction"][1] = 1.5;
  try {
    import_snapshot(doc.dump());
    FAIL() << "expected ValidationFailure";
  } catch (const ValidationFailure& e) {
    EXPECT_EQ(e.field_path(), "agents[1].motive_states[1].satisfaction[1]");
  }
}

TEST(Snapshot, TruncatedBytesAreSchemaMismatch) {
  std::mt19937_64 gen(8);
  const std::string bytes = export_snapshot({"x", random_state(gen)});
  EXPECT_THROW(import_snapshot(bytes.substr(0, bytes.size() / 2)), SchemaMismatch);
  EXPECT_THROW(import_snapshot(""), SchemaMismatch);
}

TEST(Snapshot, UnknownSchemaVersion) {
  std::mt19937_64 gen(9);
  auto doc = nlohmann::json::parse(export_snapshot({"x", random_state(gen)}));
  doc["schema_version"] = "humat-snapshot/99";
  EXPECT_THROW(import_snapshot(doc.dump()), SchemaMismatch);
}

TEST(Snapshot, ImportedStateStepsLikeOriginal) {
  std::mt19937_64 gen(10);
  for (int trial = 0; trial < 20; ++trial) {
    ScenarioConfig cfg = testing::random_config(gen, 6, 6);
    cfg.activation_order = ActivationOrder::ByIdAscending;
    ModelState original = initialize(cfg);
    for (std::uint64_t t = 0; t < cfg.ticks / 2; ++t) step(original, cfg);
    ModelState imported = import_snapshot(export_snapshot({"x", original})).state;
    const auto ev_a = step(original, cfg);
    const auto ev_b = step(imported, cfg);
    EXPECT_EQ(ev_a, ev_b);
    EXPECT_EQ(original, imported);
  }
}

TEST(Snapshot, FileRoundTrip) {
  std::mt19937_64 gen(11);
  const Snapshot snap{"digest", random_state(gen)};
  const auto path = std::filesystem::temp_directory_path() / "humat_snapshot_test.json";
  write_snapshot_file(path, snap);
  EXPECT_EQ(read_snapshot_file(path), snap);
  std::filesystem::remove(path);
  EXPECT_THROW(read_snapshot_file(path), IoFailure);
}

}  // namespace
}  // namespace humat
