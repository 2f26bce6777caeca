#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "humat/engine.hpp"

namespace humat {

inline constexpr std::string_view kSnapshotSchema = "humat-snapshot/1";

/// A complete model state plus the digest of the config that produced it.
struct Snapshot {
  std::string config_digest;
  ModelState state;

  bool operator==(const Snapshot&) const = default;
};

/// Canonical UTF-8 JSON. Equal snapshots give identical bytes, and
/// export_snapshot(import_snapshot(b)) == b for every canonical document b.
std::string export_snapshot(const Snapshot& snapshot);

/// Parses and validates a snapshot document. Throws SchemaMismatch for
/// unparseable input or an unknown schema_version, and ValidationFailure
/// (with the field path) when a state invariant is violated. Nothing is
/// returned unless the whole document is valid.
Snapshot import_snapshot(std::string_view bytes);

void write_snapshot_file(const std::filesystem::path& path, const Snapshot& snapshot);
Snapshot read_snapshot_file(const std::filesystem::path& path);

}  // namespace humat
