#pragma once

#include <string>

#include <json.hpp>

namespace humat {

/// Reals as 17 significant digits (printf "%.17g"), which round-trips every
/// finite double.
std::string format_real(double value);

/// Compact JSON with object keys in byte order, no whitespace, and reals via
/// format_real. Two equal documents always produce identical bytes.
std::string canonical_dump(const nlohmann::json& doc);

}  // namespace humat
