#include "humat/canonical_json.hpp"

#include <array>
#include <charconv>
#include <cmath>

#include "humat/errors.hpp"

namespace humat {
namespace {

void dump_into(const nlohmann::json& doc, std::string& out) {
  using value_t = nlohmann::json::value_t;
  switch (doc.type()) {
    case value_t::null:
      out += "null";
      break;
    case value_t::boolean:
      out += doc.get<bool>() ? "true" : "false";
      break;
    case value_t::number_integer:
      out += std::to_string(doc.get<std::int64_t>());
      break;
    case value_t::number_unsigned:
      out += std::to_string(doc.get<std::uint64_t>());
      break;
    case value_t::number_float:
      out += format_real(doc.get<double>());
      break;
    case value_t::string:
      // nlohmann's own escaping is deterministic.
      out += nlohmann::json(doc.get_ref<const std::string&>()).dump();
      break;
    case value_t::array: {
      out += '[';
      bool first = true;
      for (const auto& item : doc) {
        if (!first) out += ',';
        first = false;
        dump_into(item, out);
      }
      out += ']';
      break;
    }
    case value_t::object: {
      // nlohmann::json objects are std::map backed, so iteration is key-sorted.
      out += '{';
      bool first = true;
      for (const auto& [key, value] : doc.items()) {
        if (!first) out += ',';
        first = false;
        out += nlohmann::json(key).dump();
        out += ':';
        dump_into(value, out);
      }
      out += '}';
      break;
    }
    default:
      throw Error("cannot serialize JSON value of this type");
  }
}

}  // namespace

std::string format_real(double value) {
  if (!std::isfinite(value)) throw Error("cannot serialize a non-finite real");
  std::array<char, 40> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value,
                                 std::chars_format::general, 17);
  if (ec != std::errc()) throw Error("real formatting failed");
  return std::string(buf.data(), end);
}

std::string canonical_dump(const nlohmann::json& doc) {
  std::string out;
  dump_into(doc, out);
  return out;
}

}  // namespace humat
