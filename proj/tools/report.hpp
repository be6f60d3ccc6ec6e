#pragma once

// Run report: one self-describing JSON document per run, fields in a fixed order.

#include <json.hpp>

#include <cstdint>
#include <string>

namespace fricke::cli {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "0.1.0";

struct Report {
  std::string tool = "fricke";
  std::string version = kToolVersion;
  std::string command;
  Json config = Json::object();
  Json result = Json::object();
  bool truncated = false;
  int exit_code = 0;
  std::int64_t elapsed_ms = 0;

  Json to_json() const;
  static Report from_json(const Json& j);
  /// Pretty-printed structured form, newline-terminated.
  std::string dump() const;
  static Report parse(const std::string& text);
  /// Key/value listing for terminals.
  std::string human() const;

  friend bool operator==(const Report&, const Report&) = default;
};

}  // namespace fricke::cli
