#include "report.hpp"

#include <sstream>

namespace fricke::cli {

Json Report::to_json() const {
  Json j;
  j["tool"] = tool;
  j["version"] = version;
  j["command"] = command;
  j["config"] = config;
  j["result"] = result;
  j["truncated"] = truncated;
  j["exit_code"] = exit_code;
  j["elapsed_ms"] = elapsed_ms;
  return j;
}

Report Report::from_json(const Json& j) {
  Report r;
  r.tool = j.at("tool").get<std::string>();
  r.version = j.at("version").get<std::string>();
  r.command = j.at("command").get<std::string>();
  r.config = j.at("config");
  r.result = j.at("result");
  r.truncated = j.at("truncated").get<bool>();
  r.exit_code = j.at("exit_code").get<int>();
  r.elapsed_ms = j.at("elapsed_ms").get<std::int64_t>();
  return r;
}

std::string Report::dump() const { return to_json().dump(2) + "\n"; }

Report Report::parse(const std::string& text) { return from_json(Json::parse(text)); }

namespace {

std::string scalar(const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

bool flat(const Json& v) {
  for (const auto& x : v) {
    if (x.is_structured()) return false;
  }
  return true;
}

void render(std::ostringstream& os, const std::string& key, const Json& v, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  if (v.is_object()) {
    os << pad << key << ":\n";
    for (const auto& [k, x] : v.items()) render(os, k, x, indent + 2);
  } else if (v.is_array() && flat(v)) {
    os << pad << key << ":";
    for (const auto& x : v) os << ' ' << scalar(x);
    os << '\n';
  } else if (v.is_array()) {
    os << pad << key << ": (" << v.size() << ")\n";
    for (const auto& x : v) {
      os << pad << "  -";
      if (x.is_object()) {
        for (const auto& [k, y] : x.items()) os << ' ' << k << '=' << (y.is_structured() ? y.dump() : scalar(y));
      } else {
        os << ' ' << scalar(x);
      }
      os << '\n';
    }
  } else {
    os << pad << key << ": " << scalar(v) << '\n';
  }
}

}  // namespace

std::string Report::human() const {
  std::ostringstream os;
  os << tool << ' ' << version << "  " << command << '\n';
  for (const auto& [k, v] : config.items()) render(os, k, v, 2);
  os << "result:\n";
  for (const auto& [k, v] : result.items()) render(os, k, v, 2);
  if (truncated) os << "note: search budget exhausted, result is partial\n";
  os << "elapsed_ms: " << elapsed_ms << '\n';
  return os.str();
}

}  // namespace fricke::cli
