#include "qframe/report.hpp"

#include <cstdio>

namespace qframe::io {
namespace {

using nlohmann::json;

std::string fmt_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

std::string leaf_text(const json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_boolean()) return j.get<bool>() ? "true" : "false";
  if (j.is_number_float()) return fmt_double(j.get<double>());
  if (j.is_number_unsigned()) return std::to_string(j.get<std::uint64_t>());
  if (j.is_number_integer()) return std::to_string(j.get<std::int64_t>());
  return "null";
}

void flatten(const json& j, const std::string& prefix, std::string& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      const std::string key =
          prefix.empty() ? it.key() : prefix + "." + it.key();
      flatten(it.value(), key, out);
    }
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i)
      flatten(j[i], prefix + "[" + std::to_string(i) + "]", out);
    if (j.empty()) out += "  " + prefix + ": []\n";
  } else {
    out += "  " + prefix + ": " + leaf_text(j) + "\n";
  }
}

}  // namespace

json report_to_json(const Report& r) {
  json inputs = json::array();
  for (const auto& in : r.inputs)
    inputs.push_back(json{{"path", in.name}, {"sha256", in.sha256}});
  json provenance{{"version", kToolVersion}, {"inputs", inputs}};
  if (r.seed) provenance["seed"] = *r.seed;
  return json{{"verb", r.verb},
              {"verdict", r.verdict},
              {"payload", r.payload},
              {"provenance", provenance}};
}

std::string render_json(const Report& r) {
  return report_to_json(r).dump(2) + "\n";
}

std::string render_text(const Report& r) {
  std::string out;
  out += "verb: " + r.verb + "\n";
  out += "verdict: " + r.verdict + "\n";
  out += "version: " + std::string(kToolVersion) + "\n";
  for (const auto& in : r.inputs)
    out += "input: " + in.name + " sha256=" + in.sha256 + "\n";
  if (r.seed) out += "seed: " + std::to_string(*r.seed) + "\n";
  out += "payload:\n";
  flatten(r.payload, "", out);
  return out;
}

}  // namespace qframe::io
