#pragma once

// Report envelope emitted by every command: a short verdict token, a JSON
// payload with the numbers and certificates, and a provenance block (tool
// version, SHA-256 digest of each input file, seed).  Both renderings are
// deterministic functions of the report, so identical inputs and seeds give
// byte-identical output.

#include <cstdint>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

namespace qframe::io {

inline constexpr const char* kToolVersion = "0.1.0";

struct InputDigest {
  std::string name;    // path as given on the command line
  std::string sha256;  // hex digest of the file bytes
};

struct Report {
  std::string verb;
  std::string verdict;     // machine-readable token, e.g. "contextual"
  nlohmann::json payload;  // object; keys serialize sorted
  std::vector<InputDigest> inputs;
  std::optional<std::uint64_t> seed;
};

nlohmann::json report_to_json(const Report& r);

// Canonical JSON rendering (2-space indent, sorted keys, trailing newline).
std::string render_json(const Report& r);

// Flat text rendering: verdict and provenance verbatim, payload flattened to
// one "path: value" line per leaf, doubles at 12 significant digits.
std::string render_text(const Report& r);

}  // namespace qframe::io
