#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qframe {

// A single violated constraint, located by a JSON-pointer-like path into the
// offending value ("" means the value as a whole).
struct Violation {
  std::string pointer;
  std::string message;
};

inline std::string join_violations(const std::vector<Violation>& vs) {
  std::string out;
  for (const auto& v : vs) {
    if (!out.empty()) out += "; ";
    if (!v.pointer.empty()) out += v.pointer + ": ";
    out += v.message;
  }
  return out;
}

// Structural or precondition failure on an input value.  Carries every
// violation found, not just the first one.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<Violation> violations)
      : std::runtime_error(join_violations(violations)),
        violations_(std::move(violations)) {}
  ValidationError(std::string pointer, std::string message)
      : ValidationError(std::vector<Violation>{
            {std::move(pointer), std::move(message)}}) {}

  const std::vector<Violation>& violations() const noexcept {
    return violations_;
  }

 private:
  std::vector<Violation> violations_;
};

// A resource cap was exceeded (enumeration size, search budget).  The caller
// can retry with a larger cap; the message names the cap and the actual size.
class CapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A joint deployment of noncommuting observables was requested.
class NonCodeployableError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qframe
