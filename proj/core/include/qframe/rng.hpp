#pragma once

#include <cmath>
#include <cstdint>

namespace qframe {

// SplitMix64 (Steele, Lea, Flood 2014).  Chosen over std:: engines because
// the output stream is fully specified by the algorithm, so seeded runs are
// reproducible across platforms and standard-library versions.  Distribution
// helpers are hand-rolled below for the same reason: std::uniform_*
// distributions are implementation-defined.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Deterministic substream for a tagged component (one per measurement
  // context, per trial, ...).  Children of distinct tags are decorrelated by
  // the same finalizer used for next().
  SplitMix64 split(std::uint64_t tag) const {
    std::uint64_t z = state_ ^ (0x632BE59BD9B4E019ULL * (tag + 1));
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return SplitMix64(z ^ (z >> 31));
  }

  // Uniform on [0,1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Standard normal via Box-Muller (the cached second value is discarded so
  // the draw count per call is fixed).
  double gaussian() {
    double u1 = uniform(), u2 = uniform();
    while (u1 == 0.0) u1 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * 3.14159265358979323846 * u2);
  }

  std::uint64_t state() const { return state_; }

 private:
  std::uint64_t state_;
};

}  // namespace qframe
