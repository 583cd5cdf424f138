#pragma once

// Seeded instance families. All sampling is integer arithmetic on micro-unit
// coordinates driven by xorshift64*, so identical specs give identical files
// on every platform.

#include <cstdint>
#include <string>

#include "bpst/instance.hpp"

namespace bpst {

/// xorshift64* (Vigna). State starts at seed ^ 0x9E3779B97F4A7C15, or 1 if
/// that is zero. Each step: x ^= x >> 12; x ^= x << 25; x ^= x >> 27; the
/// output is x * 0x2545F4914F6CDD1D (mod 2^64).
class XorShift64Star {
 public:
  explicit XorShift64Star(std::uint64_t seed);

  std::uint64_t next();
  /// Uniform in [0, bound) by modulo reduction; bound > 0.
  std::uint64_t below(std::uint64_t bound);
  /// Uniform in [lo, hi].
  std::int64_t between(std::int64_t lo, std::int64_t hi);
  bool coin() { return (next() >> 63) != 0; }

 private:
  std::uint64_t state_;
};

enum class Family { Uniform, Clusters, Chain, Checker, GridStress };

const char* to_string(Family f);
Family parse_family(const std::string& name);  // throws Error(Usage)

/// Family parameters are in micro-units (1e-6 input units).
struct GenSpec {
  Family family = Family::Uniform;
  int n = 10;
  std::uint64_t seed = 1;
  std::int64_t width = 100'000'000;   // side of the sampling square
  int clusters = 4;
  std::int64_t spread = 3'000'000;    // cluster half-width
  std::int64_t spacing = 1'000'000;   // chain step
  std::int64_t tile = 10'000'000;     // checker tile side
  std::int64_t step = 1'000'000;      // grid-stress longest step
};

/// Throws Error(DegenerateSpec) for n < 1 or non-positive sizes.
Instance generate(const GenSpec& spec);

}  // namespace bpst
