#pragma once

#include <cstdint>
#include <random>

namespace slopecls {

/// Stream role used when splitting one experiment seed into independent
/// generators.
enum class StreamRole : std::uint64_t { Train = 1, Validation = 2, Test = 3 };

/// Portable seeded generator: a std::mt19937_64 engine (whose output sequence
/// is fixed by the standard) plus hand-written uniform, normal and integer
/// draws, so results do not depend on the standard library's distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  /// Independent stream for (seed, replication, role). Seeds are derived with
  /// SplitMix64 so nearby inputs give unrelated engine states.
  static Rng stream(std::uint64_t seed, std::uint64_t replication,
                    StreamRole role);

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Standard normal via the Marsaglia polar method.
  double normal();
  /// Uniform integer on [0, bound), bound > 0, by rejection.
  std::uint64_t below(std::uint64_t bound);

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace slopecls
