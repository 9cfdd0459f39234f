#pragma once

#include <cstdint>
#include <random>

#include "tricount/sts.hpp"

namespace tricount {

/// Platform-stable random source: std::mt19937_64 (whose output sequence is
/// fixed by the standard) with rejection-sampled bounded draws, so a seed
/// reproduces the same systems everywhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, n). n > 0.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t threshold = (0 - n) % n;
    for (;;) {
      const std::uint64_t x = engine_();
      if (x >= threshold) return x % n;
    }
  }

 private:
  std::mt19937_64 engine_;
};

/// SplitMix64 finalizer; used to derive independent sub-seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

struct HillClimbConfig {
  int v = 7;
  std::uint64_t seed = 0;
  /// Switch steps without a new best block count before restarting.
  /// 0 selects the default of 100 * v^2.
  std::uint64_t max_stagnation = 0;
  int max_restarts = 8;
};

/// Stinson's hill-climbing construction of a random STS(v).
/// Throws ValidationError for inadmissible v and BudgetExhausted when every
/// restart stagnates.
SteinerTripleSystem hill_climb(const HillClimbConfig& cfg);

}  // namespace tricount
