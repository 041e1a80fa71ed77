#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace robosym {

/// Deterministic random source. All draws go through explicit bit
/// manipulation of the mt19937_64 stream so sequences are identical across
/// platforms and standard library implementations.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed ^ 0x9e3779b97f4a7c15ull) {}

  uint64_t bits() { return engine_(); }

  /// Uniform double in [0, 1).
  double uniform() { return static_cast<double>(bits() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal via Box-Muller.
  double normal();

  /// Uniform integer in [0, n).
  int uniform_int(int n);

  /// Fisher-Yates shuffle of indices [0, n).
  std::vector<int> permutation(int n);

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// Runs fn(i) for i in [0, n). Thread count comes from MORPHOSYM_THREADS
/// (0 or unset = hardware concurrency). Each index writes its own output
/// slot, so results are identical to the serial loop.
void parallel_for(int n, const std::function<void(int)>& fn);

int configured_thread_count();

}  // namespace robosym
