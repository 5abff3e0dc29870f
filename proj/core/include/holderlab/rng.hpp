#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace holderlab {

/// splitmix64 finalizer. Derives independent per-item seeds from a master
/// seed so that results do not depend on evaluation order or worker count.
constexpr std::uint64_t mix_seed(std::uint64_t master, std::uint64_t stream) noexcept {
  std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Thin wrapper over mt19937_64 with distributions written out by hand so
/// draws are identical across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform integer in [lo, hi].
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(engine_() % span);
  }
  bool bernoulli(double p) { return uniform() < p; }
  /// Exp(1); strictly positive.
  double exponential() {
    double u = uniform();
    return -std::log1p(-u) + 0x1.0p-60;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace holderlab
