#pragma once

#include <cstdint>
#include <random>

namespace foresight {

/// SplitMix64 finalizer. Used to derive independent stream seeds from a
/// base seed and an index.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Deterministic random source shared by the sampler and the simulator.
///
/// Engine: std::mt19937_64, whose output sequence is fixed by the C++
/// standard. Uniforms take the top 53 bits of one engine output. Normals use
/// the Box-Muller cosine branch on two uniforms (no caching), so every
/// gaussian() call consumes exactly two engine outputs. The standard library
/// distributions are not used because their algorithms are
/// implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1).
  double uniform() noexcept {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Uniform in (0, 1].
  double uniform_open_low() noexcept { return 1.0 - uniform(); }

  /// Standard normal draw scaled to N(mean, stddev).
  double gaussian(double mean = 0.0, double stddev = 1.0) noexcept;

  std::uint64_t next_u64() noexcept { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace foresight
