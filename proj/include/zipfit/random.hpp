#pragma once

#include <concepts>
#include <cstdint>
#include <random>

namespace zipfit {

// Anything that hands out uniform variates on (0, 1].
template <class T>
concept UniformSource = requires(T& source) {
  { source.uniform() } -> std::convertible_to<double>;
};

// Deterministic uniform (0, 1] generator. A stream keyed by
// (base_seed, repetition, index) depends on nothing else, so replicate
// results do not depend on which worker ran them. Single owner; never share.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed);
  RandomStream(std::uint64_t base_seed, std::uint64_t repetition,
               std::uint64_t index);

  // 53-bit resolution; never returns 0.
  double uniform() {
    return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
  }

  std::uint64_t next_u64() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace zipfit
