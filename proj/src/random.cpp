#include "zipfit/random.hpp"

#include <array>

namespace zipfit {
namespace {

std::mt19937_64 keyed_engine(std::uint64_t a, std::uint64_t b,
                             std::uint64_t c) {
  const std::array<std::uint32_t, 6> words{
      static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
      static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32),
      static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(c >> 32)};
  std::seed_seq seq(words.begin(), words.end());
  return std::mt19937_64(seq);
}

}  // namespace

RandomStream::RandomStream(std::uint64_t seed)
    : engine_(keyed_engine(seed, 0, 0)) {}

RandomStream::RandomStream(std::uint64_t base_seed, std::uint64_t repetition,
                           std::uint64_t index)
    : engine_(keyed_engine(base_seed, repetition + 1, index)) {}

}  // namespace zipfit
