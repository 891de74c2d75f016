#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>

namespace polegrad {

// xoshiro256++ seeded through splitmix64. The generator is fixed (not
// std::mt19937 or libc rand) so that a given seed reproduces the exact same
// draw sequence on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t x = seed;
    for (auto& word : state_) word = split_mix(x);
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform double in [0, 1), 53 random mantissa bits.
  double unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform double in [lo, hi).
  double uniform(double lo, double hi) {
    if (!(lo < hi)) {
      throw std::invalid_argument("Rng::uniform: interval [lo, hi) is empty");
    }
    return lo + (hi - lo) * unit();
  }

  // Index i drawn with probability probs[i]. probs must be a distribution:
  // non-negative entries summing to 1 within 1e-9.
  std::size_t choice(std::span<const double> probs) {
    if (probs.empty()) {
      throw std::invalid_argument("Rng::choice: empty distribution");
    }
    double sum = 0.0;
    for (double p : probs) {
      if (!(p >= 0.0)) {
        throw std::invalid_argument("Rng::choice: negative probability");
      }
      sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
      throw std::invalid_argument("Rng::choice: probabilities do not sum to 1");
    }
    const double u = unit();
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < probs.size(); ++i) {
      acc += probs[i];
      if (u < acc) return i;
    }
    return probs.size() - 1;
  }

 private:
  static std::uint64_t rotl(std::uint64_t v, int k) {
    return (v << k) | (v >> (64 - k));
  }

  static std::uint64_t split_mix(std::uint64_t& x) {
    std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::array<std::uint64_t, 4> state_;
};

}  // namespace polegrad
