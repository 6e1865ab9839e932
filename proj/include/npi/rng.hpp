#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace npi {

// Deterministic RNG. The engine is the standardized mt19937_64 (bit-exact
// across platforms); bounded draws are implemented here because the std
// distributions are implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, n) via rejection of the biased tail.
  int uniform_int(int n) {
    auto bound = static_cast<std::uint64_t>(n);
    std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x = engine_();
    while (x >= limit) x = engine_();
    return static_cast<int>(x % bound);
  }

  // Uniform in [0, 1) with 53-bit resolution.
  double uniform_double() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  bool coin() { return (engine_() & 1u) != 0; }

  template <class T>
  void shuffle(std::span<T> items) {
    for (int i = static_cast<int>(items.size()) - 1; i > 0; --i) {
      int j = uniform_int(i + 1);
      std::swap(items[i], items[static_cast<std::size_t>(j)]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

// splitmix64 finalizer; used to derive independent stream seeds.
inline std::uint64_t mix_seed(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b = 0) {
  return mix_seed(mix_seed(base ^ (0x6a09e667f3bcc908ULL + a)) + b);
}

}  // namespace npi
