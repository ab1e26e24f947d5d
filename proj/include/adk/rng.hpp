#pragma once

#include <cstdint>

namespace adk {

// Counter-based generator built on splitmix64 finalizers.  Every draw is a
// pure function of (seed, counter), so streams can be split per instance or
// per trial and replayed independently of evaluation order.

inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t hash_combine(std::uint64_t a, std::uint64_t b) {
  return mix64(a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2)));
}

/// Uniform double in [0, 1) from 53 random bits.
inline double unit_double(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : seed_(seed) {}

  /// Child stream; children with distinct tags are independent.
  RngStream child(std::uint64_t tag) const {
    return RngStream(hash_combine(seed_, tag));
  }

  std::uint64_t next() { return mix64(seed_ + 0x632be59bd9b4e019ULL * ++counter_); }

  /// Uniform in [0, bound); bound > 0.  Rejection keeps it unbiased.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = bound * (~0ULL / bound);
    std::uint64_t draw;
    do {
      draw = next();
    } while (draw >= limit);
    return draw % bound;
  }

  double uniform() { return unit_double(next()); }

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

}  // namespace adk
