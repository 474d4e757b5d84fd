#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string>

namespace bilex {

// Seeded 64-bit Mersenne twister with a platform-independent uniform draw.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 1) : engine_(seed) {}

  // Uniform in [0, 1) from the top 53 bits of one engine output.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, n).
  std::size_t below(std::size_t n);

  std::string serialize() const;
  static Rng deserialize(const std::string& text);

  std::mt19937_64& engine() { return engine_; }

  friend bool operator==(const Rng& a, const Rng& b) { return a.engine_ == b.engine_; }

 private:
  std::mt19937_64 engine_;
};

// Index drawn from non-negative unnormalized weights by cumulative-sum
// inversion of a single uniform draw.
std::size_t sample_index(std::span<const double> weights, double u);

}  // namespace bilex
