#ifndef CVINFER_RNG_HPP_
#define CVINFER_RNG_HPP_

#include <cstdint>
#include <vector>

namespace cvinfer {

double normal_quantile(double p);  // distributions.hpp owns the definition

/// SplitMix64 run in counter mode: the i-th output is a fixed bijective mix
/// of seed + (i+1) * golden-ratio increment, so streams are seedable,
/// random-access, and reproducible from the written description alone.
/// Gaussian draws go through the inverse normal CDF, keeping streams
/// portable across implementations that follow the same recipe.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t counter = 0)
      : seed_(seed), counter_(counter) {}

  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
  }

  static std::uint64_t value_at(std::uint64_t seed, std::uint64_t counter) {
    return mix(seed + (counter + 1) * 0x9E3779B97F4A7C15ULL);
  }

  /// Seed for an independent substream (one per simulation replication).
  static std::uint64_t substream_seed(std::uint64_t master,
                                      std::uint64_t index) {
    return value_at(master, index);
  }

  std::uint64_t next_u64() { return value_at(seed_, counter_++); }

  /// Uniform on the open interval (0, 1): (top 53 bits + 1/2) * 2^-53.
  double uniform01() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Standard normal via the inverse-CDF method.
  double standard_normal() { return normal_quantile(uniform01()); }

  /// Uniform index in [0, n) as next_u64() mod n.
  std::uint64_t index(std::uint64_t n) { return next_u64() % n; }

  /// Fisher-Yates shuffle driven by index draws, back to front.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[index(i)]);
    }
  }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_;
};

}  // namespace cvinfer

#endif  // CVINFER_RNG_HPP_
