#pragma once

#include <cstdint>
#include <utility>

#include "syncbench/types.hpp"

namespace syncbench {

// Draw-site tags. Each (SeedSpec, tag) pair opens an independent stream, so
// the truth/mask/noise draws of one replicate never interleave and adding or
// removing a consumer cannot shift anybody else's values.
namespace stream_tag {
inline constexpr std::uint64_t kTruth = 1;
inline constexpr std::uint64_t kMask = 2;
inline constexpr std::uint64_t kNoise = 3;
inline constexpr std::uint64_t kEigStart = 4;
}  // namespace stream_tag

namespace detail {

// splitmix64 finalizer. Stateless; applied to key + i*gamma it yields a
// counter-based stream, which is exactly how StreamRng uses it.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace detail

// Counter-based generator: output i is mix64(key + i*gamma) where the key is
// derived from (master_seed, replicate_index, site_tag). No sequential state
// beyond the counter, so streams are splittable and replicates independent.
class StreamRng {
 public:
  StreamRng(const SeedSpec& seed, std::uint64_t site_tag)
      : key_(derive_key(seed, site_tag)) {}

  std::uint64_t next_u64() {
    return detail::mix64(key_ + (++counter_) * kGamma);
  }

  // Uniform on [0, 1), 53-bit resolution.
  double uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform on (0, 1]; never returns 0, safe under log().
  double uniform_open01() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  // Standard normal via Box-Muller, one cached mate per pair.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double r = std::sqrt(-2.0 * std::log(uniform_open01()));
    const double t = 2.0 * kPi * uniform01();
    spare_ = r * std::sin(t);
    have_spare_ = true;
    return r * std::cos(t);
  }

  bool bernoulli(double p) { return uniform01() < p; }

 private:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;
  static constexpr double kPi = 3.141592653589793238462643383279502884;

  static std::uint64_t derive_key(const SeedSpec& seed, std::uint64_t site_tag) {
    std::uint64_t k = detail::mix64(seed.master_seed);
    k = detail::mix64(k ^ detail::mix64(seed.replicate_index + 0x632BE59BD9B4E019ULL));
    k = detail::mix64(k ^ detail::mix64(site_tag + 0x1B56C4E9D6E5FE6BULL));
    return k;
  }

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace syncbench
