#ifndef CIRCLAW_RNG_HPP
#define CIRCLAW_RNG_HPP

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace circlaw {

/// Deterministic random stream. Identical (seed, stream_id) pairs give
/// identical sequences on every platform: only the raw 64-bit engine output
/// is consumed, never the implementation-defined std distributions.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id)
      : seed_(seed), stream_id_(stream_id), engine_(mix(seed, stream_id)) {}

  [[nodiscard]] std::uint64_t seed() const { return seed_; }
  [[nodiscard]] std::uint64_t stream_id() const { return stream_id_; }

  /// A child stream; children with distinct ids are independent of each
  /// other and of the parent.
  [[nodiscard]] RngStream split(std::uint64_t child) const {
    return RngStream(seed_, splitmix64(stream_id_ ^ splitmix64(child + 0x632be59bd9b4e019ULL)));
  }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform on (0, 1].
  double uniform_pos() { return 1.0 - uniform(); }

  /// Standard normal via Box-Muller; both variates of a pair are used.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double r = std::sqrt(-2.0 * std::log(uniform_pos()));
    const double phi = 2.0 * std::numbers::pi * uniform();
    spare_ = r * std::sin(phi);
    has_spare_ = true;
    return r * std::cos(phi);
  }

  /// Exp(1).
  double exponential() { return -std::log(uniform_pos()); }

  static std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

 private:
  static std::uint64_t mix(std::uint64_t seed, std::uint64_t stream) {
    return splitmix64(splitmix64(seed) ^ splitmix64(stream ^ 0xd1b54a32d192ed03ULL));
  }

  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace circlaw

#endif  // CIRCLAW_RNG_HPP
