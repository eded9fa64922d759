#pragma once

#include <cstdint>
#include <string_view>

namespace xdiscord {

/// SplitMix64 (Steele, Lea & Flood). Fully specified integer arithmetic, so
/// a seed produces the same stream on every platform and compiler.
class SplitMix64 {
 public:
  static constexpr std::string_view kName = "splitmix64/v1";

  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  /// Independent stream for sample `index` of a run seeded with `seed`.
  /// Results of a run therefore do not depend on how samples are scheduled.
  static SplitMix64 stream(std::uint64_t seed, std::uint64_t index) {
    SplitMix64 mixer(seed ^ 0x6a09e667f3bcc909ULL);
    const std::uint64_t base = mixer.next();
    SplitMix64 s(base + index * 0xd1342543de82ef95ULL);
    s.next();
    return s;
  }

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::uint64_t state_;
};

}  // namespace xdiscord
