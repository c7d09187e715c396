#pragma once

// Counter-based random streams. Every (seed, stream, index) triple names an
// independent SplitMix64 sequence, so trial i draws the same numbers no
// matter how trials are partitioned across workers.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

namespace isac {

/// Stream identifiers, one per consumer of randomness.
enum class RngStream : std::uint64_t {
  fading = 1,
  delay_estimation = 2,
  interference_shape = 3,
  test = 0xfeed,
};

class TrialRng {
 public:
  TrialRng(std::uint64_t seed, RngStream stream, std::uint64_t index)
      : state_(mix(mix(seed ^ (static_cast<std::uint64_t>(stream) * kGolden)) + index)) {}

  std::uint64_t next() {
    state_ += kGolden;
    return mix(state_);
  }

  /// Uniform on the open interval (0, 1) with 53-bit resolution.
  double uniform_open() {
    return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Unit-mean exponential; strictly positive.
  double exponential() { return -std::log(uniform_open()); }

  /// Circularly-symmetric complex Gaussian with E|z|^2 = variance (Box-Muller).
  std::complex<double> complex_normal(double variance) {
    const double radius = std::sqrt(-variance * std::log(uniform_open()));
    const double phase = 2.0 * std::numbers::pi * uniform_open();
    return std::polar(radius, phase);
  }

  /// Real standard normal.
  double normal() {
    const auto z = complex_normal(2.0);
    return z.real();
  }

 private:
  static constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
};

}  // namespace isac
