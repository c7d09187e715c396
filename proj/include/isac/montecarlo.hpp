#pragma once

// Empirical checks of the closed forms: ergodic rates under Rayleigh fading,
// and a waveform-level correlation receiver whose delay error is compared
// with the CRLB.

#include <cstddef>
#include <cstdint>
#include <span>

#include "isac/bounds.hpp"
#include "isac/fim.hpp"
#include "isac/linkbudget.hpp"
#include "isac/rng.hpp"

namespace isac {

/// Unit-mean exponential power factors (Rayleigh amplitude) applied to
/// |b_c|^2 and |a_r|^2. A disabled path draws the constant 1.
struct FadingOptions {
  bool comm = true;
  bool radar = true;
};

struct FadingDraw {
  double comm_power_factor = 1.0;
  double radar_power_factor = 1.0;
};

/// Draws in a fixed order (comm, then radar) so toggling one path does not
/// change the other's samples.
FadingDraw draw_fading(TrialRng& rng, const FadingOptions& options);

/// Sample mean with its standard error (sample std / sqrt(n)).
struct TrialStats {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t n_trials = 0;
  std::uint64_t seed = 0;

  friend bool operator==(const TrialStats&, const TrialStats&) = default;
};

struct ErgodicOptions {
  std::size_t n_trials = 100000;
  std::uint64_t seed = 1;
  FadingOptions fading;
  unsigned threads = 1;
};

struct ErgodicRates {
  Scheme scheme = Scheme::rs;
  double knob = 0.0;
  TrialStats r_est;
  TrialStats r_c;
};

/// E[rate(fading)]: expectation outside the logarithm. Trial i always uses
/// substream i, so common random numbers are shared across schemes and knobs,
/// and results do not depend on `threads`.
ErgodicRates ergodic_rates(Scheme scheme, const SystemParams& params, double knob,
                           const ErgodicOptions& options);

enum class DelayRefinement {
  /// 3-point parabola on the correlation magnitude around the peak sample.
  parabolic,
  /// Parabola, then Newton steps on the band-limited correlation magnitude
  /// evaluated exactly in the frequency domain.
  newton,
};

struct DelayEstimationOptions {
  std::size_t n_trials = 1000;
  std::uint64_t seed = 1;
  DelayRefinement refinement = DelayRefinement::newton;
  unsigned threads = 1;
};

struct DelayEstimationStats {
  TrialStats squared_error;  // s^2
  TrialStats error;          // s, for bias checks
};

/// Correlation-receiver delay estimate from an observation vector `z` in the
/// observation convention. Returns a delay in (-W/2, W/2].
double estimate_delay(const PulseSamples& reference, std::span<const cplx> z,
                      DelayRefinement refinement);

/// Per trial: z = a_r sqrt(P_r) r(t - tau) + b_c sqrt(P_c2) s_2 h + n with
/// s_2 ~ CN(0, 1) constant over the block and n ~ CN(0, sigma_n^2 I).
/// |true_delay_s| must be below half the observation window.
DelayEstimationStats simulate_delay_estimation(const PulseSamples& pulse,
                                               const InterferencePulse& h,
                                               const ObservationModel& model,
                                               double true_delay_s,
                                               const DelayEstimationOptions& options);

}  // namespace isac
