#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "isac/errors.hpp"
#include "isac/montecarlo.hpp"
#include "parallel.hpp"
#include "spectral.hpp"

namespace isac {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kMaxNewtonSteps = 8;

// Matched filter against a fixed reference, circular over the window.
class CorrelationReceiver {
 public:
  explicit CorrelationReceiver(const PulseSamples& reference)
      : n_(reference.size()),
        dt_(reference.sample_period_s()),
        ref_spectrum_(spectral::forward(reference.observation())),
        omega_(n_) {
    for (std::size_t k = 0; k < n_; ++k) {
      omega_[k] = kTwoPi * spectral::bin_frequency(k, n_, reference.sample_rate_hz);
    }
  }

  std::size_t size() const { return n_; }
  double window() const { return static_cast<double>(n_) * dt_; }

  double estimate(std::span<const cplx> z, DelayRefinement refinement) const {
    if (z.size() != n_) throw DomainError("observation length differs from the reference");
    CVector product = spectral::forward(CVector(z.begin(), z.end()));
    for (std::size_t k = 0; k < n_; ++k) product[k] *= std::conj(ref_spectrum_[k]);
    const CVector corr = spectral::inverse(product);

    std::size_t peak = 0;
    for (std::size_t l = 1; l < n_; ++l) {
      if (std::abs(corr[l]) > std::abs(corr[peak])) peak = l;
    }
    const double y0 = std::abs(corr[peak]);
    const double ym = std::abs(corr[(peak + n_ - 1) % n_]);
    const double yp = std::abs(corr[(peak + 1) % n_]);
    const double curvature = ym - 2.0 * y0 + yp;
    double frac = curvature < 0.0 ? 0.5 * (ym - yp) / curvature : 0.0;
    frac = std::clamp(frac, -0.5, 0.5);
    double tau = (static_cast<double>(spectral::signed_bin(peak, n_)) + frac) * dt_;

    if (refinement == DelayRefinement::newton) tau = newton(product, tau);
    return wrap(tau);
  }

 private:
  // Maximizes |c(tau)|^2 with c(tau) = (1/N) sum_k P_k exp(j w_k tau).
  double newton(const CVector& product, double tau) const {
    for (int it = 0; it < kMaxNewtonSteps; ++it) {
      cplx c{0.0, 0.0}, c1{0.0, 0.0}, c2{0.0, 0.0};
      for (std::size_t k = 0; k < n_; ++k) {
        if (product[k] == cplx{0.0, 0.0}) continue;
        const double w = omega_[k];
        const cplx term = product[k] * std::polar(1.0, w * tau);
        c += term;
        c1 += cplx{0.0, w} * term;
        c2 += -(w * w) * term;
      }
      const double grad = 2.0 * std::real(std::conj(c) * c1);
      const double hess = 2.0 * (std::norm(c1) + std::real(std::conj(c) * c2));
      if (!(hess < 0.0)) break;
      const double step = std::clamp(-grad / hess, -dt_, dt_);
      tau += step;
      if (std::abs(step) < 1e-9 * dt_) break;
    }
    return tau;
  }

  double wrap(double tau) const {
    const double w = window();
    tau = std::remainder(tau, w);
    return tau == -0.5 * w ? 0.5 * w : tau;
  }

  std::size_t n_;
  double dt_;
  CVector ref_spectrum_;
  std::vector<double> omega_;
};

}  // namespace

double estimate_delay(const PulseSamples& reference, std::span<const cplx> z,
                      DelayRefinement refinement) {
  if (reference.samples.empty()) throw DomainError("reference pulse is empty");
  return CorrelationReceiver(reference).estimate(z, refinement);
}

DelayEstimationStats simulate_delay_estimation(const PulseSamples& pulse,
                                               const InterferencePulse& h,
                                               const ObservationModel& model,
                                               double true_delay_s,
                                               const DelayEstimationOptions& options) {
  if (options.n_trials < 1) throw DomainError("n_trials must be >= 1");
  if (pulse.samples.empty()) throw DomainError("pulse is empty");
  if (h.h.size() != pulse.size()) {
    throw DomainError("interference shape and pulse differ in length");
  }
  if (!(std::isfinite(model.noise_power_w) && model.noise_power_w >= 0.0) ||
      !(model.radar_power_gain * model.radar_power_w > 0.0) || !(model.p_c2_w >= 0.0) ||
      !(model.comm_power_gain >= 0.0)) {
    throw DomainError("observation model needs a radar echo and nonnegative powers");
  }
  const double half_window = 0.5 * pulse.window_s();
  if (!std::isfinite(true_delay_s) || std::abs(true_delay_s) >= half_window) {
    throw DomainError("true delay must lie strictly inside (-W/2, W/2)");
  }

  const CorrelationReceiver receiver(pulse);
  const CVector echo = delayed(pulse, true_delay_s).observation();
  const double echo_amp = std::sqrt(model.radar_power_gain * model.radar_power_w);
  const double interference_amp = std::sqrt(model.comm_power_gain * model.p_c2_w);
  const std::size_t n = pulse.size();
  const double window = pulse.window_s();

  const std::size_t chunks = (options.n_trials + detail::kChunk - 1) / detail::kChunk;
  std::vector<detail::RunningStats> sq(chunks), err(chunks);
  detail::for_each_chunk(
      options.n_trials, options.threads,
      [&](std::size_t c, std::size_t begin, std::size_t end) {
        CVector z(n);
        for (std::size_t i = begin; i < end; ++i) {
          TrialRng rng(options.seed, RngStream::delay_estimation, i);
          const cplx s2 = rng.complex_normal(1.0);
          for (std::size_t j = 0; j < n; ++j) {
            z[j] = echo_amp * echo[j] + interference_amp * s2 * h.h[j] +
                   rng.complex_normal(model.noise_power_w);
          }
          const double e =
              std::remainder(receiver.estimate(z, options.refinement) - true_delay_s, window);
          sq[c].push(e * e);
          err[c].push(e);
        }
      });

  detail::RunningStats sq_total, err_total;
  for (std::size_t c = 0; c < chunks; ++c) {
    sq_total.merge(sq[c]);
    err_total.merge(err[c]);
  }
  return DelayEstimationStats{sq_total.stats(options.seed), err_total.stats(options.seed)};
}

}  // namespace isac
