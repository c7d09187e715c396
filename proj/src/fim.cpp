#include "isac/fim.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Dense>

#include "isac/errors.hpp"
#include "isac/rng.hpp"
#include "spectral.hpp"

namespace isac {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require(bool ok, const std::string& message) {
  if (!ok) throw DomainError(message);
}

void check_sizes(int tb, int oversample) {
  require(tb >= 2, "time-bandwidth product must be >= 2 samples");
  require(oversample >= 1, "oversample must be >= 1");
}

// In-band signed bins [lo, lo + tb), tb of them, centred on DC.
bool in_band(long m, int tb) {
  const long lo = -static_cast<long>(tb / 2);
  return m >= lo && m < lo + tb;
}

CVector scaled(const CVector& v, double factor) {
  CVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] * factor;
  return out;
}

double squared_norm(std::span<const cplx> v) {
  double acc = 0.0;
  for (const auto& x : v) acc += std::norm(x);
  return acc;
}

void check_model(const ObservationModel& m) {
  require(std::isfinite(m.noise_power_w) && m.noise_power_w > 0.0,
          "noise power must be finite and > 0");
  require(std::isfinite(m.radar_power_gain) && m.radar_power_gain >= 0.0,
          "radar power gain must be finite and >= 0");
  require(std::isfinite(m.radar_power_w) && m.radar_power_w >= 0.0,
          "radar power must be finite and >= 0");
  require(std::isfinite(m.comm_power_gain) && m.comm_power_gain >= 0.0,
          "comm power gain must be finite and >= 0");
  require(std::isfinite(m.p_c2_w) && m.p_c2_w >= 0.0, "P_c2 must be finite and >= 0");
}

void check_pair(std::span<const cplx> derivative, std::span<const cplx> h) {
  require(!derivative.empty(), "pulse must not be empty");
  require(derivative.size() == h.size(), "pulse and interference shape differ in length");
}

}  // namespace

CVector PulseSamples::observation() const {
  return scaled(samples, std::sqrt(1.0 / oversample));
}

CVector PulseSamples::observation_derivative() const {
  return scaled(derivative, std::sqrt(1.0 / oversample));
}

PulseSamples make_flat_pulse(int tb, int oversample, double bandwidth_hz) {
  check_sizes(tb, oversample);
  require(std::isfinite(bandwidth_hz) && bandwidth_hz > 0.0, "bandwidth must be > 0");

  const std::size_t n = static_cast<std::size_t>(tb) * static_cast<std::size_t>(oversample);
  const double fs = bandwidth_hz * oversample;
  CVector spectrum(n, cplx{0.0, 0.0});
  CVector slope(n, cplx{0.0, 0.0});
  for (std::size_t k = 0; k < n; ++k) {
    const long m = spectral::signed_bin(k, n);
    if (!in_band(m, tb)) continue;
    // Discrete chirp: unit magnitude, quadratic phase spreads energy over the window.
    const double md = static_cast<double>(m);
    spectrum[k] = std::polar(1.0, -std::numbers::pi * md * md / tb);
    slope[k] = cplx{0.0, kTwoPi * spectral::bin_frequency(k, n, fs)} * spectrum[k];
  }

  PulseSamples pulse;
  pulse.samples = spectral::inverse(spectrum);
  pulse.derivative = spectral::inverse(slope);
  pulse.sample_rate_hz = fs;
  pulse.bandwidth_hz = bandwidth_hz;
  pulse.oversample = oversample;

  const double mean_power = squared_norm(pulse.samples) / static_cast<double>(n);
  const double norm = 1.0 / std::sqrt(mean_power);
  pulse.samples = scaled(pulse.samples, norm);
  pulse.derivative = scaled(pulse.derivative, norm);
  return pulse;
}

PulseSamples delayed(const PulseSamples& pulse, double delay_s) {
  require(std::isfinite(delay_s), "delay must be finite");
  require(!pulse.samples.empty(), "pulse must not be empty");
  const std::size_t n = pulse.size();
  CVector s = spectral::forward(pulse.samples);
  CVector ds = spectral::forward(pulse.derivative);
  for (std::size_t k = 0; k < n; ++k) {
    const double f = spectral::bin_frequency(k, n, pulse.sample_rate_hz);
    const cplx ramp = std::polar(1.0, -kTwoPi * f * delay_s);
    s[k] *= ramp;
    ds[k] *= ramp;
  }
  PulseSamples out = pulse;
  out.samples = spectral::inverse(s);
  out.derivative = spectral::inverse(ds);
  return out;
}

double mean_square_bandwidth(const PulseSamples& pulse) {
  const double energy = squared_norm(pulse.samples);
  require(energy > 0.0, "pulse has no energy");
  return squared_norm(pulse.derivative) / energy;
}

InterferencePulse make_interference_pulse(int tb, int oversample, std::uint64_t seed) {
  check_sizes(tb, oversample);
  const std::size_t n = static_cast<std::size_t>(tb) * static_cast<std::size_t>(oversample);
  TrialRng rng(seed, RngStream::interference_shape, 0);
  CVector spectrum(n, cplx{0.0, 0.0});
  for (std::size_t k = 0; k < n; ++k) {
    if (!in_band(spectral::signed_bin(k, n), tb)) continue;
    spectrum[k] = std::polar(1.0, kTwoPi * rng.uniform_open());
  }
  return make_interference_pulse(spectral::inverse(spectrum));
}

InterferencePulse make_interference_pulse(CVector shape) {
  const double energy = squared_norm(shape);
  require(std::isfinite(energy) && energy > 0.0, "interference shape has no energy");
  InterferencePulse out;
  out.h = scaled(shape, 1.0 / std::sqrt(energy));
  out.energy = squared_norm(out.h);
  return out;
}

ObservationModel ObservationModel::from(const DerivedParams& d, double p_r_w, double p_c2_w) {
  return ObservationModel{d.radar_power_gain, p_r_w, d.comm_power_gain, p_c2_w,
                          d.noise_power_w};
}

double fim_exact(std::span<const cplx> derivative, std::span<const cplx> h,
                 const ObservationModel& m) {
  check_pair(derivative, h);
  check_model(m);
  const auto n = static_cast<Eigen::Index>(derivative.size());
  Eigen::Map<const Eigen::VectorXcd> rp(derivative.data(), n);
  Eigen::Map<const Eigen::VectorXcd> hv(h.data(), n);

  Eigen::MatrixXcd cov = (m.comm_power_gain * m.p_c2_w) * (hv * hv.adjoint());
  cov.diagonal().array() += m.noise_power_w;
  const Eigen::LLT<Eigen::MatrixXcd> llt(cov);
  require(llt.info() == Eigen::Success, "observation covariance is not positive definite");
  const Eigen::VectorXcd x = llt.solve(rp);
  return 2.0 * m.radar_power_gain * m.radar_power_w * rp.dot(x).real();
}

double fim_sherman_morrison(std::span<const cplx> derivative, std::span<const cplx> h,
                            const ObservationModel& m) {
  check_pair(derivative, h);
  check_model(m);
  const double rho = m.comm_power_gain * m.p_c2_w / m.noise_power_w;
  cplx cross{0.0, 0.0};
  for (std::size_t i = 0; i < h.size(); ++i) cross += std::conj(h[i]) * derivative[i];
  const double correction = rho * std::norm(cross) / (1.0 + rho * squared_norm(h));
  return (2.0 * m.radar_power_gain * m.radar_power_w / m.noise_power_w) *
         (squared_norm(derivative) - correction);
}

double fim_pessimistic(std::span<const cplx> derivative, const ObservationModel& m) {
  require(!derivative.empty(), "pulse must not be empty");
  check_model(m);
  return (2.0 * m.radar_power_gain * m.radar_power_w /
          (m.noise_power_w + m.comm_power_gain * m.p_c2_w)) *
         squared_norm(derivative);
}

double fim_exact(const PulseSamples& pulse, const InterferencePulse& h,
                 const ObservationModel& m) {
  return fim_exact(pulse.observation_derivative(), h.h, m);
}

double fim_sherman_morrison(const PulseSamples& pulse, const InterferencePulse& h,
                            const ObservationModel& m) {
  return fim_sherman_morrison(pulse.observation_derivative(), h.h, m);
}

double fim_pessimistic(const PulseSamples& pulse, const ObservationModel& m) {
  return fim_pessimistic(pulse.observation_derivative(), m);
}

double crlb_from_fim(double fim_value) {
  require(std::isfinite(fim_value) && fim_value > 0.0,
          "Fisher information must be finite and > 0");
  return 1.0 / fim_value;
}

}  // namespace isac
