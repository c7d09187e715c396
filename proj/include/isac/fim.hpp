#pragma once

// Sampled-pulse Fisher information for the echo delay, with the second comm
// stream as a block-constant Gaussian amplitude on a known shape h, i.e. the
// observation covariance is |b_c|^2 P_c2 h h^H + sigma_n^2 I.
//
// Discrete convention: a pulse of TB * oversample samples is mapped to the
// observation vector sqrt(1/oversample) * samples, so the flat-spectrum pulse
// has ||r'||^2 = gamma^2 B^2 TB and noise is CN(0, sigma_n^2 I). Under this
// convention the pessimistic form reproduces the closed-form CRLB.

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "isac/linkbudget.hpp"

namespace isac {

using cplx = std::complex<double>;
using CVector = std::vector<cplx>;

/// A periodic complex baseband pulse sampled at oversample * B, with its
/// exact (spectral) time derivative in 1/s.
struct PulseSamples {
  CVector samples;
  CVector derivative;
  double sample_rate_hz = 0.0;
  double bandwidth_hz = 0.0;
  int oversample = 1;

  std::size_t size() const { return samples.size(); }
  double sample_period_s() const { return 1.0 / sample_rate_hz; }
  double window_s() const { return static_cast<double>(size()) / sample_rate_hz; }

  /// samples scaled into the observation-vector convention.
  CVector observation() const;
  /// derivative scaled into the observation-vector convention (r').
  CVector observation_derivative() const;
};

/// Interference shape h. `energy` is ||h||^2 in the observation convention.
struct InterferencePulse {
  CVector h;
  double energy = 1.0;
};

/// Flat power spectrum over [-B/2, B/2) with quadratic (chirp) phase,
/// normalized to unit average power; tb * oversample samples.
PulseSamples make_flat_pulse(int tb, int oversample, double bandwidth_hz);

/// Copy of `pulse` delayed by `delay_s` (circular), applied as a spectral
/// phase ramp so fractional delays are exact for the band-limited pulse.
PulseSamples delayed(const PulseSamples& pulse, double delay_s);

/// Mean-square bandwidth sum|r'|^2 / sum|r|^2 in rad^2/s^2; gamma^2 B^2 for
/// an ideal flat spectrum.
double mean_square_bandwidth(const PulseSamples& pulse);

/// Unit-energy flat-spectrum shape with seeded random phases, independent of
/// the radar pulse.
InterferencePulse make_interference_pulse(int tb, int oversample, std::uint64_t seed);

/// Rescales `shape` to unit energy. Throws on an all-zero shape.
InterferencePulse make_interference_pulse(CVector shape);

/// Powers and gains entering the delay observation.
struct ObservationModel {
  double radar_power_gain = 0.0;  // |a_r|^2
  double radar_power_w = 0.0;     // P_r
  double comm_power_gain = 0.0;   // |b_c|^2
  double p_c2_w = 0.0;            // power of the interfering stream
  double noise_power_w = 0.0;     // sigma_n^2

  static ObservationModel from(const DerivedParams& d, double p_r_w, double p_c2_w);
};

/// Full covariance solve: 2 |a_r|^2 P_r Re{r'^H Sigma^-1 r'}. The factor 2
/// is the complex-observation FIM convention.
double fim_exact(std::span<const cplx> derivative, std::span<const cplx> h,
                 const ObservationModel& m);

/// Rank-one closed form with rho = |b_c|^2 P_c2 / sigma_n^2:
/// (2 |a_r|^2 P_r / sigma_n^2) (||r'||^2 - rho |h^H r'|^2 / (1 + rho ||h||^2)).
double fim_sherman_morrison(std::span<const cplx> derivative, std::span<const cplx> h,
                            const ObservationModel& m);

/// Worst-case alignment of h with r': 2 |a_r|^2 P_r ||r'||^2 / (sigma_n^2 + |b_c|^2 P_c2).
double fim_pessimistic(std::span<const cplx> derivative, const ObservationModel& m);

double fim_exact(const PulseSamples& pulse, const InterferencePulse& h,
                 const ObservationModel& m);
double fim_sherman_morrison(const PulseSamples& pulse, const InterferencePulse& h,
                            const ObservationModel& m);
double fim_pessimistic(const PulseSamples& pulse, const ObservationModel& m);

/// 1 / J. Rejects nonpositive or non-finite information.
double crlb_from_fim(double fim_value);

}  // namespace isac
