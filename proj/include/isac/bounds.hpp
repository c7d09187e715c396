#pragma once

// Closed-form inner bounds for the uplink sensing/communication coexistence
// problem: SIC-stage interference budgets, the delay CRLB, REIR/DIR rates
// for rate splitting (RS), spectral isolation (OMA) and decode-first sharing
// (NOMA), and the DIR-optimal RS power split.
//
// All rates are in bit/s. REIR carries the duty-cycle prefactor delta/(2T),
// so it is several orders of magnitude below the DIR figures.

#include <optional>
#include <string_view>

#include "isac/linkbudget.hpp"

namespace isac {

enum class Scheme { rs, oma, noma };

std::string_view to_string(Scheme scheme);
std::optional<Scheme> parse_scheme(std::string_view text);

/// Split of the user's power between the stream decoded before the radar
/// return (p_c1) and the one decoded after it (p_c2).
struct PowerSplit {
  double alpha = 0.0;
  double p_c1_w = 0.0;
  double p_c2_w = 0.0;

  /// p_c1 = (1 - alpha) P_c, p_c2 = alpha P_c. Rejects alpha outside [0, 1].
  static PowerSplit from_alpha(double alpha, double p_c_w);
};

/// One (R_est, R_c) operating point. `knob` is alpha (RS), mu (OMA) or the
/// fraction of P_c in use (NOMA).
struct RatePoint {
  double r_est_bps = 0.0;
  double r_c_bps = 0.0;
  Scheme scheme = Scheme::rs;
  double knob = 0.0;

  friend bool operator==(const RatePoint&, const RatePoint&) = default;
};

struct StreamRates {
  double r_c1_bps = 0.0;
  double r_c2_bps = 0.0;

  double sum() const { return r_c1_bps + r_c2_bps; }
};

/// Stationary point of R_c1 + R_c2 in alpha. `raw` may fall outside [0, 1];
/// `clamped` is the recommended split. `residual` is the stationarity
/// quadratic evaluated at `raw`, relative to its largest term.
struct AlphaOptimum {
  double raw = 0.0;
  double clamped = 0.0;
  double residual = 0.0;
};

/// Residual radar power left after subtracting the *predicted* echo,
/// P_r |a_r|^2 gamma^2 B^2 sigma_tau,proc^2.
double predicted_echo_residual(const DerivedParams& d, double p_r_w);

/// Interference plus noise seen by the first stream:
/// |b_c|^2 P_c2 + P_r |a_r|^2 gamma^2 B^2 sigma_proc^2 + sigma_n^2.
double int_noise_stream1(const DerivedParams& d, const PowerSplit& split, double p_r_w);

/// Pessimistic delay CRLB with the second stream as rank-one interference,
/// (sigma_n^2 + |b_c|^2 P_c2) / (2 gamma^2 B^2 TB |a_r|^2 P_r), in s^2.
/// Throws DomainError without a radar echo (P_r or |a_r|^2 zero).
double crlb_delay(const DerivedParams& d, double p_c2_w, double p_r_w);

/// Interference plus noise seen by the second stream after subtracting the
/// *estimated* echo. The CRLB is used as the operating estimation variance,
/// so this is a lower bound on the true residual (and the rates built on it
/// are inner bounds only under an efficient estimator).
double int_noise_stream2(const DerivedParams& d, double crlb_s2, double p_r_w);

/// delta / (2 T).
double reir_prefactor(const DerivedParams& d);

/// REIR from an estimation variance: prefactor * log2(1 + sigma_proc^2 / var).
double reir_from_crlb(const DerivedParams& d, double crlb_s2);

double reir_rs(const DerivedParams& d, const PowerSplit& split, double p_r_w);

/// R_c1 and R_c2. R_c2 is identically zero when p_c2 is zero; otherwise a
/// radar echo is required to form the estimated-echo residual.
StreamRates dir_rs(const DerivedParams& d, const PowerSplit& split, double p_r_w);

AlphaOptimum alpha_opt(const DerivedParams& d, double p_c_w, double p_r_w);

/// The stationarity quadratic of R_c1 + R_c2 (divided by |b_c|^2 P_c) at
/// `alpha`, relative to its largest term.
double alpha_quadratic_residual(const DerivedParams& d, double p_c_w, double p_r_w,
                                double alpha);

/// Bandwidth split mu in [0, 1]: comm gets mu B, radar (1 - mu) B. The comm
/// rate at mu = 0 is its limit, 0.
RatePoint oma_bounds(const DerivedParams& d, double mu, double p_c_w, double p_r_w);

/// Comm decoded first at power p_used in [0, P_c], then removed by SIC before
/// delay estimation. knob = p_used / P_c.
RatePoint noma_bounds(const DerivedParams& d, double p_used_w, double p_c_w, double p_r_w);

RatePoint rs_bounds(const DerivedParams& d, double alpha, double p_c_w, double p_r_w);

/// Dispatch on scheme. For NOMA the knob is the power fraction.
RatePoint evaluate(Scheme scheme, const DerivedParams& d, double knob, double p_c_w,
                   double p_r_w);

}  // namespace isac
