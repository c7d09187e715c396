#include "isac/bounds.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "isac/errors.hpp"

namespace isac {
namespace {

double log2_1p(double x) { return std::log1p(x) / std::numbers::ln2; }

void require(bool ok, const std::string& message) {
  if (!ok) throw DomainError(message);
}

bool finite_nonneg(double v) { return std::isfinite(v) && v >= 0.0; }

void check(const DerivedParams& d) {
  require(std::isfinite(d.noise_power_w) && d.noise_power_w > 0.0,
          "noise power must be finite and > 0");
  require(finite_nonneg(d.radar_power_gain), "radar power gain must be finite and >= 0");
  require(finite_nonneg(d.comm_power_gain), "comm power gain must be finite and >= 0");
  require(std::isfinite(d.pulse_duration_s) && d.pulse_duration_s > 0.0,
          "pulse duration must be finite and > 0");
  require(finite_nonneg(d.sigma_tau_proc_s), "process delay std must be finite and >= 0");
  require(std::isfinite(d.bandwidth_hz) && d.bandwidth_hz > 0.0,
          "bandwidth must be finite and > 0");
  require(std::isfinite(d.time_bandwidth_product) && d.time_bandwidth_product >= 1.0,
          "time-bandwidth product must be >= 1");
  require(std::isfinite(d.duty_factor) && d.duty_factor > 0.0 && d.duty_factor <= 1.0,
          "duty factor must be in (0, 1]");
  require(finite_nonneg(d.gamma_sq), "gamma^2 must be finite and >= 0");
}

void check_power(double p, const char* name) {
  require(finite_nonneg(p), std::string(name) + " must be finite and >= 0");
}

// SNR inside the REIR logarithm for a radar band of `radar_bw_hz` and
// interference power `interference_w` on top of thermal noise. Shared by all
// three schemes so their degenerate cases follow the same arithmetic path.
double reir_snr(const DerivedParams& d, double p_r_w, double radar_bw_hz,
                double interference_w) {
  const double num = 2.0 * d.sigma_tau_proc_s * d.sigma_tau_proc_s * d.gamma_sq *
                     (radar_bw_hz * radar_bw_hz) * d.time_bandwidth_product *
                     d.radar_power_gain * p_r_w;
  return num / (d.noise_power_w + interference_w);
}

double reir_from_snr(const DerivedParams& d, double snr) {
  return reir_prefactor(d) * log2_1p(snr);
}

// B log2(1 + |b_c|^2 p_signal / int_noise_stream1).
double first_stream_rate(const DerivedParams& d, double p_signal_w, const PowerSplit& split,
                         double p_r_w) {
  return d.bandwidth_hz *
         log2_1p(d.comm_power_gain * p_signal_w / int_noise_stream1(d, split, p_r_w));
}

}  // namespace

std::string_view to_string(Scheme scheme) {
  switch (scheme) {
    case Scheme::rs: return "rs";
    case Scheme::oma: return "oma";
    case Scheme::noma: return "noma";
  }
  return "?";
}

std::optional<Scheme> parse_scheme(std::string_view text) {
  if (text == "rs") return Scheme::rs;
  if (text == "oma") return Scheme::oma;
  if (text == "noma") return Scheme::noma;
  return std::nullopt;
}

PowerSplit PowerSplit::from_alpha(double alpha, double p_c_w) {
  require(std::isfinite(alpha) && alpha >= 0.0 && alpha <= 1.0, "alpha must be in [0, 1]");
  check_power(p_c_w, "P_c");
  return PowerSplit{alpha, (1.0 - alpha) * p_c_w, alpha * p_c_w};
}

double predicted_echo_residual(const DerivedParams& d, double p_r_w) {
  check(d);
  check_power(p_r_w, "P_r");
  const double b = d.bandwidth_hz;
  return p_r_w * d.radar_power_gain * d.gamma_sq * (b * b) *
         (d.sigma_tau_proc_s * d.sigma_tau_proc_s);
}

double int_noise_stream1(const DerivedParams& d, const PowerSplit& split, double p_r_w) {
  check_power(split.p_c2_w, "P_c2");
  return d.comm_power_gain * split.p_c2_w + predicted_echo_residual(d, p_r_w) +
         d.noise_power_w;
}

double crlb_delay(const DerivedParams& d, double p_c2_w, double p_r_w) {
  check(d);
  check_power(p_c2_w, "P_c2");
  check_power(p_r_w, "P_r");
  const double echo = d.radar_power_gain * p_r_w;
  require(echo > 0.0, "delay CRLB needs a radar echo (P_r |a_r|^2 > 0)");
  const double b = d.bandwidth_hz;
  return (d.noise_power_w + d.comm_power_gain * p_c2_w) /
         (2.0 * d.gamma_sq * (b * b) * d.time_bandwidth_product * echo);
}

double int_noise_stream2(const DerivedParams& d, double crlb_s2, double p_r_w) {
  check(d);
  check_power(p_r_w, "P_r");
  require(std::isfinite(crlb_s2) && crlb_s2 >= 0.0, "CRLB must be finite and >= 0");
  // Only var(tau_est) >= CRLB is known; the bound is used as the operating
  // variance, i.e. the smallest residual the echo subtraction can leave.
  const double b = d.bandwidth_hz;
  return p_r_w * d.radar_power_gain * d.gamma_sq * (b * b) * crlb_s2 + d.noise_power_w;
}

double reir_prefactor(const DerivedParams& d) {
  check(d);
  return d.duty_factor / (2.0 * d.pulse_duration_s);
}

double reir_from_crlb(const DerivedParams& d, double crlb_s2) {
  require(std::isfinite(crlb_s2) && crlb_s2 > 0.0, "CRLB must be finite and > 0");
  return reir_from_snr(d, d.sigma_tau_proc_s * d.sigma_tau_proc_s / crlb_s2);
}

double reir_rs(const DerivedParams& d, const PowerSplit& split, double p_r_w) {
  check(d);
  check_power(split.p_c2_w, "P_c2");
  check_power(p_r_w, "P_r");
  return reir_from_snr(
      d, reir_snr(d, p_r_w, d.bandwidth_hz, d.comm_power_gain * split.p_c2_w));
}

StreamRates dir_rs(const DerivedParams& d, const PowerSplit& split, double p_r_w) {
  check_power(split.p_c1_w, "P_c1");
  StreamRates out;
  out.r_c1_bps = first_stream_rate(d, split.p_c1_w, split, p_r_w);
  if (split.p_c2_w > 0.0) {
    const double crlb = crlb_delay(d, split.p_c2_w, p_r_w);
    out.r_c2_bps = d.bandwidth_hz * log2_1p(d.comm_power_gain * split.p_c2_w /
                                            int_noise_stream2(d, crlb, p_r_w));
  }
  return out;
}

double alpha_quadratic_residual(const DerivedParams& d, double p_c_w, double p_r_w,
                                double alpha) {
  check(d);
  check_power(p_c_w, "P_c");
  check_power(p_r_w, "P_r");
  const double p_bc = d.comm_power_gain * p_c_w;
  const double s2 = d.noise_power_w;
  const double x = predicted_echo_residual(d, p_r_w) * d.time_bandwidth_product;
  // P_bc^3 a^2 + 2 P_bc^2 s2 a + s2^2 P_bc - 2 s2 P_bc X, divided through by P_bc.
  const std::array<double, 4> terms = {p_bc * alpha * p_bc * alpha, 2.0 * s2 * p_bc * alpha,
                                       s2 * s2, -2.0 * s2 * x};
  double scale = 0.0;
  double total = 0.0;
  for (double t : terms) {
    scale = std::max(scale, std::abs(t));
    total += t;
  }
  return scale > 0.0 ? std::abs(total) / scale : 0.0;
}

AlphaOptimum alpha_opt(const DerivedParams& d, double p_c_w, double p_r_w) {
  check(d);
  check_power(p_c_w, "P_c");
  check_power(p_r_w, "P_r");
  const double p_bc = d.comm_power_gain * p_c_w;
  require(p_bc > 0.0, "optimal split needs a communication link (|b_c|^2 P_c > 0)");
  const double s2 = d.noise_power_w;
  const double echo_term = std::sqrt(d.radar_power_gain) * std::sqrt(d.gamma_sq) *
                           d.bandwidth_hz * d.sigma_tau_proc_s *
                           std::sqrt(2.0 * p_r_w * d.time_bandwidth_product * s2);
  AlphaOptimum out;
  out.raw = (-s2 + echo_term) / p_bc;
  out.clamped = std::clamp(out.raw, 0.0, 1.0);
  out.residual = alpha_quadratic_residual(d, p_c_w, p_r_w, out.raw);
  return out;
}

RatePoint oma_bounds(const DerivedParams& d, double mu, double p_c_w, double p_r_w) {
  check(d);
  require(std::isfinite(mu) && mu >= 0.0 && mu <= 1.0, "mu must be in [0, 1]");
  check_power(p_c_w, "P_c");
  check_power(p_r_w, "P_r");
  RatePoint out{0.0, 0.0, Scheme::oma, mu};
  out.r_est_bps = reir_from_snr(d, reir_snr(d, p_r_w, (1.0 - mu) * d.bandwidth_hz, 0.0));
  if (mu > 0.0) {
    out.r_c_bps = mu * d.bandwidth_hz *
                  log2_1p(d.comm_power_gain * p_c_w / (mu * d.noise_power_w));
  }
  return out;
}

RatePoint noma_bounds(const DerivedParams& d, double p_used_w, double p_c_w, double p_r_w) {
  check_power(p_c_w, "P_c");
  require(p_c_w > 0.0, "P_c must be > 0");
  require(std::isfinite(p_used_w) && p_used_w >= 0.0 && p_used_w <= p_c_w,
          "NOMA power must be in [0, P_c]");
  // Comm is decoded first against the predicted-echo residual, then removed:
  // the same arithmetic as RS with everything on the first stream.
  const PowerSplit all_first{0.0, p_used_w, 0.0};
  RatePoint out{0.0, 0.0, Scheme::noma, p_used_w / p_c_w};
  out.r_est_bps = reir_rs(d, all_first, p_r_w);
  out.r_c_bps = first_stream_rate(d, p_used_w, all_first, p_r_w);
  return out;
}

RatePoint rs_bounds(const DerivedParams& d, double alpha, double p_c_w, double p_r_w) {
  const PowerSplit split = PowerSplit::from_alpha(alpha, p_c_w);
  return RatePoint{reir_rs(d, split, p_r_w), dir_rs(d, split, p_r_w).sum(), Scheme::rs,
                   alpha};
}

RatePoint evaluate(Scheme scheme, const DerivedParams& d, double knob, double p_c_w,
                   double p_r_w) {
  switch (scheme) {
    case Scheme::rs: return rs_bounds(d, knob, p_c_w, p_r_w);
    case Scheme::oma: return oma_bounds(d, knob, p_c_w, p_r_w);
    case Scheme::noma: {
      require(std::isfinite(knob) && knob >= 0.0 && knob <= 1.0,
              "NOMA power fraction must be in [0, 1]");
      RatePoint p = noma_bounds(d, std::min(knob * p_c_w, p_c_w), p_c_w, p_r_w);
      p.knob = knob;
      return p;
    }
  }
  throw DomainError("unknown scheme");
}

}  // namespace isac
