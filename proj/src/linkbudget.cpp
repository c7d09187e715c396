#include "isac/linkbudget.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "isac/constants.hpp"
#include "isac/errors.hpp"

namespace isac {
namespace {

void require(bool ok, const char* field, const char* what) {
  if (!ok) {
    throw DomainError(std::string(field) + " must be " + what);
  }
}

bool positive(double v) { return std::isfinite(v) && v > 0.0; }
bool nonnegative(double v) { return std::isfinite(v) && v >= 0.0; }

}  // namespace

void validate(const SystemParams& p) {
  require(positive(p.bandwidth_hz), "bandwidth_hz", "finite and > 0");
  require(positive(p.carrier_freq_hz), "carrier_freq_hz", "finite and > 0");
  require(positive(p.effective_temp_k), "effective_temp_k", "finite and > 0");
  require(positive(p.comm_range_m), "comm_range_m", "finite and > 0");
  require(positive(p.comm_power_w), "comm_power_w", "finite and > 0");
  require(nonnegative(p.comm_tx_gain), "comm_tx_gain", "finite and >= 0");
  require(nonnegative(p.comm_rx_sidelobe_gain), "comm_rx_sidelobe_gain", "finite and >= 0");
  require(positive(p.radar_range_m), "radar_range_m", "finite and > 0");
  require(nonnegative(p.radar_gain), "radar_gain", "finite and >= 0");
  require(positive(p.radar_power_w), "radar_power_w", "finite and > 0");
  require(positive(p.target_rcs_m2), "target_rcs_m2", "finite and > 0");
  require(positive(p.target_process_std_m), "target_process_std_m", "finite and > 0");
  require(std::isfinite(p.time_bandwidth_product) && p.time_bandwidth_product >= 1.0,
          "time_bandwidth_product", "finite and >= 1");
  require(positive(p.duty_factor) && p.duty_factor <= 1.0, "duty_factor", "in (0, 1]");
}

double noise_power(double effective_temp_k, double bandwidth_hz) {
  require(nonnegative(effective_temp_k), "effective_temp_k", "finite and >= 0");
  require(positive(bandwidth_hz), "bandwidth_hz", "finite and > 0");
  return kBoltzmann * effective_temp_k * bandwidth_hz;
}

double wavelength(double carrier_freq_hz) {
  require(positive(carrier_freq_hz), "carrier_freq_hz", "finite and > 0");
  return kSpeedOfLight / carrier_freq_hz;
}

double radar_power_gain(const SystemParams& p) {
  require(positive(p.radar_range_m), "radar_range_m", "finite and > 0");
  require(nonnegative(p.radar_gain), "radar_gain", "finite and >= 0");
  require(nonnegative(p.target_rcs_m2), "target_rcs_m2", "finite and >= 0");
  const double lambda = wavelength(p.carrier_freq_hz);
  const double four_pi = 4.0 * std::numbers::pi;
  const double r2 = p.radar_range_m * p.radar_range_m;
  return (p.radar_gain * p.radar_gain * lambda * lambda * p.target_rcs_m2) /
         (four_pi * four_pi * four_pi * (r2 * r2));
}

double comm_power_gain(const SystemParams& p) {
  require(positive(p.comm_range_m), "comm_range_m", "finite and > 0");
  require(nonnegative(p.comm_tx_gain), "comm_tx_gain", "finite and >= 0");
  require(nonnegative(p.comm_rx_sidelobe_gain), "comm_rx_sidelobe_gain", "finite and >= 0");
  const double lambda = wavelength(p.carrier_freq_hz);
  const double path = lambda / (4.0 * std::numbers::pi * p.comm_range_m);
  return path * path * p.comm_tx_gain * p.comm_rx_sidelobe_gain;
}

DerivedParams derive(const SystemParams& p) {
  validate(p);
  DerivedParams d;
  d.noise_power_w = noise_power(p.effective_temp_k, p.bandwidth_hz);
  d.radar_power_gain = radar_power_gain(p);
  d.comm_power_gain = comm_power_gain(p);
  d.pulse_duration_s = p.time_bandwidth_product / p.bandwidth_hz;
  d.sigma_tau_proc_s = p.target_process_std_m / kSpeedOfLight;
  d.gamma_sq = kFlatSpectrumGammaSq;
  d.pri_s = d.pulse_duration_s / p.duty_factor;
  d.bandwidth_hz = p.bandwidth_hz;
  d.time_bandwidth_product = p.time_bandwidth_product;
  d.duty_factor = p.duty_factor;
  return d;
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

}  // namespace isac
