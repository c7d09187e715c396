#pragma once

// Scenario description to physical coefficients: thermal noise, two-way radar
// power gain, one-way communication power gain, pulse timing and the delay
// uncertainty of the tracked target.

namespace isac {

/// Full scenario in SI units. Gains are linear power ratios. The defaults are
/// the reference scenario (5 MHz at 3 GHz, 10 km user, 100 km target).
struct SystemParams {
  double bandwidth_hz = 5e6;
  double carrier_freq_hz = 3e9;
  double effective_temp_k = 1000.0;
  double comm_range_m = 10e3;
  double comm_power_w = 100.0;
  double comm_tx_gain = 1.0;            // 0 dBi
  double comm_rx_sidelobe_gain = 10.0;  // 10 dBi
  double radar_range_m = 100e3;
  double radar_gain = 1000.0;           // 30 dBi
  double radar_power_w = 100e3;
  double target_rcs_m2 = 10.0;
  double target_process_std_m = 100.0;
  double time_bandwidth_product = 100.0;
  double duty_factor = 0.01;

  friend bool operator==(const SystemParams&, const SystemParams&) = default;
};

/// Throws DomainError naming the first offending field.
void validate(const SystemParams& params);

/// Quantities every bound formula consumes. Bandwidth, TB and duty factor are
/// carried through so the bound functions need nothing else.
struct DerivedParams {
  double noise_power_w = 0.0;     // sigma_n^2
  double radar_power_gain = 0.0;  // |a_r|^2
  double comm_power_gain = 0.0;   // |b_c|^2
  double pulse_duration_s = 0.0;  // T = TB / B
  double sigma_tau_proc_s = 0.0;
  double gamma_sq = 0.0;
  double pri_s = 0.0;             // T / duty
  double bandwidth_hz = 0.0;
  double time_bandwidth_product = 0.0;
  double duty_factor = 0.0;

  friend bool operator==(const DerivedParams&, const DerivedParams&) = default;
};

/// kappa_B * T * B.
double noise_power(double effective_temp_k, double bandwidth_hz);

double wavelength(double carrier_freq_hz);

/// Monostatic radar equation, G^2 lambda^2 sigma / ((4 pi)^3 R^4).
double radar_power_gain(const SystemParams& params);

/// Friis free-space gain (lambda / (4 pi R))^2 G_tx G_rx, with G_rx the
/// base-station sidelobe gain.
double comm_power_gain(const SystemParams& params);

DerivedParams derive(const SystemParams& params);

double db_to_linear(double db);
double linear_to_db(double linear);

}  // namespace isac
