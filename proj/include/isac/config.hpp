#pragma once

// Flat key=value run configuration. One key per line, '#' starts a comment.
// Omitted keys take the reference-scenario defaults. Gain keys also accept a
// `_db` form (dBi), converted to linear on load.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "isac/linkbudget.hpp"

namespace isac {

enum class OutputFormat { csv, json };

struct GridConfig {
  std::size_t alpha_points = 2001;
  std::size_t mu_points = 2001;
  std::size_t noma_points = 201;
  double range_min_m = 1e3;
  double range_max_m = 50e3;
  std::size_t range_points = 50;
  double alpha_search_step = 1e-5;

  friend bool operator==(const GridConfig&, const GridConfig&) = default;
};

struct McConfig {
  std::size_t trials = 100000;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  bool comm_fading = true;
  bool radar_fading = true;
  std::vector<double> rs_alphas = {0.0, 0.001, 0.002, 0.004, 0.01, 0.05, 0.2, 0.5, 1.0};
  std::vector<double> oma_mus = {0.0, 0.1, 0.25, 0.5, 0.75, 0.9, 1.0};
  std::vector<double> noma_fractions = {0.0, 0.25, 0.5, 0.75, 1.0};

  friend bool operator==(const McConfig&, const McConfig&) = default;
};

struct CrlbConfig {
  int oversample = 4;
  /// Split used for P_c2; nullopt selects the clamped optimum.
  std::optional<double> alpha;
  std::size_t estimator_trials = 1000;
  double estimator_snr_boost_db = 30.0;
  double estimator_delay_s = 1.3e-7;

  friend bool operator==(const CrlbConfig&, const CrlbConfig&) = default;
};

struct OutputConfig {
  std::string path;  // empty: standard output
  OutputFormat format = OutputFormat::csv;

  friend bool operator==(const OutputConfig&, const OutputConfig&) = default;
};

struct RunConfig {
  SystemParams scenario;
  GridConfig grids;
  McConfig mc;
  CrlbConfig crlb;
  OutputConfig output;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

struct ParseOptions {
  /// Unknown keys are errors when set, warnings otherwise.
  bool strict = false;
  /// Receives warnings in non-strict mode; may be null.
  std::vector<std::string>* warnings = nullptr;
};

/// Throws ConfigError (with line number) on malformed, duplicate, unknown
/// (strict) or out-of-range entries.
RunConfig parse_config(std::string_view text, const ParseOptions& options = {});

/// Canonical text form: every non-alias key, linear units, shortest
/// round-trip numbers. parse_config(serialize_config(c)) == c.
std::string serialize_config(const RunConfig& config);

struct ConfigKey {
  std::string name;
  std::string unit;
  std::string description;
  bool alias = false;  // accepted on input, never written
};

const std::vector<ConfigKey>& config_schema();

/// One line per key: name, unit, description.
std::string config_help();

/// Shortest decimal that parses back to exactly `value`.
std::string format_number(double value);

std::string_view to_string(OutputFormat format);
std::optional<OutputFormat> parse_output_format(std::string_view text);

}  // namespace isac
