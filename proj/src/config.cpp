#include "isac/config.hpp"

#include <charconv>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

#include "isac/errors.hpp"

namespace isac {
namespace {

// Value-level problems; the parser attaches key and line.
struct BadValue : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_double(std::string_view s) {
  double v = 0.0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end || s.empty()) {
    throw BadValue("expected a number, got '" + std::string(s) + "'");
  }
  if (!std::isfinite(v)) throw BadValue("value must be finite");
  return v;
}

std::uint64_t parse_u64(std::string_view s) {
  std::uint64_t v = 0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end || s.empty()) {
    throw BadValue("expected a nonnegative integer, got '" + std::string(s) + "'");
  }
  return v;
}

bool parse_bool(std::string_view s) {
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  throw BadValue("expected true/false, got '" + std::string(s) + "'");
}

std::vector<double> parse_list(std::string_view s) {
  std::vector<double> out;
  while (true) {
    const auto comma = s.find(',');
    out.push_back(parse_double(trim(s.substr(0, comma))));
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return out;
}

double positive(double v) {
  if (!(v > 0.0)) throw BadValue("must be > 0");
  return v;
}

double nonnegative(double v) {
  if (!(v >= 0.0)) throw BadValue("must be >= 0");
  return v;
}

double unit_closed(double v) {
  if (!(v >= 0.0 && v <= 1.0)) throw BadValue("must be in [0, 1]");
  return v;
}

std::size_t count_at_least(std::string_view s, std::uint64_t min) {
  const auto v = parse_u64(s);
  if (v < min) throw BadValue("must be >= " + std::to_string(min));
  return static_cast<std::size_t>(v);
}

std::vector<double> unit_list(std::string_view s) {
  auto v = parse_list(s);
  for (double x : v) unit_closed(x);
  return v;
}

std::string format_list(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += format_number(v[i]);
  }
  return out;
}

std::string format_bool(bool b) { return b ? "true" : "false"; }

struct Entry {
  ConfigKey key;
  std::string field;  // aliases share the field of their canonical key
  std::function<void(RunConfig&, std::string_view)> set;
  std::function<std::string(const RunConfig&)> get;
};

using Setter = std::function<void(RunConfig&, std::string_view)>;
using Getter = std::function<std::string(const RunConfig&)>;

Entry key(std::string name, std::string unit, std::string description, Setter set,
          Getter get) {
  std::string field = name;
  return Entry{{std::move(name), std::move(unit), std::move(description), false},
               std::move(field), std::move(set), std::move(get)};
}

Entry alias(std::string name, std::string field, std::string unit, std::string description,
            Setter set) {
  return Entry{{std::move(name), std::move(unit), std::move(description), true},
               std::move(field), std::move(set), {}};
}

#define ISAC_SCALAR(member, check)                                                 \
  [](RunConfig& c, std::string_view v) { c.member = check(parse_double(v)); },     \
      [](const RunConfig& c) { return format_number(c.member); }

#define ISAC_GAIN_DB(member)                                                       \
  [](RunConfig& c, std::string_view v) { c.member = db_to_linear(parse_double(v)); }

const std::vector<Entry>& entries() {
  static const std::vector<Entry> table = [] {
    std::vector<Entry> t;
    t.push_back(key("bandwidth_hz", "Hz", "system bandwidth B",
                    ISAC_SCALAR(scenario.bandwidth_hz, positive)));
    t.push_back(key("carrier_freq_hz", "Hz", "carrier frequency",
                    ISAC_SCALAR(scenario.carrier_freq_hz, positive)));
    t.push_back(key("effective_temp_k", "K", "receiver effective temperature",
                    ISAC_SCALAR(scenario.effective_temp_k, positive)));
    t.push_back(key("comm_range_m", "m", "user to base-station distance",
                    ISAC_SCALAR(scenario.comm_range_m, positive)));
    t.push_back(key("comm_power_w", "W", "user transmit power P_c",
                    ISAC_SCALAR(scenario.comm_power_w, positive)));
    t.push_back(key("comm_tx_gain", "linear", "user antenna gain",
                    ISAC_SCALAR(scenario.comm_tx_gain, nonnegative)));
    t.push_back(alias("comm_tx_gain_db", "comm_tx_gain", "dBi", "user antenna gain",
                      ISAC_GAIN_DB(scenario.comm_tx_gain)));
    t.push_back(key("comm_rx_sidelobe_gain", "linear", "base-station sidelobe gain toward the user",
                    ISAC_SCALAR(scenario.comm_rx_sidelobe_gain, nonnegative)));
    t.push_back(alias("comm_rx_sidelobe_gain_db", "comm_rx_sidelobe_gain", "dBi",
                      "base-station sidelobe gain toward the user",
                      ISAC_GAIN_DB(scenario.comm_rx_sidelobe_gain)));
    t.push_back(key("radar_range_m", "m", "target range",
                    ISAC_SCALAR(scenario.radar_range_m, positive)));
    t.push_back(key("radar_gain", "linear", "radar antenna gain (transmit = receive)",
                    ISAC_SCALAR(scenario.radar_gain, nonnegative)));
    t.push_back(alias("radar_gain_db", "radar_gain", "dBi", "radar antenna gain",
                      ISAC_GAIN_DB(scenario.radar_gain)));
    t.push_back(key("radar_power_w", "W", "radar transmit power P_r",
                    ISAC_SCALAR(scenario.radar_power_w, positive)));
    t.push_back(key("target_rcs_m2", "m^2", "target radar cross section",
                    ISAC_SCALAR(scenario.target_rcs_m2, positive)));
    t.push_back(key("target_process_std_m", "m", "std of the predicted target range",
                    ISAC_SCALAR(scenario.target_process_std_m, positive)));
    t.push_back(key(
        "time_bandwidth_product", "1", "radar pulse TB (>= 1)",
        [](RunConfig& c, std::string_view v) {
          const double x = parse_double(v);
          if (!(x >= 1.0)) throw BadValue("must be >= 1");
          c.scenario.time_bandwidth_product = x;
        },
        [](const RunConfig& c) { return format_number(c.scenario.time_bandwidth_product); }));
    t.push_back(key(
        "duty_factor", "1", "radar duty factor in (0, 1]",
        [](RunConfig& c, std::string_view v) {
          const double x = parse_double(v);
          if (!(x > 0.0 && x <= 1.0)) throw BadValue("must be in (0, 1]");
          c.scenario.duty_factor = x;
        },
        [](const RunConfig& c) { return format_number(c.scenario.duty_factor); }));

    t.push_back(key(
        "alpha_points", "count", "RS sweep points over alpha in [0, 1]",
        [](RunConfig& c, std::string_view v) { c.grids.alpha_points = count_at_least(v, 1); },
        [](const RunConfig& c) { return std::to_string(c.grids.alpha_points); }));
    t.push_back(key(
        "mu_points", "count", "OMA sweep points over mu in [0, 1]",
        [](RunConfig& c, std::string_view v) { c.grids.mu_points = count_at_least(v, 1); },
        [](const RunConfig& c) { return std::to_string(c.grids.mu_points); }));
    t.push_back(key(
        "noma_points", "count", "NOMA sweep points over the power fraction in [0, 1]",
        [](RunConfig& c, std::string_view v) { c.grids.noma_points = count_at_least(v, 1); },
        [](const RunConfig& c) { return std::to_string(c.grids.noma_points); }));
    t.push_back(key("range_min_m", "m", "first communication range of alpha-vs-range",
                    ISAC_SCALAR(grids.range_min_m, positive)));
    t.push_back(key("range_max_m", "m", "last communication range of alpha-vs-range",
                    ISAC_SCALAR(grids.range_max_m, positive)));
    t.push_back(key(
        "range_points", "count", "alpha-vs-range points",
        [](RunConfig& c, std::string_view v) { c.grids.range_points = count_at_least(v, 1); },
        [](const RunConfig& c) { return std::to_string(c.grids.range_points); }));
    t.push_back(key(
        "alpha_search_step", "1", "alpha step of the grid-search cross-check, in (0, 1]",
        [](RunConfig& c, std::string_view v) {
          const double x = parse_double(v);
          if (!(x > 0.0 && x <= 1.0)) throw BadValue("must be in (0, 1]");
          c.grids.alpha_search_step = x;
        },
        [](const RunConfig& c) { return format_number(c.grids.alpha_search_step); }));

    t.push_back(key(
        "mc_trials", "count", "Monte Carlo fading trials per operating point",
        [](RunConfig& c, std::string_view v) { c.mc.trials = count_at_least(v, 1); },
        [](const RunConfig& c) { return std::to_string(c.mc.trials); }));
    t.push_back(key(
        "mc_seed", "u64", "seed for every random draw",
        [](RunConfig& c, std::string_view v) { c.mc.seed = parse_u64(v); },
        [](const RunConfig& c) { return std::to_string(c.mc.seed); }));
    t.push_back(key(
        "mc_threads", "count", "worker threads for Monte Carlo (results do not depend on it)",
        [](RunConfig& c, std::string_view v) {
          const auto n = count_at_least(v, 1);
          if (n > 1024) throw BadValue("must be <= 1024");
          c.mc.threads = static_cast<unsigned>(n);
        },
        [](const RunConfig& c) { return std::to_string(c.mc.threads); }));
    t.push_back(key(
        "mc_comm_fading", "bool", "Rayleigh fading on the user link",
        [](RunConfig& c, std::string_view v) { c.mc.comm_fading = parse_bool(v); },
        [](const RunConfig& c) { return format_bool(c.mc.comm_fading); }));
    t.push_back(key(
        "mc_radar_fading", "bool", "exponential power fluctuation of the target echo",
        [](RunConfig& c, std::string_view v) { c.mc.radar_fading = parse_bool(v); },
        [](const RunConfig& c) { return format_bool(c.mc.radar_fading); }));
    t.push_back(key(
        "mc_rs_alphas", "list", "RS splits simulated by montecarlo (comma separated)",
        [](RunConfig& c, std::string_view v) { c.mc.rs_alphas = unit_list(v); },
        [](const RunConfig& c) { return format_list(c.mc.rs_alphas); }));
    t.push_back(key(
        "mc_oma_mus", "list", "OMA bandwidth fractions simulated by montecarlo",
        [](RunConfig& c, std::string_view v) { c.mc.oma_mus = unit_list(v); },
        [](const RunConfig& c) { return format_list(c.mc.oma_mus); }));
    t.push_back(key(
        "mc_noma_fractions", "list", "NOMA power fractions simulated by montecarlo",
        [](RunConfig& c, std::string_view v) { c.mc.noma_fractions = unit_list(v); },
        [](const RunConfig& c) { return format_list(c.mc.noma_fractions); }));

    t.push_back(key(
        "crlb_oversample", "count", "samples per 1/B for the sampled pulse",
        [](RunConfig& c, std::string_view v) {
          const auto n = count_at_least(v, 1);
          if (n > 256) throw BadValue("must be <= 256");
          c.crlb.oversample = static_cast<int>(n);
        },
        [](const RunConfig& c) { return std::to_string(c.crlb.oversample); }));
    t.push_back(key(
        "crlb_alpha", "1 or 'opt'", "split whose P_c2 interferes with delay estimation",
        [](RunConfig& c, std::string_view v) {
          if (v == "opt") {
            c.crlb.alpha.reset();
          } else {
            c.crlb.alpha = unit_closed(parse_double(v));
          }
        },
        [](const RunConfig& c) {
          return c.crlb.alpha ? format_number(*c.crlb.alpha) : std::string("opt");
        }));
    t.push_back(key(
        "estimator_trials", "count", "correlation-receiver trials (0 disables)",
        [](RunConfig& c, std::string_view v) { c.crlb.estimator_trials = count_at_least(v, 0); },
        [](const RunConfig& c) { return std::to_string(c.crlb.estimator_trials); }));
    t.push_back(key("estimator_snr_boost_db", "dB", "radar power boost for the receiver run",
                    ISAC_SCALAR(crlb.estimator_snr_boost_db, [](double x) { return x; })));
    t.push_back(key("estimator_delay_s", "s", "true echo delay, |delay| < T/2",
                    ISAC_SCALAR(crlb.estimator_delay_s, [](double x) { return x; })));

    t.push_back(key(
        "output_path", "path", "output file (empty: standard output)",
        [](RunConfig& c, std::string_view v) { c.output.path = std::string(v); },
        [](const RunConfig& c) { return c.output.path; }));
    t.push_back(key(
        "output_format", "csv|json", "output format",
        [](RunConfig& c, std::string_view v) {
          const auto f = parse_output_format(v);
          if (!f) throw BadValue("expected csv or json, got '" + std::string(v) + "'");
          c.output.format = *f;
        },
        [](const RunConfig& c) { return std::string(to_string(c.output.format)); }));
    return t;
  }();
  return table;
}

#undef ISAC_SCALAR
#undef ISAC_GAIN_DB

void check_cross_fields(const RunConfig& c, const std::map<std::string, int>& lines) {
  auto line_of = [&](const char* field) {
    const auto it = lines.find(field);
    return it == lines.end() ? 0 : it->second;
  };
  if (c.grids.range_max_m < c.grids.range_min_m) {
    throw ConfigError("range_max_m must be >= range_min_m", line_of("range_max_m"));
  }
  if (c.mc.rs_alphas.empty() || c.mc.oma_mus.empty() || c.mc.noma_fractions.empty()) {
    throw ConfigError("Monte Carlo knob lists must not be empty");
  }
  const double half_window =
      0.5 * c.scenario.time_bandwidth_product / c.scenario.bandwidth_hz;
  if (!(std::abs(c.crlb.estimator_delay_s) < half_window)) {
    throw ConfigError("estimator_delay_s must satisfy |delay| < T/2 = " +
                          format_number(half_window) + " s",
                      line_of("estimator_delay_s"));
  }
}

}  // namespace

std::string format_number(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) throw std::runtime_error("number formatting failed");
  return std::string(buf, ptr);
}

std::string_view to_string(OutputFormat format) {
  return format == OutputFormat::json ? "json" : "csv";
}

std::optional<OutputFormat> parse_output_format(std::string_view text) {
  if (text == "csv") return OutputFormat::csv;
  if (text == "json") return OutputFormat::json;
  return std::nullopt;
}

RunConfig parse_config(std::string_view text, const ParseOptions& options) {
  std::map<std::string_view, const Entry*> by_name;
  for (const auto& e : entries()) by_name[e.key.name] = &e;

  RunConfig config;
  std::map<std::string, int> field_lines;
  int line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);

    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError("expected 'key = value'", line_no);
    const std::string_view name = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    if (name.empty()) throw ConfigError("missing key before '='", line_no);

    const auto it = by_name.find(name);
    if (it == by_name.end()) {
      const std::string msg = "unknown key '" + std::string(name) + "'";
      if (options.strict) throw ConfigError(msg, line_no);
      if (options.warnings) {
        options.warnings->push_back("line " + std::to_string(line_no) + ": " + msg);
      }
      continue;
    }
    const Entry& e = *it->second;
    if (const auto prev = field_lines.find(e.field); prev != field_lines.end()) {
      throw ConfigError(std::string(name) + ": '" + e.field + "' already set on line " +
                            std::to_string(prev->second),
                        line_no);
    }
    if (value.empty() && e.key.name != "output_path") {
      throw ConfigError(std::string(name) + ": missing value", line_no);
    }
    try {
      e.set(config, value);
    } catch (const BadValue& bad) {
      throw ConfigError(std::string(name) + ": " + bad.what(), line_no);
    }
    field_lines.emplace(e.field, line_no);
  }
  check_cross_fields(config, field_lines);
  return config;
}

std::string serialize_config(const RunConfig& config) {
  std::string out;
  for (const auto& e : entries()) {
    if (e.key.alias) continue;
    out += e.key.name;
    out += " = ";
    out += e.get(config);
    out += '\n';
  }
  return out;
}

const std::vector<ConfigKey>& config_schema() {
  static const std::vector<ConfigKey> schema = [] {
    std::vector<ConfigKey> keys;
    for (const auto& e : entries()) keys.push_back(e.key);
    return keys;
  }();
  return schema;
}

std::string config_help() {
  std::ostringstream os;
  os << "Configuration keys (key = value, '#' comments):\n";
  for (const auto& k : config_schema()) {
    os << "  " << k.name << " [" << k.unit << "]  " << k.description << '\n';
  }
  return os.str();
}

}  // namespace isac
