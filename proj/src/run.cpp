#include "isac/run.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <vector>

#include "isac/errors.hpp"
#include "isac/fim.hpp"
#include "isac/montecarlo.hpp"
#include "isac/tradeoff.hpp"

namespace isac {
namespace {

constexpr Scheme kAllSchemes[] = {Scheme::rs, Scheme::oma, Scheme::noma};

std::vector<Scheme> selected(const RunOptions& options) {
  if (options.scheme) return {*options.scheme};
  return {std::begin(kAllSchemes), std::end(kAllSchemes)};
}

std::size_t grid_points(Scheme s, const GridConfig& g) {
  switch (s) {
    case Scheme::rs: return g.alpha_points;
    case Scheme::oma: return g.mu_points;
    case Scheme::noma: return g.noma_points;
  }
  return 0;
}

const std::vector<double>& mc_knobs(Scheme s, const McConfig& mc) {
  switch (s) {
    case Scheme::rs: return mc.rs_alphas;
    case Scheme::oma: return mc.oma_mus;
    case Scheme::noma: return mc.noma_fractions;
  }
  return mc.rs_alphas;
}

std::string str(Scheme s) { return std::string(to_string(s)); }

Table bounds_table(const RunConfig& c) {
  const SystemParams& p = c.scenario;
  const DerivedParams d = derive(p);
  const AlphaOptimum opt = alpha_opt(d, p.comm_power_w, p.radar_power_w);
  const PowerSplit split = PowerSplit::from_alpha(opt.clamped, p.comm_power_w);
  const StreamRates rs = dir_rs(d, split, p.radar_power_w);
  const RatePoint noma = noma_bounds(d, p.comm_power_w, p.comm_power_w, p.radar_power_w);
  const RatePoint oma_full = oma_bounds(d, 1.0, p.comm_power_w, p.radar_power_w);

  Table t{{"name", "value", "unit"}, {}};
  auto row = [&](const char* name, double v, const char* unit) {
    t.add_row({std::string(name), v, std::string(unit)});
  };
  row("noise_power", d.noise_power_w, "W");
  row("radar_power_gain", d.radar_power_gain, "1");
  row("comm_power_gain", d.comm_power_gain, "1");
  row("pulse_duration", d.pulse_duration_s, "s");
  row("pri", d.pri_s, "s");
  row("sigma_tau_proc", d.sigma_tau_proc_s, "s");
  row("gamma_sq", d.gamma_sq, "1");
  row("reir_prefactor", reir_prefactor(d), "1/s");
  row("predicted_echo_residual", predicted_echo_residual(d, p.radar_power_w), "W");
  row("crlb_interference_free", crlb_delay(d, 0.0, p.radar_power_w), "s^2");
  row("noma_r_est", noma.r_est_bps, "bit/s");
  row("noma_r_c", noma.r_c_bps, "bit/s");
  row("oma_r_c_full_band", oma_full.r_c_bps, "bit/s");
  row("alpha_opt_raw", opt.raw, "1");
  row("alpha_opt_clamped", opt.clamped, "1");
  row("rs_r_est_at_opt", reir_rs(d, split, p.radar_power_w), "bit/s");
  row("rs_r_c1_at_opt", rs.r_c1_bps, "bit/s");
  row("rs_r_c2_at_opt", rs.r_c2_bps, "bit/s");
  row("rs_r_c_at_opt", rs.sum(), "bit/s");
  return t;
}

Table sweep_table(const RunConfig& c, const RunOptions& o) {
  Table t{{"scheme", "knob", "r_est_bps", "r_c_bps"}, {}};
  for (Scheme s : selected(o)) {
    const auto grid = uniform_grid(0.0, 1.0, grid_points(s, c.grids));
    for (const auto& pt : sweep(s, c.scenario, grid).points) {
      t.add_row({str(s), pt.knob, pt.r_est_bps, pt.r_c_bps});
    }
  }
  return t;
}

void add_frontier(Table& t, const std::string& scope, const Frontier& f) {
  const double area = f.dominated_area();
  for (std::size_t i = 0; i < f.vertices.size(); ++i) {
    const RatePoint& v = f.vertices[i];
    const bool last = i + 1 == f.vertices.size();
    t.add_row({scope, static_cast<std::uint64_t>(i), str(v.scheme), v.knob, v.r_est_bps,
               v.r_c_bps, std::string(last ? "none" : "time-sharing"), area});
  }
}

Table hull_table(const RunConfig& c, const RunOptions& o) {
  Table t{{"scope", "vertex", "scheme", "knob", "r_est_bps", "r_c_bps", "next_segment",
           "hull_area"},
          {}};
  std::vector<RatePoint> all;
  for (Scheme s : selected(o)) {
    const auto grid = uniform_grid(0.0, 1.0, grid_points(s, c.grids));
    const auto curve = sweep(s, c.scenario, grid);
    add_frontier(t, str(s), upper_convex_hull(curve.points));
    all.insert(all.end(), curve.points.begin(), curve.points.end());
  }
  if (o.combined_hull) add_frontier(t, "combined", upper_convex_hull(all));
  return t;
}

Table alpha_opt_table(const RunConfig& c) {
  const SystemParams& p = c.scenario;
  const DerivedParams d = derive(p);
  const AlphaOptimum opt = alpha_opt(d, p.comm_power_w, p.radar_power_w);
  const StreamRates r =
      dir_rs(d, PowerSplit::from_alpha(opt.clamped, p.comm_power_w), p.radar_power_w);
  const double step = c.grids.alpha_search_step;
  const double argmax = grid_argmax_alpha(d, p.comm_power_w, p.radar_power_w, step);
  Table t{{"alpha_raw", "alpha_clamped", "quadratic_residual", "r_c1_bps", "r_c2_bps",
           "r_sum_bps", "grid_argmax_alpha", "grid_step"},
          {}};
  t.add_row({opt.raw, opt.clamped, opt.residual, r.r_c1_bps, r.r_c2_bps, r.sum(), argmax, step});
  return t;
}

Table montecarlo_table(const RunConfig& c, const RunOptions& o) {
  const SystemParams& p = c.scenario;
  const DerivedParams d = derive(p);
  ErgodicOptions eo;
  eo.n_trials = c.mc.trials;
  eo.seed = c.mc.seed;
  eo.threads = c.mc.threads;
  eo.fading = FadingOptions{c.mc.comm_fading, c.mc.radar_fading};
  Table t{{"scheme", "knob", "r_est_mean_bps", "r_est_se_bps", "r_c_mean_bps", "r_c_se_bps",
           "bound_r_est_bps", "bound_r_c_bps", "n_trials", "seed"},
          {}};
  for (Scheme s : selected(o)) {
    for (double knob : mc_knobs(s, c.mc)) {
      const ErgodicRates e = ergodic_rates(s, p, knob, eo);
      const RatePoint b = evaluate(s, d, knob, p.comm_power_w, p.radar_power_w);
      t.add_row({str(s), knob, e.r_est.mean, e.r_est.std_error, e.r_c.mean, e.r_c.std_error,
                 b.r_est_bps, b.r_c_bps, static_cast<std::uint64_t>(e.r_est.n_trials),
                 e.r_est.seed});
    }
  }
  return t;
}

int integer_tb(double tb) {
  const double r = std::round(tb);
  if (r != tb || tb < 2.0 || tb > 1e6) {
    throw DomainError("validate-crlb needs an integer time_bandwidth_product >= 2");
  }
  return static_cast<int>(r);
}

Table validate_crlb_table(const RunConfig& c) {
  const SystemParams& p = c.scenario;
  const DerivedParams d = derive(p);
  const double alpha =
      c.crlb.alpha ? *c.crlb.alpha : alpha_opt(d, p.comm_power_w, p.radar_power_w).clamped;
  const double p_c2 = PowerSplit::from_alpha(alpha, p.comm_power_w).p_c2_w;
  const int tb = integer_tb(p.time_bandwidth_product);

  const PulseSamples pulse = make_flat_pulse(tb, c.crlb.oversample, p.bandwidth_hz);
  const InterferencePulse h = make_interference_pulse(tb, c.crlb.oversample, c.mc.seed);
  const ObservationModel model = ObservationModel::from(d, p.radar_power_w, p_c2);
  const double closed = crlb_delay(d, p_c2, p.radar_power_w);

  Table t{{"form", "fim", "crlb", "closed_form_crlb", "rel_err"}, {}};
  auto row = [&](const char* form, double fim, double crlb, double reference) {
    t.add_row({std::string(form), fim, crlb, reference, crlb / reference - 1.0});
  };
  const double exact = fim_exact(pulse, h, model);
  const double sm = fim_sherman_morrison(pulse, h, model);
  const double pess = fim_pessimistic(pulse, model);
  row("exact", exact, crlb_from_fim(exact), closed);
  row("sherman_morrison", sm, crlb_from_fim(sm), closed);
  row("pessimistic", pess, crlb_from_fim(pess), closed);

  if (c.crlb.estimator_trials > 0) {
    ObservationModel boosted = model;
    boosted.radar_power_w *= db_to_linear(c.crlb.estimator_snr_boost_db);
    DelayEstimationOptions eo;
    eo.n_trials = c.crlb.estimator_trials;
    eo.seed = c.mc.seed;
    eo.threads = c.mc.threads;
    const auto stats =
        simulate_delay_estimation(pulse, h, boosted, c.crlb.estimator_delay_s, eo);
    const double mse = stats.squared_error.mean;
    row("correlation_receiver", 1.0 / mse, mse, crlb_delay(d, p_c2, boosted.radar_power_w));
  }
  return t;
}

Table alpha_vs_range_table(const RunConfig& c) {
  const auto ranges =
      uniform_grid(c.grids.range_min_m, c.grids.range_max_m, c.grids.range_points);
  Table t{{"range_m", "alpha_raw", "alpha_clamped"}, {}};
  for (const auto& a : sweep_alpha_vs_range(c.scenario, ranges)) {
    t.add_row({a.range_m, a.alpha_raw, a.alpha_clamped});
  }
  return t;
}

}  // namespace

std::string_view to_string(Subcommand cmd) {
  switch (cmd) {
    case Subcommand::bounds: return "bounds";
    case Subcommand::sweep: return "sweep";
    case Subcommand::hull: return "hull";
    case Subcommand::alpha_opt: return "alpha-opt";
    case Subcommand::montecarlo: return "montecarlo";
    case Subcommand::validate_crlb: return "validate-crlb";
    case Subcommand::alpha_vs_range: return "alpha-vs-range";
  }
  return "?";
}

std::optional<Subcommand> parse_subcommand(std::string_view text) {
  for (auto cmd : {Subcommand::bounds, Subcommand::sweep, Subcommand::hull,
                   Subcommand::alpha_opt, Subcommand::montecarlo, Subcommand::validate_crlb,
                   Subcommand::alpha_vs_range}) {
    if (to_string(cmd) == text) return cmd;
  }
  return std::nullopt;
}

Table run_subcommand(Subcommand cmd, const RunConfig& config, const RunOptions& options) {
  switch (cmd) {
    case Subcommand::bounds: return bounds_table(config);
    case Subcommand::sweep: return sweep_table(config, options);
    case Subcommand::hull: return hull_table(config, options);
    case Subcommand::alpha_opt: return alpha_opt_table(config);
    case Subcommand::montecarlo: return montecarlo_table(config, options);
    case Subcommand::validate_crlb: return validate_crlb_table(config);
    case Subcommand::alpha_vs_range: return alpha_vs_range_table(config);
  }
  throw DomainError("unknown subcommand");
}

int run(Subcommand cmd, const RunConfig& config, const RunOptions& options, std::ostream& out,
        std::ostream& err) {
  std::string text;
  try {
    const Table table = run_subcommand(cmd, config, options);
    text = config.output.format == OutputFormat::json ? to_json(table) : to_csv(table);
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  }
  if (config.output.path.empty()) {
    out << text;
    return out ? kExitOk : kExitNumeric;
  }
  std::ofstream file(config.output.path, std::ios::binary | std::ios::trunc);
  if (!file || !(file << text)) {
    err << "error: cannot write " << config.output.path << '\n';
    return kExitUsage;
  }
  return kExitOk;
}

}  // namespace isac
