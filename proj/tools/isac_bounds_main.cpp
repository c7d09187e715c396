// isac-bounds: sensing/communication trade-off bounds from the command line.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "isac/config.hpp"
#include "isac/errors.hpp"
#include "isac/run.hpp"

namespace {

struct Flags {
  std::string config_path;
  std::string out_path;
  std::string format;
  std::string scheme;
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  unsigned threads = 0;
  std::size_t grid_points = 0;
  bool strict = false;
  bool combined = false;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rate-splitting sensing/communication coexistence bounds"};
  app.footer(isac::config_help());
  app.require_subcommand(1);
  app.fallthrough();

  Flags f;
  app.add_option("--config", f.config_path, "Configuration file (key = value)");
  app.add_option("--out", f.out_path, "Output file (default: standard output)");
  app.add_option("--format", f.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  auto* seed = app.add_option("--seed", f.seed, "Overrides mc_seed");
  auto* trials = app.add_option("--trials", f.trials, "Overrides mc_trials")
                     ->check(CLI::PositiveNumber);
  auto* threads = app.add_option("--threads", f.threads, "Overrides mc_threads")
                      ->check(CLI::Range(1u, 1024u));
  auto* grid = app.add_option("--grid-points", f.grid_points,
                              "Overrides alpha_points and mu_points")
                   ->check(CLI::PositiveNumber);
  app.add_flag("--strict", f.strict, "Reject unknown configuration keys");
  app.add_option("--scheme", f.scheme, "Restrict sweep/hull/montecarlo to one scheme")
      ->check(CLI::IsMember({"rs", "oma", "noma"}));
  app.add_flag("--combined", f.combined, "hull: also emit the combined frontier");

  const char* descriptions[][2] = {
      {"bounds", "Derived link budget and closed-form rates"},
      {"sweep", "Inner-bound curves (scheme, knob, r_est_bps, r_c_bps)"},
      {"hull", "Upper-right convex frontiers"},
      {"alpha-opt", "Optimal power split with grid-search cross-check"},
      {"montecarlo", "Ergodic rates under fading"},
      {"validate-crlb", "Sampled-pulse FIM forms against the closed-form CRLB"},
      {"alpha-vs-range", "Optimal split versus communication range"},
  };
  for (const auto& d : descriptions) app.add_subcommand(d[0], d[1]);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? isac::kExitOk : isac::kExitUsage;
  }

  const auto cmd = isac::parse_subcommand(app.get_subcommands().front()->get_name());
  if (!cmd) return isac::kExitUsage;

  isac::RunConfig config;
  try {
    std::string text;
    if (!f.config_path.empty()) {
      std::ifstream in(f.config_path, std::ios::binary);
      if (!in) throw isac::ConfigError("cannot read " + f.config_path);
      std::ostringstream buf;
      buf << in.rdbuf();
      text = buf.str();
    }
    std::vector<std::string> warnings;
    config = isac::parse_config(text, isac::ParseOptions{f.strict, &warnings});
    for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
  } catch (const isac::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return isac::kExitConfig;
  }

  if (!f.out_path.empty()) config.output.path = f.out_path;
  if (!f.format.empty()) config.output.format = *isac::parse_output_format(f.format);
  if (*seed) config.mc.seed = f.seed;
  if (*trials) config.mc.trials = f.trials;
  if (*threads) config.mc.threads = f.threads;
  if (*grid) config.grids.alpha_points = config.grids.mu_points = f.grid_points;

  isac::RunOptions options;
  if (!f.scheme.empty()) options.scheme = isac::parse_scheme(f.scheme);
  options.combined_hull = f.combined;
  return isac::run(*cmd, config, options, std::cout, std::cerr);
}
