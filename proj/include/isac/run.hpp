#pragma once

// Subcommand dispatch shared by the isac-bounds tool and the tests.

#include <iosfwd>
#include <optional>
#include <string_view>

#include "isac/bounds.hpp"
#include "isac/config.hpp"
#include "isac/table.hpp"

namespace isac {

enum class Subcommand { bounds, sweep, hull, alpha_opt, montecarlo, validate_crlb, alpha_vs_range };

std::string_view to_string(Subcommand cmd);
std::optional<Subcommand> parse_subcommand(std::string_view text);

struct RunOptions {
  /// Restrict sweep/hull/montecarlo to one scheme.
  std::optional<Scheme> scheme;
  /// hull: also emit the frontier over the union of all schemes' points.
  bool combined_hull = false;
};

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitConfig = 2, kExitNumeric = 3 };

/// Computes the subcommand's rows. Throws DomainError on numeric failures.
Table run_subcommand(Subcommand cmd, const RunConfig& config, const RunOptions& options = {});

/// Runs and writes config.output (file or `out` when the path is empty).
/// Errors are reported on `err`; returns an ExitCode.
int run(Subcommand cmd, const RunConfig& config, const RunOptions& options, std::ostream& out,
        std::ostream& err);

}  // namespace isac
