#pragma once

// Knob sweeps for each scheme, upper-right convex frontiers over (R_est, R_c),
// and the optimal split as a function of communication range.

#include <cstddef>
#include <span>
#include <vector>

#include "isac/bounds.hpp"
#include "isac/linkbudget.hpp"

namespace isac {

/// Points of one scheme along a strictly increasing knob grid.
struct BoundCurve {
  Scheme scheme = Scheme::rs;
  std::vector<double> knob_grid;
  std::vector<RatePoint> points;
};

/// Pareto part of the convex hull, ordered by decreasing R_est (increasing
/// R_c). Segments between consecutive vertices are time-sharing mixtures.
struct Frontier {
  std::vector<RatePoint> vertices;

  /// Largest R_c achievable by time sharing at a given R_est; 0 beyond the
  /// frontier's largest R_est.
  double rate_at(double r_est_bps) const;

  /// Area of the region dominated by the frontier (free disposal towards the
  /// axes), in (bit/s)^2.
  double dominated_area() const;
};

/// n >= 1 uniformly spaced points on [lo, hi]; endpoints are exact.
std::vector<double> uniform_grid(double lo, double hi, std::size_t n);

/// Point-wise evaluation in grid order. Grids may be in any order.
std::vector<RatePoint> evaluate_grid(Scheme scheme, const SystemParams& params,
                                     std::span<const double> knobs);

BoundCurve sweep_rs(const SystemParams& params, std::span<const double> alpha_grid);
BoundCurve sweep_oma(const SystemParams& params, std::span<const double> mu_grid);
/// Knob is the fraction of P_c in use.
BoundCurve sweep_noma(const SystemParams& params, std::span<const double> power_grid);
BoundCurve sweep(Scheme scheme, const SystemParams& params, std::span<const double> grid);

/// Monotone-chain hull. Among equal R_est the larger R_c is kept (and vice
/// versa); collinear interior points are dropped. Throws on empty input.
Frontier upper_convex_hull(std::span<const RatePoint> points);

/// Argmax of R_c1 + R_c2 over a uniform alpha grid with the given step
/// (first maximizer on ties).
double grid_argmax_alpha(const DerivedParams& d, double p_c_w, double p_r_w, double step);

struct AlphaAtRange {
  double range_m = 0.0;
  double alpha_raw = 0.0;
  double alpha_clamped = 0.0;
};

std::vector<AlphaAtRange> sweep_alpha_vs_range(const SystemParams& params,
                                               std::span<const double> range_grid_m);

}  // namespace isac
