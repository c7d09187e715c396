#include "isac/tradeoff.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "isac/errors.hpp"

namespace isac {
namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw DomainError(message);
}

// > 0 when o -> a -> b turns counter-clockwise.
double cross(const RatePoint& o, const RatePoint& a, const RatePoint& b) {
  return (a.r_est_bps - o.r_est_bps) * (b.r_c_bps - o.r_c_bps) -
         (a.r_c_bps - o.r_c_bps) * (b.r_est_bps - o.r_est_bps);
}

}  // namespace

double Frontier::rate_at(double r_est_bps) const {
  if (vertices.empty()) return 0.0;
  // vertices run from the largest R_est (front) to the largest R_c (back).
  const RatePoint& right = vertices.front();
  const RatePoint& top = vertices.back();
  if (r_est_bps <= top.r_est_bps) return top.r_c_bps;
  if (r_est_bps > right.r_est_bps) return 0.0;
  for (std::size_t i = vertices.size() - 1; i > 0; --i) {
    const RatePoint& a = vertices[i];
    const RatePoint& b = vertices[i - 1];
    if (r_est_bps <= b.r_est_bps) {
      const double t = (r_est_bps - a.r_est_bps) / (b.r_est_bps - a.r_est_bps);
      return a.r_c_bps + t * (b.r_c_bps - a.r_c_bps);
    }
  }
  return right.r_c_bps;
}

double Frontier::dominated_area() const {
  if (vertices.empty()) return 0.0;
  const RatePoint& top = vertices.back();
  double area = top.r_est_bps * top.r_c_bps;
  for (std::size_t i = 0; i + 1 < vertices.size(); ++i) {
    const RatePoint& a = vertices[i];
    const RatePoint& b = vertices[i + 1];
    area += 0.5 * (a.r_est_bps - b.r_est_bps) * (a.r_c_bps + b.r_c_bps);
  }
  return area;
}

std::vector<double> uniform_grid(double lo, double hi, std::size_t n) {
  require(n >= 1, "grid needs at least one point");
  require(std::isfinite(lo) && std::isfinite(hi) && lo <= hi, "grid bounds must satisfy lo <= hi");
  std::vector<double> g(n);
  if (n == 1) {
    g[0] = lo;
    return g;
  }
  const double last = static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / last;
    g[i] = lo + t * (hi - lo);
  }
  g.back() = hi;
  return g;
}

std::vector<RatePoint> evaluate_grid(Scheme scheme, const SystemParams& params,
                                     std::span<const double> knobs) {
  const DerivedParams d = derive(params);
  std::vector<RatePoint> out;
  out.reserve(knobs.size());
  for (double k : knobs) {
    out.push_back(evaluate(scheme, d, k, params.comm_power_w, params.radar_power_w));
  }
  return out;
}

BoundCurve sweep(Scheme scheme, const SystemParams& params, std::span<const double> grid) {
  require(!grid.empty(), "sweep grid must not be empty");
  for (double k : grid) {
    require(std::isfinite(k) && k >= 0.0 && k <= 1.0,
            std::string(to_string(scheme)) + " knob must lie in [0, 1]");
  }
  require(std::adjacent_find(grid.begin(), grid.end(), std::greater_equal<>()) == grid.end(),
          "sweep grid must be strictly increasing");
  BoundCurve curve;
  curve.scheme = scheme;
  curve.knob_grid.assign(grid.begin(), grid.end());
  curve.points = evaluate_grid(scheme, params, grid);
  return curve;
}

BoundCurve sweep_rs(const SystemParams& params, std::span<const double> alpha_grid) {
  return sweep(Scheme::rs, params, alpha_grid);
}

BoundCurve sweep_oma(const SystemParams& params, std::span<const double> mu_grid) {
  return sweep(Scheme::oma, params, mu_grid);
}

BoundCurve sweep_noma(const SystemParams& params, std::span<const double> power_grid) {
  return sweep(Scheme::noma, params, power_grid);
}

Frontier upper_convex_hull(std::span<const RatePoint> points) {
  require(!points.empty(), "hull needs at least one point");
  for (const auto& p : points) {
    require(std::isfinite(p.r_est_bps) && std::isfinite(p.r_c_bps),
            "hull points must be finite");
  }
  std::vector<RatePoint> sorted(points.begin(), points.end());
  std::stable_sort(sorted.begin(), sorted.end(), [](const RatePoint& a, const RatePoint& b) {
    if (a.r_est_bps != b.r_est_bps) return a.r_est_bps < b.r_est_bps;
    return a.r_c_bps > b.r_c_bps;
  });
  // One point per R_est: the highest R_c (first after sorting).
  sorted.erase(std::unique(sorted.begin(), sorted.end(),
                           [](const RatePoint& a, const RatePoint& b) {
                             return a.r_est_bps == b.r_est_bps;
                           }),
               sorted.end());

  std::vector<RatePoint> upper;
  for (const auto& p : sorted) {
    while (upper.size() >= 2 && cross(upper[upper.size() - 2], upper.back(), p) >= 0.0) {
      upper.pop_back();
    }
    upper.push_back(p);
  }

  // Pareto part: from the highest R_c (rightmost on ties) to the largest R_est.
  std::size_t peak = 0;
  for (std::size_t i = 1; i < upper.size(); ++i) {
    if (upper[i].r_c_bps >= upper[peak].r_c_bps) peak = i;
  }
  Frontier f;
  f.vertices.assign(upper.rbegin(),
                    upper.rend() - static_cast<std::ptrdiff_t>(peak));
  return f;
}

double grid_argmax_alpha(const DerivedParams& d, double p_c_w, double p_r_w, double step) {
  require(std::isfinite(step) && step > 0.0 && step <= 1.0, "alpha step must be in (0, 1]");
  const auto n = static_cast<std::size_t>(std::llround(1.0 / step));
  double best_alpha = 0.0;
  double best = -1.0;
  for (std::size_t i = 0; i <= n; ++i) {
    const double alpha = std::min(1.0, static_cast<double>(i) * step);
    const double sum = dir_rs(d, PowerSplit::from_alpha(alpha, p_c_w), p_r_w).sum();
    if (sum > best) {
      best = sum;
      best_alpha = alpha;
    }
  }
  return best_alpha;
}

std::vector<AlphaAtRange> sweep_alpha_vs_range(const SystemParams& params,
                                               std::span<const double> range_grid_m) {
  std::vector<AlphaAtRange> out;
  out.reserve(range_grid_m.size());
  for (double r : range_grid_m) {
    require(std::isfinite(r) && r > 0.0, "communication range must be > 0");
    SystemParams p = params;
    p.comm_range_m = r;
    const AlphaOptimum opt = alpha_opt(derive(p), p.comm_power_w, p.radar_power_w);
    out.push_back(AlphaAtRange{r, opt.raw, opt.clamped});
  }
  return out;
}

}  // namespace isac
