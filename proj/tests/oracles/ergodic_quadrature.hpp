#pragma once

// Fading-averaged bounds by deterministic quadrature: the expectation over
// independent unit-mean exponential power factors on |b_c|^2 and |a_r|^2 is a
// 2-D integral against exp(-x - y) on [0, inf)^2, done with nested
// exp-sinh rules.

#include <algorithm>
#include <limits>

#include <boost/math/quadrature/exp_sinh.hpp>

#include "isac/bounds.hpp"
#include "isac/linkbudget.hpp"

namespace isac::oracle {

struct Expectation {
  double r_est_bps = 0.0;
  double r_c_bps = 0.0;
};

inline Expectation fading_average(Scheme scheme, const SystemParams& p, double knob) {
  const DerivedParams base = derive(p);
  // exp-sinh abscissas approach 0 without reaching it; keep the echo gain
  // representable so the CRLB stays defined.
  constexpr double kFloor = 1e-250;
  auto point = [&](double x, double y) {
    DerivedParams d = base;
    d.comm_power_gain *= std::max(x, kFloor);
    d.radar_power_gain *= std::max(y, kFloor);
    return evaluate(scheme, d, knob, p.comm_power_w, p.radar_power_w);
  };
  boost::math::quadrature::exp_sinh<double> outer;
  boost::math::quadrature::exp_sinh<double> inner;
  const double tol = 1e-11;
  const auto average = [&](auto coordinate) {
    return outer.integrate(
        [&](double y) {
          const double w = std::exp(-y);
          if (w == 0.0) return 0.0;
          return w * inner.integrate(
                         [&](double x) {
                           const double v = std::exp(-x);
                           return v == 0.0 ? 0.0 : v * coordinate(point(x, y));
                         },
                         tol);
        },
        tol);
  };
  return Expectation{average([](const RatePoint& r) { return r.r_est_bps; }),
                     average([](const RatePoint& r) { return r.r_c_bps; })};
}

}  // namespace isac::oracle
