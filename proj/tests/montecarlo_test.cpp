#include <cmath>
#include <numbers>

#include <boost/math/special_functions/expint.hpp>
#include <gtest/gtest.h>

#include "isac/bounds.hpp"
#include "isac/errors.hpp"
#include "isac/fim.hpp"
#include "isac/montecarlo.hpp"
#include "oracles/ergodic_quadrature.hpp"

namespace isac {
namespace {

TEST(Fading, UnitMeanExponential) {
  constexpr int kN = 100000;
  double comm = 0.0;
  double radar = 0.0;
  double comm_sq = 0.0;
  for (int i = 0; i < kN; ++i) {
    TrialRng rng(5, RngStream::fading, i);
    const auto f = draw_fading(rng, FadingOptions{});
    ASSERT_GT(f.comm_power_factor, 0.0);
    ASSERT_GT(f.radar_power_factor, 0.0);
    comm += f.comm_power_factor;
    radar += f.radar_power_factor;
    comm_sq += f.comm_power_factor * f.comm_power_factor;
  }
  EXPECT_NEAR(comm / kN, 1.0, 0.01);
  EXPECT_NEAR(radar / kN, 1.0, 0.01);
  EXPECT_NEAR(comm_sq / kN, 2.0, 0.05);  // E[X^2] = 2 for Exp(1)
}

TEST(Fading, TogglingOnePathKeepsTheOther) {
  TrialRng a(9, RngStream::fading, 3);
  TrialRng b(9, RngStream::fading, 3);
  const auto both = draw_fading(a, FadingOptions{true, true});
  const auto radar_only = draw_fading(b, FadingOptions{false, true});
  EXPECT_EQ(radar_only.comm_power_factor, 1.0);
  EXPECT_EQ(radar_only.radar_power_factor, both.radar_power_factor);
}

ErgodicOptions small(std::size_t trials = 5000) {
  ErgodicOptions o;
  o.n_trials = trials;
  o.seed = 42;
  return o;
}

TEST(Ergodic, NoFadingReproducesTheBound) {
  const SystemParams p;
  const auto d = derive(p);
  auto o = small(100);
  o.fading = FadingOptions{false, false};
  for (auto [scheme, knob] : {std::pair{Scheme::rs, 0.004}, std::pair{Scheme::oma, 0.3},
                              std::pair{Scheme::noma, 0.5}}) {
    const auto e = ergodic_rates(scheme, p, knob, o);
    const auto b = evaluate(scheme, d, knob, p.comm_power_w, p.radar_power_w);
    EXPECT_EQ(e.r_est.mean, b.r_est_bps);
    EXPECT_EQ(e.r_c.mean, b.r_c_bps);
    EXPECT_EQ(e.r_est.std_error, 0.0);
    EXPECT_EQ(e.r_c.std_error, 0.0);
    EXPECT_EQ(e.r_est.n_trials, 100u);
  }
}

TEST(Ergodic, RsAtZeroSplitMatchesNomaTrialByTrial) {
  const SystemParams p;
  const auto rs = ergodic_rates(Scheme::rs, p, 0.0, small());
  const auto noma = ergodic_rates(Scheme::noma, p, 1.0, small());
  EXPECT_EQ(rs.r_est, noma.r_est);
  EXPECT_EQ(rs.r_c, noma.r_c);
}

TEST(Ergodic, IndependentOfThreadCount) {
  const SystemParams p;
  auto o = small(10000);
  const auto one = ergodic_rates(Scheme::rs, p, 0.01, o);
  for (unsigned t : {2u, 3u, 8u}) {
    o.threads = t;
    const auto many = ergodic_rates(Scheme::rs, p, 0.01, o);
    EXPECT_EQ(one.r_est, many.r_est) << t;
    EXPECT_EQ(one.r_c, many.r_c) << t;
  }
}

TEST(Ergodic, SeedControlsTheDraws) {
  const SystemParams p;
  auto o = small();
  const auto a = ergodic_rates(Scheme::oma, p, 0.5, o);
  const auto b = ergodic_rates(Scheme::oma, p, 0.5, o);
  EXPECT_EQ(a.r_c, b.r_c);
  EXPECT_EQ(a.r_c.seed, 42u);
  o.seed = 43;
  EXPECT_NE(ergodic_rates(Scheme::oma, p, 0.5, o).r_c.mean, a.r_c.mean);
}

TEST(Ergodic, CommFadingLowersTheNomaRate) {
  // log(1 + x) is concave in the channel gain, so fading can only hurt.
  const SystemParams p;
  auto o = small(20000);
  o.fading = FadingOptions{true, false};
  const auto e = ergodic_rates(Scheme::noma, p, 1.0, o);
  const auto b = noma_bounds(derive(p), p.comm_power_w, p.comm_power_w, p.radar_power_w);
  EXPECT_LT(e.r_c.mean, b.r_c_bps);
  EXPECT_EQ(e.r_est.mean, b.r_est_bps);
}

TEST(Ergodic, QuadratureOracleMatchesExponentialIntegral) {
  // NOMA estimation sees no comm interference, so only the echo fades and
  // E[log2(1 + c Y)] = exp(1/c) E1(1/c) / ln 2 for Y ~ Exp(1).
  const SystemParams p;
  const auto d = derive(p);
  const double c = std::exp2(noma_bounds(d, 0.0, p.comm_power_w, p.radar_power_w).r_est_bps /
                             reir_prefactor(d)) - 1.0;
  const double expected = reir_prefactor(d) * std::exp(1.0 / c) *
                          boost::math::expint(1, 1.0 / c) / std::numbers::ln2;
  EXPECT_NEAR(oracle::fading_average(Scheme::noma, p, 0.5).r_est_bps, expected,
              1e-9 * expected);
}

TEST(Ergodic, AgreesWithQuadrature) {
  const SystemParams p;
  auto o = small(20000);
  o.threads = 4;
  for (auto [scheme, knob] : {std::pair{Scheme::rs, 0.01}, std::pair{Scheme::oma, 0.75}}) {
    const auto mc = ergodic_rates(scheme, p, knob, o);
    const auto q = oracle::fading_average(scheme, p, knob);
    EXPECT_LE(std::abs(mc.r_est.mean - q.r_est_bps), 4.0 * mc.r_est.std_error);
    EXPECT_LE(std::abs(mc.r_c.mean - q.r_c_bps), 4.0 * mc.r_c.std_error);
  }
}

TEST(Ergodic, RejectsBadInputs) {
  const SystemParams p;
  auto o = small();
  EXPECT_THROW(ergodic_rates(Scheme::rs, p, 1.5, o), DomainError);
  o.n_trials = 0;
  EXPECT_THROW(ergodic_rates(Scheme::rs, p, 0.5, o), DomainError);
}

// Reference scenario with the echo boosted by `boost_db`.
struct DelaySetup {
  SystemParams p;
  DerivedParams d = derive(p);
  PulseSamples pulse = make_flat_pulse(100, 4, p.bandwidth_hz);
  InterferencePulse h = make_interference_pulse(100, 4, 1);

  ObservationModel model(double boost_db, double p_c2_w) const {
    return ObservationModel::from(d, p.radar_power_w * db_to_linear(boost_db), p_c2_w);
  }
  double crlb(const ObservationModel& m) const {
    return crlb_from_fim(fim_sherman_morrison(pulse, h, m));
  }
};

DelayEstimationOptions trials(std::size_t n, std::uint64_t seed = 1) {
  DelayEstimationOptions o;
  o.n_trials = n;
  o.seed = seed;
  o.threads = 4;
  return o;
}

TEST(DelayEstimator, NoiselessEstimateIsExact) {
  const DelaySetup s;
  for (double tau : {0.0, 1.3e-7, -3.77e-7, 4.2e-6, -9.9e-6}) {
    const auto z = delayed(s.pulse, tau).observation();
    EXPECT_NEAR(estimate_delay(s.pulse, z, DelayRefinement::newton), tau,
                1e-9 * s.pulse.sample_period_s())
        << tau;
    EXPECT_NEAR(estimate_delay(s.pulse, z, DelayRefinement::parabolic), tau,
                0.5 * s.pulse.sample_period_s())
        << tau;
  }
}

TEST(DelayEstimator, EfficientAtHighSnr) {
  const DelaySetup s;
  const auto m = s.model(30.0, 0.0);
  const double crlb = s.crlb(m);
  const auto stats = simulate_delay_estimation(s.pulse, s.h, m, 1.3e-7, trials(1000));
  const double mse = stats.squared_error.mean;
  EXPECT_GE(mse + 2.326 * stats.squared_error.std_error, crlb);
  EXPECT_LE(mse, 2.0 * crlb);
  EXPECT_LE(std::abs(stats.error.mean), 3.0 * stats.error.std_error);
}

TEST(DelayEstimator, ParabolicRefinementHasABiasFloor) {
  // Three-point interpolation on the correlation magnitude leaves a
  // deterministic error that dominates once the echo is strong; the Newton
  // polish removes it.
  const DelaySetup s;
  const auto m = s.model(40.0, 0.0);
  const double tau = 2.25 * s.pulse.sample_period_s();
  auto o = trials(300);
  o.refinement = DelayRefinement::parabolic;
  const double parabolic =
      simulate_delay_estimation(s.pulse, s.h, m, tau, o).squared_error.mean;
  o.refinement = DelayRefinement::newton;
  const double newton = simulate_delay_estimation(s.pulse, s.h, m, tau, o).squared_error.mean;
  EXPECT_GT(parabolic, 5.0 * s.crlb(m));
  EXPECT_LT(newton, 1.3 * s.crlb(m));
}

TEST(DelayEstimator, StrongerEchoLowersTheError) {
  const DelaySetup s;
  const auto o = trials(400, 7);
  double prev = INFINITY;
  for (double boost : {10.0, 20.0, 30.0}) {
    const double mse =
        simulate_delay_estimation(s.pulse, s.h, s.model(boost, 0.0), 2e-7, o)
            .squared_error.mean;
    EXPECT_LT(mse, prev) << boost;
    prev = mse;
  }
}

TEST(DelayEstimator, InterferenceNeverBeatsTheExactBound) {
  const DelaySetup s;
  const double p_c2 = s.p.comm_power_w;
  const auto m = s.model(30.0, p_c2);
  const double crlb = s.crlb(m);
  constexpr int kBatches = 20;
  int above = 0;
  for (int b = 0; b < kBatches; ++b) {
    const auto stats = simulate_delay_estimation(s.pulse, s.h, m, -2.1e-7, trials(200, 100 + b));
    above += stats.squared_error.mean >= crlb;
  }
  EXPECT_GE(above, 19);  // >= 95% of batches
}

TEST(DelayEstimator, ResultsIndependentOfThreads) {
  const DelaySetup s;
  const auto m = s.model(20.0, 1.0);
  auto o = trials(2100, 3);
  o.threads = 1;
  const auto a = simulate_delay_estimation(s.pulse, s.h, m, 5e-8, o);
  o.threads = 5;
  const auto b = simulate_delay_estimation(s.pulse, s.h, m, 5e-8, o);
  EXPECT_EQ(a.squared_error, b.squared_error);
  EXPECT_EQ(a.error, b.error);
}

TEST(DelayEstimator, RejectsDelaysOutsideTheWindow) {
  const DelaySetup s;
  const auto m = s.model(0.0, 0.0);
  const double half = 0.5 * s.pulse.window_s();
  EXPECT_THROW(simulate_delay_estimation(s.pulse, s.h, m, half, trials(1)), DomainError);
  EXPECT_THROW(simulate_delay_estimation(s.pulse, s.h, m, -half, trials(1)), DomainError);
  EXPECT_THROW(simulate_delay_estimation(s.pulse, s.h, m, 0.0, trials(0)), DomainError);
  auto blind = m;
  blind.radar_power_w = 0.0;
  EXPECT_THROW(simulate_delay_estimation(s.pulse, s.h, blind, 0.0, trials(1)), DomainError);
  const auto short_h = make_interference_pulse(50, 4, 1);
  EXPECT_THROW(simulate_delay_estimation(s.pulse, short_h, m, 0.0, trials(1)), DomainError);
}

}  // namespace
}  // namespace isac
