#include "isac/montecarlo.hpp"

#include <vector>

#include "isac/errors.hpp"
#include "parallel.hpp"

namespace isac {

FadingDraw draw_fading(TrialRng& rng, const FadingOptions& options) {
  // Both variates are always consumed so each path's samples are fixed by the
  // trial index alone.
  const double comm = rng.exponential();
  const double radar = rng.exponential();
  return FadingDraw{options.comm ? comm : 1.0, options.radar ? radar : 1.0};
}

ErgodicRates ergodic_rates(Scheme scheme, const SystemParams& params, double knob,
                           const ErgodicOptions& options) {
  if (options.n_trials < 1) throw DomainError("n_trials must be >= 1");
  const DerivedParams base = derive(params);
  // Validate the knob once up front; per-trial failures would otherwise
  // surface from a worker thread.
  (void)evaluate(scheme, base, knob, params.comm_power_w, params.radar_power_w);

  const std::size_t chunks = (options.n_trials + detail::kChunk - 1) / detail::kChunk;
  std::vector<detail::RunningStats> est(chunks), comm(chunks);
  detail::for_each_chunk(options.n_trials, options.threads,
                         [&](std::size_t c, std::size_t begin, std::size_t end) {
                           for (std::size_t i = begin; i < end; ++i) {
                             TrialRng rng(options.seed, RngStream::fading, i);
                             const FadingDraw f = draw_fading(rng, options.fading);
                             DerivedParams d = base;
                             d.comm_power_gain *= f.comm_power_factor;
                             d.radar_power_gain *= f.radar_power_factor;
                             const RatePoint p = evaluate(scheme, d, knob, params.comm_power_w,
                                                          params.radar_power_w);
                             est[c].push(p.r_est_bps);
                             comm[c].push(p.r_c_bps);
                           }
                         });

  detail::RunningStats est_total, comm_total;
  for (std::size_t c = 0; c < chunks; ++c) {
    est_total.merge(est[c]);
    comm_total.merge(comm[c]);
  }
  return ErgodicRates{scheme, knob, est_total.stats(options.seed),
                      comm_total.stats(options.seed)};
}

}  // namespace isac
