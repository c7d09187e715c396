#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

#include "isac/montecarlo.hpp"

namespace isac::detail {

/// Welford accumulator; merge() uses the pairwise update so a fixed merge
/// order gives bit-identical results.
struct RunningStats {
  std::size_t n = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void push(double x) {
    ++n;
    const double delta = x - mean;
    mean += delta / static_cast<double>(n);
    m2 += delta * (x - mean);
  }

  void merge(const RunningStats& o) {
    if (o.n == 0) return;
    if (n == 0) {
      *this = o;
      return;
    }
    const double total = static_cast<double>(n + o.n);
    const double delta = o.mean - mean;
    mean += delta * static_cast<double>(o.n) / total;
    m2 += o.m2 + delta * delta * static_cast<double>(n) * static_cast<double>(o.n) / total;
    n += o.n;
  }

  TrialStats stats(std::uint64_t seed) const {
    TrialStats s;
    s.mean = mean;
    s.n_trials = n;
    s.seed = seed;
    if (n > 1) {
      const double var = m2 / static_cast<double>(n - 1);
      s.std_error = std::sqrt(var / static_cast<double>(n));
    }
    return s;
  }
};

inline constexpr std::size_t kChunk = 1024;

/// Runs body(chunk_index, begin, end) over fixed-size chunks of [0, n) on up to
/// `threads` workers. Chunk boundaries do not depend on the thread count.
template <class Body>
void for_each_chunk(std::size_t n, unsigned threads, Body&& body) {
  const std::size_t chunks = (n + kChunk - 1) / kChunk;
  const unsigned workers =
      static_cast<unsigned>(std::clamp<std::size_t>(threads == 0 ? 1 : threads, 1, std::max<std::size_t>(chunks, 1)));
  auto run = [&](unsigned w) {
    for (std::size_t c = w; c < chunks; c += workers) {
      body(c, c * kChunk, std::min(n, (c + 1) * kChunk));
    }
  };
  if (workers == 1) {
    run(0);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        run(w);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace isac::detail
