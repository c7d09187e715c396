#pragma once

// FFT helpers shared by the pulse builders and the delay estimator.

#include <complex>
#include <cstddef>
#include <vector>

namespace isac::spectral {

using CVector = std::vector<std::complex<double>>;

/// Unnormalized forward DFT, X[k] = sum_n x[n] e^{-j 2 pi k n / N}.
CVector forward(const CVector& x);

/// Inverse DFT with 1/N scaling.
CVector inverse(const CVector& spectrum);

/// Signed bin index: k for k < N/2, k - N otherwise (Nyquist maps to -N/2).
long signed_bin(std::size_t k, std::size_t n);

/// Frequency of bin k in Hz.
double bin_frequency(std::size_t k, std::size_t n, double sample_rate_hz);

}  // namespace isac::spectral
