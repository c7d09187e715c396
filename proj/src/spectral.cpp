#include "spectral.hpp"

#include <unsupported/Eigen/FFT>

namespace isac::spectral {

CVector forward(const CVector& x) {
  Eigen::FFT<double> fft;
  CVector out;
  fft.fwd(out, x);
  return out;
}

CVector inverse(const CVector& spectrum) {
  Eigen::FFT<double> fft;
  CVector out;
  fft.inv(out, spectrum);
  return out;
}

long signed_bin(std::size_t k, std::size_t n) {
  const auto kk = static_cast<long>(k);
  const auto nn = static_cast<long>(n);
  return 2 * kk < nn ? kk : kk - nn;
}

double bin_frequency(std::size_t k, std::size_t n, double sample_rate_hz) {
  return static_cast<double>(signed_bin(k, n)) * sample_rate_hz / static_cast<double>(n);
}

}  // namespace isac::spectral
