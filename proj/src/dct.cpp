#include "sarfc/dct.hpp"

#include <complex>
#include <numbers>
#include <vector>

#include <unsupported/Eigen/FFT>

#include "sarfc/types.hpp"

namespace sarfc {

namespace {
constexpr double kPi = std::numbers::pi;

void require_pow2(Eigen::Index n) {
  if (n < 2 || !is_pow2(n))
    throw InvalidParameterError("DCT length must be a power of two >= 2");
}
}  // namespace

void dct2_pow2(const Eigen::VectorXd& x, Eigen::VectorXd& out) {
  const Eigen::Index n = x.size();
  require_pow2(n);

  // Makhoul reordering: evens ascending, odds descending.
  std::vector<std::complex<double>> v(static_cast<size_t>(n));
  for (Eigen::Index j = 0; j < n / 2; ++j) {
    v[static_cast<size_t>(j)] = x[2 * j];
    v[static_cast<size_t>(n - 1 - j)] = x[2 * j + 1];
  }
  std::vector<std::complex<double>> spec;
  Eigen::FFT<double> fft;
  fft.fwd(spec, v);

  out.resize(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double theta = -kPi * static_cast<double>(k) / (2.0 * static_cast<double>(n));
    out[k] = 2.0 * std::real(std::polar(1.0, theta) * spec[static_cast<size_t>(k)]);
  }
}

void dct3_pow2(const Eigen::VectorXd& X, Eigen::VectorXd& out) {
  const Eigen::Index n = X.size();
  require_pow2(n);

  std::vector<std::complex<double>> w(static_cast<size_t>(n));
  w[0] = std::complex<double>(0.5 * X[0], 0.0);
  for (Eigen::Index k = 1; k < n; ++k) {
    const double theta = kPi * static_cast<double>(k) / (2.0 * static_cast<double>(n));
    w[static_cast<size_t>(k)] = std::polar(1.0, theta) * std::complex<double>(X[k], 0.0);
  }
  std::vector<std::complex<double>> u;
  Eigen::FFT<double> fft;
  fft.inv(u, w);

  out.resize(n);
  for (Eigen::Index j = 0; j < n / 2; ++j) {
    out[2 * j] = u[static_cast<size_t>(j)].real();
    out[2 * j + 1] = u[static_cast<size_t>(n - 1 - j)].real();
  }
}

}  // namespace sarfc
