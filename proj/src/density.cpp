#include "sarfc/density.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "sarfc/dct.hpp"

namespace sarfc {

namespace {

constexpr double kPi = std::numbers::pi;

struct NormalizedColumn {
  Eigen::VectorXd values;  // in [0,1]
  bool constant = false;
};

NormalizedColumn normalize01(const Eigen::VectorXd& col) {
  NormalizedColumn out;
  const double lo = col.minCoeff();
  const double hi = col.maxCoeff();
  if (!(hi > lo)) {
    out.constant = true;
    out.values = Eigen::VectorXd::Constant(col.size(), 0.5);
    return out;
  }
  out.values = (col.array() - lo) / (hi - lo);
  return out;
}

// Simple binning (each sample into one bin), masses sum to 1.
Eigen::VectorXd bin_simple(const Eigen::VectorXd& x01, int grid) {
  Eigen::VectorXd c = Eigen::VectorXd::Zero(grid);
  const double g = static_cast<double>(grid);
  for (Index i = 0; i < x01.size(); ++i) {
    int b = static_cast<int>(std::floor(x01[i] * g));
    b = std::clamp(b, 0, grid - 1);
    c[b] += 1.0;
  }
  c /= static_cast<double>(x01.size());
  return c;
}

// Linear binning onto bin centers (j+0.5)/G; masses sum to 1.
Eigen::VectorXd bin_linear(const Eigen::VectorXd& x01, int grid) {
  Eigen::VectorXd c = Eigen::VectorXd::Zero(grid);
  const double g = static_cast<double>(grid);
  for (Index i = 0; i < x01.size(); ++i) {
    const double u = x01[i] * g - 0.5;
    int j = static_cast<int>(std::floor(u));
    double f = u - static_cast<double>(j);
    if (j < 0) { j = 0; f = 0.0; }
    if (j >= grid - 1) { j = grid - 1; f = 0.0; }
    c[j] += 1.0 - f;
    if (j + 1 < grid) c[j + 1] += f;
  }
  c /= static_cast<double>(x01.size());
  return c;
}

double count_distinct(const Eigen::VectorXd& x) {
  std::vector<double> v(x.data(), x.data() + x.size());
  std::sort(v.begin(), v.end());
  return static_cast<double>(std::unique(v.begin(), v.end()) - v.begin());
}

// xi * gamma^[l](t) of the improved Sheather-Jones iteration, l = 7.
// a2 holds the squared cosine coefficients (a_k)^2 for k = 1..G-1.
double isj_rhs(double t, double n, const Eigen::VectorXd& a2) {
  const Index m = a2.size();
  Eigen::ArrayXd ksq(m);
  for (Index k = 0; k < m; ++k) {
    const double kk = static_cast<double>(k + 1);
    ksq[k] = kk * kk;
  }
  const int l = 7;
  double f = 2.0 * std::pow(kPi, 2 * l) *
             (ksq.pow(l) * a2.array() * (-ksq * kPi * kPi * t).exp()).sum();
  for (int s = l - 1; s >= 2; --s) {
    double k0 = 1.0;
    for (int j = 1; j <= 2 * s - 1; j += 2) k0 *= static_cast<double>(j);
    k0 /= std::sqrt(2.0 * kPi);
    const double c = (1.0 + std::pow(0.5, s + 0.5)) / 3.0;
    const double time = std::pow(2.0 * c * k0 / (n * f), 2.0 / (3.0 + 2.0 * s));
    f = 2.0 * std::pow(kPi, 2 * s) *
        (ksq.pow(s) * a2.array() * (-ksq * kPi * kPi * time).exp()).sum();
  }
  if (!(f > 0.0) || !std::isfinite(f)) return std::numeric_limits<double>::infinity();
  return std::pow(2.0 * n * std::sqrt(kPi) * f, -0.4);
}

}  // namespace

BandwidthSolution sj_bandwidth(const Eigen::VectorXd& samples, int grid_size) {
  if (samples.size() < 2) throw DegenerateDataError("sj_bandwidth needs >= 2 samples");
  if (!is_pow2(grid_size) || grid_size < 2)
    throw InvalidParameterError("grid_size must be a power of two >= 2");

  const NormalizedColumn nc = normalize01(samples);
  if (nc.constant) throw DegenerateDataError("all samples identical");

  const double n_distinct = count_distinct(nc.values);
  const Eigen::VectorXd c = bin_simple(nc.values, grid_size);
  Eigen::VectorXd coeffs;
  dct2_pow2(c, coeffs);
  Eigen::VectorXd a2(grid_size - 1);
  for (int k = 1; k < grid_size; ++k) {
    const double a = 0.5 * coeffs[k];
    a2[k - 1] = a * a;
  }

  auto g = [&](double t) { return isj_rhs(t, n_distinct, a2) - t; };

  // Geometric scan for the first sign change, then bisection: smallest root.
  constexpr double t_lo = 1e-12;
  constexpr double t_hi = 0.5;
  constexpr int scan_steps = 200;
  BandwidthSolution sol;
  double lo = t_lo;
  double g_lo = g(lo);
  double hi = 0.0;
  bool bracketed = false;
  for (int i = 1; i <= scan_steps; ++i) {
    const double t = t_lo * std::pow(t_hi / t_lo, static_cast<double>(i) / scan_steps);
    const double gt = g(t);
    if (std::isfinite(g_lo) && std::isfinite(gt) && g_lo > 0.0 && gt <= 0.0) {
      hi = t;
      bracketed = true;
      break;
    }
    lo = t;
    g_lo = gt;
  }

  if (!bracketed) {
    const Eigen::VectorXd& x = nc.values;
    const double mean = x.mean();
    const double sigma = std::sqrt((x.array() - mean).square().sum() /
                                   static_cast<double>(x.size() - 1));
    const double h = sigma * std::pow(4.0 / (3.0 * n_distinct), 0.2);
    sol.t = h * h;
    sol.silverman_fallback = true;
    sol.residual = std::abs(g(sol.t));
    return sol;
  }

  int iters = 0;
  while (hi - lo > 1e-9) {
    const double mid = 0.5 * (lo + hi);
    if (g(mid) > 0.0) lo = mid; else hi = mid;
    ++iters;
  }
  sol.t = 0.5 * (lo + hi);
  sol.iterations = iters;
  sol.residual = std::abs(g(sol.t));
  return sol;
}

Eigen::VectorXd diffusion_kde_1d(const Eigen::VectorXd& samples01, double t, int grid_size) {
  if (!(t > 0.0)) throw InvalidParameterError("diffusion_kde_1d requires t > 0");
  if (!is_pow2(grid_size) || grid_size < 2)
    throw InvalidParameterError("grid_size must be a power of two >= 2");
  if (samples01.size() < 1) throw InvalidInputError("empty sample vector");
  if (samples01.minCoeff() < -1e-9 || samples01.maxCoeff() > 1.0 + 1e-9)
    throw InvalidInputError("samples must be normalized to [0,1]");

  Eigen::VectorXd c = bin_linear(samples01, grid_size);
  Eigen::VectorXd coeffs;
  dct2_pow2(c, coeffs);
  for (int k = 0; k < grid_size; ++k) {
    const double kk = static_cast<double>(k);
    coeffs[k] *= std::exp(-kk * kk * kPi * kPi * t / 2.0);
  }
  Eigen::VectorXd f;
  dct3_pow2(coeffs, f);
  f *= static_cast<double>(grid_size);
  return f.cwiseMax(0.0);
}

double interpolate_grid(const Eigen::VectorXd& grid, double x) {
  const Index g = grid.size();
  const double u = x * static_cast<double>(g) - 0.5;
  Index j = static_cast<Index>(std::floor(u));
  double w = u - static_cast<double>(j);
  if (j < 0) { j = 0; w = 0.0; }
  if (j >= g - 1) { j = g - 1; w = 0.0; }
  const Index j1 = std::min(j + 1, g - 1);
  return (1.0 - w) * grid[j] + w * grid[j1];
}

double gaussian_reference_t(const Eigen::VectorXd& col01, Index n, int d_effective) {
  const double mean = col01.mean();
  const double sigma = std::sqrt((col01.array() - mean).square().sum() /
                                 static_cast<double>(col01.size() - 1));
  const double rate = -1.0 / (static_cast<double>(d_effective) + 4.0);
  const double h = 0.5 * sigma * std::pow(static_cast<double>(n), rate);
  return h * h;
}

namespace {

// 2-D reflected diffusion density on a G x G grid of bin centers, then
// bilinear interpolation at the points. Separable damping, two DCT passes.
Eigen::VectorXd kde2d_at_points(const Eigen::VectorXd& x01, const Eigen::VectorXd& y01,
                                double tx, double ty) {
  constexpr int G = 1024;
  const Index n = x01.size();
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(G, G);
  const double g = static_cast<double>(G);

  auto locate = [&](double v, Index& j, double& f) {
    const double u = v * g - 0.5;
    j = static_cast<Index>(std::floor(u));
    f = u - static_cast<double>(j);
    if (j < 0) { j = 0; f = 0.0; }
    if (j >= G - 1) { j = G - 1; f = 0.0; }
  };

  for (Index i = 0; i < n; ++i) {
    Index jx, jy;
    double fx, fy;
    locate(x01[i], jx, fx);
    locate(y01[i], jy, fy);
    const Index jx1 = std::min(jx + 1, static_cast<Index>(G - 1));
    const Index jy1 = std::min(jy + 1, static_cast<Index>(G - 1));
    c(jx, jy) += (1 - fx) * (1 - fy);
    c(jx1, jy) += fx * (1 - fy);
    c(jx, jy1) += (1 - fx) * fy;
    c(jx1, jy1) += fx * fy;
  }
  c /= static_cast<double>(n);

  Eigen::VectorXd buf, tf;
  // DCT-II along x (columns of c hold fixed y), damp, along y, damp, invert.
  Eigen::MatrixXd A(G, G);
  for (int col = 0; col < G; ++col) {
    buf = c.col(col);
    dct2_pow2(buf, tf);
    A.col(col) = tf;
  }
  Eigen::MatrixXd B(G, G);
  for (int row = 0; row < G; ++row) {
    buf = A.row(row);
    dct2_pow2(buf, tf);
    B.row(row) = tf;
  }
  for (int kx = 0; kx < G; ++kx) {
    const double kx2 = static_cast<double>(kx) * kx;
    for (int ky = 0; ky < G; ++ky) {
      const double ky2 = static_cast<double>(ky) * ky;
      B(kx, ky) *= std::exp(-(kx2 * tx + ky2 * ty) * kPi * kPi / 2.0);
    }
  }
  for (int row = 0; row < G; ++row) {
    buf = B.row(row);
    dct3_pow2(buf, tf);
    B.row(row) = tf;
  }
  for (int col = 0; col < G; ++col) {
    buf = B.col(col);
    dct3_pow2(buf, tf);
    B.col(col) = tf;
  }
  B *= g * g;
  B = B.cwiseMax(0.0);

  Eigen::VectorXd rho(n);
  for (Index i = 0; i < n; ++i) {
    Index jx, jy;
    double fx, fy;
    locate(x01[i], jx, fx);
    locate(y01[i], jy, fy);
    const Index jx1 = std::min(jx + 1, static_cast<Index>(G - 1));
    const Index jy1 = std::min(jy + 1, static_cast<Index>(G - 1));
    rho[i] = B(jx, jy) * (1 - fx) * (1 - fy) + B(jx1, jy) * fx * (1 - fy) +
             B(jx, jy1) * (1 - fx) * fy + B(jx1, jy1) * fx * fy;
  }
  return rho;
}

}  // namespace

DensityProfile point_densities(const Dataset& dataset) {
  dataset.validate();
  const Index n = dataset.n();
  const Index d = dataset.dims();

  DensityProfile prof;
  std::vector<Eigen::VectorXd> cols;
  for (Index j = 0; j < d; ++j) {
    NormalizedColumn nc = normalize01(dataset.points.col(j));
    if (nc.constant) {
      prof.constant_dims.push_back(static_cast<int>(j));
      continue;
    }
    cols.push_back(std::move(nc.values));
  }
  const int de = static_cast<int>(cols.size());

  if (de == 0) {
    prof.rho = Eigen::VectorXd::Ones(n);
  } else if (de == 1) {
    BandwidthSolution bw = sj_bandwidth(cols[0]);
    prof.bandwidth_fallback = bw.silverman_fallback;
    const Eigen::VectorXd grid = diffusion_kde_1d(cols[0], bw.t);
    prof.rho.resize(n);
    for (Index i = 0; i < n; ++i) prof.rho[i] = interpolate_grid(grid, cols[0][i]);
  } else if (de == 2) {
    BandwidthSolution bx = sj_bandwidth(cols[0]);
    BandwidthSolution by = sj_bandwidth(cols[1]);
    prof.bandwidth_fallback = bx.silverman_fallback || by.silverman_fallback;
    prof.rho = kde2d_at_points(cols[0], cols[1], bx.t, by.t);
  } else {
    std::vector<double> ts(cols.size());
    for (size_t j = 0; j < cols.size(); ++j) ts[j] = gaussian_reference_t(cols[j], n, de);
    prof.rho.resize(n);
    Eigen::VectorXd q(n);
    for (Index i = 0; i < n; ++i) {
      q.setOnes();
      for (size_t j = 0; j < cols.size(); ++j) {
        const double t = ts[j];
        const double norm = 1.0 / std::sqrt(2.0 * kPi * t);
        const double xi = cols[j][i];
        q.array() *= (-(cols[j].array() - xi).square() / (2.0 * t)).exp() * norm;
      }
      prof.rho[i] = q.mean();
    }
  }

  prof.sort_perm.resize(static_cast<size_t>(n));
  std::iota(prof.sort_perm.begin(), prof.sort_perm.end(), Index{0});
  std::stable_sort(prof.sort_perm.begin(), prof.sort_perm.end(),
                   [&](Index a, Index b) { return prof.rho[a] > prof.rho[b]; });
  prof.rho_sorted.resize(n);
  for (Index r = 0; r < n; ++r) prof.rho_sorted[r] = prof.rho[prof.sort_perm[static_cast<size_t>(r)]];
  return prof;
}

}  // namespace sarfc
