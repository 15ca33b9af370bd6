#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>
#include <numeric>
#include <random>

#include "sarfc/density.hpp"

using namespace sarfc;

namespace {

constexpr double kPi = std::numbers::pi;

Eigen::VectorXd normal_samples(Index n, std::uint64_t seed, double mu = 0.0, double sigma = 1.0) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(mu, sigma);
  Eigen::VectorXd x(n);
  for (Index i = 0; i < n; ++i) x[i] = gauss(rng);
  return x;
}

Eigen::VectorXd to01(const Eigen::VectorXd& x) {
  const double lo = x.minCoeff(), hi = x.maxCoeff();
  return (x.array() - lo) / (hi - lo);
}

// the binned-coefficient cosine series evaluated without any DCT
Eigen::VectorXd kde_direct_series(const Eigen::VectorXd& s01, double t, int grid) {
  // identical linear binning
  Eigen::VectorXd c = Eigen::VectorXd::Zero(grid);
  const double g = grid;
  for (Index i = 0; i < s01.size(); ++i) {
    const double u = s01[i] * g - 0.5;
    int j = static_cast<int>(std::floor(u));
    double f = u - j;
    if (j < 0) { j = 0; f = 0.0; }
    if (j >= grid - 1) { j = grid - 1; f = 0.0; }
    c[j] += 1.0 - f;
    if (j + 1 < grid) c[j + 1] += f;
  }
  c /= static_cast<double>(s01.size());
  // a_k by direct summation
  Eigen::VectorXd a(grid);
  for (int k = 0; k < grid; ++k) {
    double s = 0.0;
    for (int j = 0; j < grid; ++j) s += c[j] * std::cos(kPi * k * (j + 0.5) / g);
    a[k] = s;
  }
  Eigen::VectorXd f(grid);
  for (int j = 0; j < grid; ++j) {
    double s = a[0];
    for (int k = 1; k < grid; ++k)
      s += 2.0 * a[k] * std::exp(-k * static_cast<double>(k) * kPi * kPi * t / 2.0) *
           std::cos(kPi * k * (j + 0.5) / g);
    f[j] = std::max(s, 0.0);
  }
  return f;
}

// plain Gaussian-sum KDE at x, bandwidth h = sqrt(t)
double gauss_kde(const Eigen::VectorXd& s01, double t, double x) {
  const double norm = 1.0 / std::sqrt(2.0 * kPi * t);
  double acc = 0.0;
  for (Index i = 0; i < s01.size(); ++i) {
    const double d = x - s01[i];
    acc += std::exp(-d * d / (2.0 * t)) * norm;
  }
  return acc / static_cast<double>(s01.size());
}

}  // namespace

TEST_CASE("sj_bandwidth near the Gaussian-reference value on normal data") {
  const Eigen::VectorXd x = normal_samples(10000, 42);
  const Eigen::VectorXd x01 = to01(x);
  BandwidthSolution sol = sj_bandwidth(x);
  CHECK_FALSE(sol.silverman_fallback);
  const double mean = x01.mean();
  const double sigma = std::sqrt((x01.array() - mean).square().sum() / (x01.size() - 1));
  const double n_unique = 10000.0;
  const double h_ref = sigma * std::pow(4.0 / (3.0 * n_unique), 0.2);
  const double t_ref = h_ref * h_ref;
  CHECK(sol.t == doctest::Approx(t_ref).epsilon(0.25));
}

TEST_CASE("sj_bandwidth minimal and degenerate inputs") {
  Eigen::VectorXd two(2);
  two << 0.0, 1.0;
  BandwidthSolution sol = sj_bandwidth(two);
  CHECK(sol.t > 0.0);
  CHECK(std::isfinite(sol.t));

  Eigen::VectorXd same = Eigen::VectorXd::Constant(10, 3.5);
  CHECK_THROWS_AS(sj_bandwidth(same), DegenerateDataError);
}

TEST_CASE("sj_bandwidth is scale-free") {
  const Eigen::VectorXd x = normal_samples(2000, 7);
  BandwidthSolution a = sj_bandwidth(x);
  BandwidthSolution b = sj_bandwidth((x.array() * 37.5 - 12.0).matrix());
  CHECK(a.t == doctest::Approx(b.t).epsilon(1e-6));
}

TEST_CASE("diffusion_kde_1d rejects bad parameters") {
  Eigen::VectorXd s01 = to01(normal_samples(50, 3));
  CHECK_THROWS_AS(diffusion_kde_1d(s01, 0.0), InvalidParameterError);
  CHECK_THROWS_AS(diffusion_kde_1d(s01, -1.0), InvalidParameterError);
  CHECK_THROWS_AS(diffusion_kde_1d(s01, 0.01, 100), InvalidParameterError);
}

TEST_CASE("diffusion_kde_1d flattens to 1 as t grows") {
  Eigen::VectorXd s01 = to01(normal_samples(200, 5));
  Eigen::VectorXd f = diffusion_kde_1d(s01, 50.0, 256);
  for (Index j = 0; j < f.size(); ++j) CHECK(f[j] == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("grid densities integrate to about 1") {
  Eigen::VectorXd s01 = to01(normal_samples(500, 11));
  BandwidthSolution bw = sj_bandwidth(s01);
  Eigen::VectorXd f = diffusion_kde_1d(s01, bw.t);
  const Index g = f.size();
  double integral = 0.0;  // trapezoid over bin centers
  for (Index j = 0; j + 1 < g; ++j) integral += 0.5 * (f[j] + f[j + 1]);
  integral /= static_cast<double>(g);
  CHECK(integral == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("bimodal samples produce two interior maxima, matching a gaussian-sum KDE") {
  Eigen::VectorXd a = normal_samples(400, 21, -4.0, 0.6);
  Eigen::VectorXd b = normal_samples(400, 22, 4.0, 0.6);
  Eigen::VectorXd x(800);
  x << a, b;
  Eigen::VectorXd s01 = to01(x);
  const double t = 0.001;
  Eigen::VectorXd f = diffusion_kde_1d(s01, t, 1 << 12);

  // count strict interior local maxima above a tenth of the peak
  int maxima = 0;
  const double floor = 0.1 * f.maxCoeff();
  for (Index j = 1; j + 1 < f.size(); ++j)
    if (f[j] > floor && f[j] > f[j - 1] && f[j] >= f[j + 1]) ++maxima;
  CHECK(maxima == 2);

  // interior values agree with the plain Gaussian-sum KDE at the same bandwidth
  for (double q : {0.2, 0.35, 0.5, 0.65, 0.8}) {
    const double ref = gauss_kde(s01, t, q);
    const double got = interpolate_grid(f, q);
    CHECK(got == doctest::Approx(ref).epsilon(0.02));
  }
}

TEST_CASE("oracle: DCT path equals direct series summation") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  for (Index n : {20, 200, 1000}) {
    Eigen::VectorXd s01(n);
    for (Index i = 0; i < n; ++i) s01[i] = uni(rng);
    const double t = 0.004;
    const int grid = 256;
    Eigen::VectorXd fast = diffusion_kde_1d(s01, t, grid);
    Eigen::VectorXd direct = kde_direct_series(s01, t, grid);
    CHECK((fast - direct).cwiseAbs().maxCoeff() < 1e-8);
  }
}

TEST_CASE("point_densities reduces to diffusion_kde_1d in one dimension") {
  Dataset ds;
  ds.points = normal_samples(300, 8);
  DensityProfile prof = point_densities(ds);

  const Eigen::VectorXd s01 = to01(ds.points.col(0));
  BandwidthSolution bw = sj_bandwidth(s01);
  Eigen::VectorXd grid = diffusion_kde_1d(s01, bw.t);
  for (Index i = 0; i < ds.n(); ++i)
    CHECK(prof.rho[i] == interpolate_grid(grid, s01[i]));
}

TEST_CASE("blob center is denser than the farthest outlier (2-D, brute oracle)") {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Dataset ds;
  ds.points.resize(200, 2);
  for (Index i = 0; i < 200; ++i) {
    ds.points(i, 0) = gauss(rng);
    ds.points(i, 1) = gauss(rng);
  }
  DensityProfile prof = point_densities(ds);

  // centroid-nearest point vs farthest point
  Eigen::RowVector2d centroid = ds.points.colwise().mean();
  Index center = 0, outlier = 0;
  double dc = 1e300, dco = -1.0;
  for (Index i = 0; i < ds.n(); ++i) {
    const double d = (ds.points.row(i) - centroid).norm();
    if (d < dc) { dc = d; center = i; }
    if (d > dco) { dco = d; outlier = i; }
  }
  CHECK(prof.rho[center] > prof.rho[outlier]);

  // brute-force product-kernel KDE agrees on that ordering
  const Eigen::VectorXd x01 = to01(ds.points.col(0));
  const Eigen::VectorXd y01 = to01(ds.points.col(1));
  const double tx = sj_bandwidth(x01).t, ty = sj_bandwidth(y01).t;
  auto brute = [&](Index q) {
    double acc = 0.0;
    for (Index i = 0; i < ds.n(); ++i) {
      const double dx = x01[q] - x01[i], dy = y01[q] - y01[i];
      acc += std::exp(-dx * dx / (2 * tx)) * std::exp(-dy * dy / (2 * ty));
    }
    return acc;
  };
  CHECK(brute(center) > brute(outlier));
}

TEST_CASE("duplicating every point keeps the density argmax") {
  std::mt19937_64 rng(23);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Dataset ds;
  ds.points.resize(150, 2);
  for (Index i = 0; i < 150; ++i) {
    ds.points(i, 0) = gauss(rng);
    ds.points(i, 1) = 0.3 * gauss(rng);
  }
  DensityProfile one = point_densities(ds);

  Dataset doubled;
  doubled.points.resize(300, 2);
  doubled.points << ds.points, ds.points;
  DensityProfile two = point_densities(doubled);

  Index argmax1 = 0, argmax2 = 0;
  one.rho.maxCoeff(&argmax1);
  two.rho.head(150).maxCoeff(&argmax2);
  CHECK(argmax1 == argmax2);
}

TEST_CASE("density is permutation invariant") {
  std::mt19937_64 rng(29);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Dataset ds;
  ds.points.resize(80, 3);
  for (Index i = 0; i < 80; ++i)
    for (Index c = 0; c < 3; ++c) ds.points(i, c) = gauss(rng);
  DensityProfile base = point_densities(ds);

  std::vector<Index> perm(80);
  std::iota(perm.begin(), perm.end(), Index{0});
  std::shuffle(perm.begin(), perm.end(), rng);
  Dataset shuffled;
  shuffled.points.resize(80, 3);
  for (Index i = 0; i < 80; ++i) shuffled.points.row(i) = ds.points.row(perm[i]);
  DensityProfile moved = point_densities(shuffled);

  for (Index i = 0; i < 80; ++i)
    CHECK(moved.rho[i] == doctest::Approx(base.rho[perm[i]]).epsilon(1e-12));
}

TEST_CASE("constant dimensions are flagged and skipped") {
  Dataset ds;
  ds.points.resize(50, 2);
  ds.points.col(0) = normal_samples(50, 4);
  ds.points.col(1).setConstant(7.0);
  DensityProfile prof = point_densities(ds);
  REQUIRE(prof.constant_dims.size() == 1);
  CHECK(prof.constant_dims[0] == 1);

  Dataset d1;
  d1.points = ds.points.col(0);
  DensityProfile ref = point_densities(d1);
  CHECK((prof.rho - ref.rho).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("descending sort breaks ties by point index") {
  Dataset ds;
  ds.points.resize(4, 1);
  ds.points << 0.0, 1.0, 0.0, 1.0;  // two coincident pairs
  DensityProfile prof = point_densities(ds);
  CHECK(prof.rho_sorted[0] >= prof.rho_sorted[1]);
  CHECK(prof.rho_sorted[1] >= prof.rho_sorted[2]);
  for (Index r = 0; r + 1 < 4; ++r)
    if (prof.rho_sorted[r] == prof.rho_sorted[r + 1])
      CHECK(prof.sort_perm[static_cast<size_t>(r)] < prof.sort_perm[static_cast<size_t>(r + 1)]);
}
