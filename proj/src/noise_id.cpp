#include "sarfc/noise_id.hpp"

#include <cmath>
#include <limits>
#include <ostream>

namespace sarfc {

SmoothedSequence smooth_density(const Eigen::VectorXd& descending) {
  const Index n = descending.size();
  if (n < 5) throw DatasetTooSmallError("smoothing needs at least 5 points");
  SmoothedSequence seq;
  seq.v.resize(n - 4);
  for (Index m = 0; m + 4 < n; ++m)
    seq.v[m] = (descending[m] + descending[m + 1] + descending[m + 2] +
                descending[m + 3] + descending[m + 4]) / 5.0;
  return seq;
}

SmoothedSequence smooth_density(const DensityProfile& profile) {
  return smooth_density(profile.rho_sorted);
}

SoarResult soar_split(const SmoothedSequence& seq) {
  const Eigen::VectorXd& v = seq.v;
  const Index n = seq.n_points();
  // candidates p in [10, n-5], i.e. positions m = p - 5 in [5, n-10]
  const Index m_lo = 5;
  const Index m_hi = n - 10;
  if (m_hi < m_lo) throw DatasetTooSmallError("SoAR candidate range empty (n < 15)");

  const Index len = v.size();
  // prefix sums over (position, value) for O(1) OLS coefficients
  Eigen::VectorXd sx(len + 1), sy(len + 1), sxx(len + 1), sxy(len + 1);
  sx[0] = sy[0] = sxx[0] = sxy[0] = 0.0;
  for (Index i = 0; i < len; ++i) {
    const double x = static_cast<double>(i);
    sx[i + 1] = sx[i] + x;
    sy[i + 1] = sy[i] + v[i];
    sxx[i + 1] = sxx[i] + x * x;
    sxy[i + 1] = sxy[i] + x * v[i];
  }
  auto fit = [&](Index a, Index b, double& slope, double& icept) {
    // OLS over positions [a, b)
    const double cnt = static_cast<double>(b - a);
    const double mx = (sx[b] - sx[a]) / cnt;
    const double my = (sy[b] - sy[a]) / cnt;
    const double cxx = (sxx[b] - sxx[a]) - cnt * mx * mx;
    const double cxy = (sxy[b] - sxy[a]) - cnt * mx * my;
    slope = cxx > 0.0 ? cxy / cxx : 0.0;
    icept = my - slope * mx;
  };

  SoarResult res;
  res.curve.resize(m_hi - m_lo + 1);
  double best = std::numeric_limits<double>::infinity();
  Index best_m = m_lo;
  for (Index m = m_lo; m <= m_hi; ++m) {
    double s1, c1, s2, c2;
    fit(0, m + 1, s1, c1);
    fit(m + 1, len, s2, c2);
    double r = 0.0;
    for (Index i = 0; i <= m; ++i) r += std::abs(c1 + s1 * static_cast<double>(i) - v[i]);
    for (Index i = m + 1; i < len; ++i) r += std::abs(c2 + s2 * static_cast<double>(i) - v[i]);
    res.curve[m - m_lo] = r;
    if (r < best) {
      best = r;
      best_m = m;
    }
  }
  res.p_r = static_cast<int>(best_m) + seq.offset;
  return res;
}

Eigen::VectorXd turning_angles(const SmoothedSequence& seq) {
  const Eigen::VectorXd& v = seq.v;
  if (v.size() < 3) throw DatasetTooSmallError("turning angles need |v| >= 3");
  Eigen::VectorXd ta(v.size() - 2);
  for (Index m = 0; m + 2 < v.size(); ++m) {
    const double k0 = v[m + 1] - v[m];
    const double k1 = v[m + 2] - v[m + 1];
    const double den = 1.0 + k1 * k0;
    ta[m] = den == 0.0 ? std::numeric_limits<double>::infinity()
                       : std::abs((k1 - k0) / den);
  }
  return ta;
}

PmaxResult find_pmax(const Eigen::VectorXd& tan_alpha, int p_r, int first_index) {
  if (tan_alpha.size() == 0) throw InvalidInputError("empty tangent sequence");
  const Index len = tan_alpha.size();
  const Index start = std::max<Index>(0, static_cast<Index>(p_r) - first_index);
  for (Index m = start; m < len; ++m) {
    const double val = tan_alpha[m];
    const double left = m > 0 ? tan_alpha[m - 1] : -1.0;
    const double right = m + 1 < len ? tan_alpha[m + 1] : -1.0;
    if (val > 0.0 && val >= left && val >= right)
      return {static_cast<int>(m) + first_index, false};
  }
  return {p_r, true};
}

std::vector<Index> dense_subset(const DensityProfile& profile, int p_max) {
  const Index n = profile.rho.size();
  if (p_max < 1 || p_max > n) throw InvalidParameterError("p_max outside density index range");
  const double threshold = profile.rho_sorted[p_max - 1];
  std::vector<Index> c;
  for (Index j = 0; j < n; ++j)
    if (profile.rho[j] >= threshold) c.push_back(j);
  return c;
}

void write_diagnostics_csv(const SplitDiagnostics& diag, const DensityProfile& profile,
                           std::ostream& out) {
  out << "index,rho_sorted,v,tan_alpha,soar\n";
  const Eigen::VectorXd& rs = profile.rho_sorted;
  SmoothedSequence seq = smooth_density(rs);
  char buf[64];
  for (Index i = 0; i < rs.size(); ++i) {
    const int paper = static_cast<int>(i) + 1;
    out << paper << ',';
    std::snprintf(buf, sizeof buf, "%.6g", rs[i]);
    out << buf << ',';
    const Index vm = i + 1 - seq.offset;
    if (vm >= 0 && vm < seq.v.size()) {
      std::snprintf(buf, sizeof buf, "%.6g", seq.v[vm]);
      out << buf;
    }
    out << ',';
    const Index tm = i + 1 - (seq.offset + 1);
    if (tm >= 0 && tm < diag.tan_alpha.size()) {
      std::snprintf(buf, sizeof buf, "%.6g", diag.tan_alpha[tm]);
      out << buf;
    }
    out << ',';
    const Index sm = i + 1 - 10;
    if (sm >= 0 && sm < diag.soar_curve.size()) {
      std::snprintf(buf, sizeof buf, "%.6g", diag.soar_curve[sm]);
      out << buf;
    }
    out << '\n';
  }
}

}  // namespace sarfc
