#include "sarfc/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <vector>

namespace sarfc {

namespace {

std::map<int, int> compact_ids(const Eigen::VectorXi& labels) {
  std::map<int, int> ids;
  for (Index i = 0; i < labels.size(); ++i)
    if (ids.find(labels[i]) == ids.end()) {
      const int next = static_cast<int>(ids.size());
      ids[labels[i]] = next;
    }
  return ids;
}

void check_lengths(const Eigen::VectorXi& a, const Eigen::VectorXi& b) {
  if (a.size() != b.size() || a.size() == 0)
    throw InvalidInputError("label vectors must be non-empty and of equal length");
}

double comb2(double x) { return x * (x - 1.0) / 2.0; }

}  // namespace

ContingencyTable contingency(const Eigen::VectorXi& pred, const Eigen::VectorXi& truth) {
  check_lengths(pred, truth);
  const auto pid = compact_ids(pred);
  const auto tid = compact_ids(truth);
  ContingencyTable t;
  t.counts.setZero(static_cast<Index>(pid.size()), static_cast<Index>(tid.size()));
  for (Index i = 0; i < pred.size(); ++i)
    ++t.counts(pid.at(pred[i]), tid.at(truth[i]));
  t.n = pred.size();
  return t;
}

std::vector<int> hungarian(const Eigen::MatrixXd& cost) {
  // Jonker-Volgenant style shortest augmenting paths with potentials, O(n^3).
  const int n = static_cast<int>(cost.rows());
  if (cost.cols() != n) throw InvalidInputError("hungarian needs a square matrix");
  std::vector<double> u(static_cast<size_t>(n) + 1, 0.0), v(static_cast<size_t>(n) + 1, 0.0);
  std::vector<int> p(static_cast<size_t>(n) + 1, 0), way(static_cast<size_t>(n) + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(static_cast<size_t>(n) + 1, std::numeric_limits<double>::infinity());
    std::vector<char> used(static_cast<size_t>(n) + 1, 0);
    do {
      used[static_cast<size_t>(j0)] = 1;
      const int i0 = p[static_cast<size_t>(j0)];
      double delta = std::numeric_limits<double>::infinity();
      int j1 = -1;
      for (int j = 1; j <= n; ++j) {
        if (used[static_cast<size_t>(j)]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[static_cast<size_t>(i0)] - v[static_cast<size_t>(j)];
        if (cur < minv[static_cast<size_t>(j)]) {
          minv[static_cast<size_t>(j)] = cur;
          way[static_cast<size_t>(j)] = j0;
        }
        if (minv[static_cast<size_t>(j)] < delta) {
          delta = minv[static_cast<size_t>(j)];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[static_cast<size_t>(j)]) {
          u[static_cast<size_t>(p[static_cast<size_t>(j)])] += delta;
          v[static_cast<size_t>(j)] -= delta;
        } else {
          minv[static_cast<size_t>(j)] -= delta;
        }
      }
      j0 = j1;
    } while (p[static_cast<size_t>(j0)] != 0);
    do {
      const int j1 = way[static_cast<size_t>(j0)];
      p[static_cast<size_t>(j0)] = p[static_cast<size_t>(j1)];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<int> row_to_col(static_cast<size_t>(n), -1);
  for (int j = 1; j <= n; ++j)
    if (p[static_cast<size_t>(j)] >= 1) row_to_col[static_cast<size_t>(p[static_cast<size_t>(j)]) - 1] = j - 1;
  return row_to_col;
}

namespace {

//! row (pred) -> col (true) optimal matching of the contingency table.
std::vector<int> optimal_matching(const ContingencyTable& t) {
  const Index kp = t.counts.rows();
  const Index kt = t.counts.cols();
  const Index dim = std::max(kp, kt);
  Eigen::MatrixXd cost = Eigen::MatrixXd::Zero(dim, dim);
  for (Index i = 0; i < kp; ++i)
    for (Index j = 0; j < kt; ++j) cost(i, j) = -static_cast<double>(t.counts(i, j));
  std::vector<int> match = hungarian(cost);
  match.resize(static_cast<size_t>(kp));
  for (auto& c : match)
    if (c >= static_cast<int>(kt)) c = -1;  // matched to a padding column
  return match;
}

double matched_accuracy(const ContingencyTable& t) {
  const std::vector<int> match = optimal_matching(t);
  long long correct = 0;
  for (Index i = 0; i < t.counts.rows(); ++i)
    if (match[static_cast<size_t>(i)] >= 0) correct += t.counts(i, match[static_cast<size_t>(i)]);
  return static_cast<double>(correct) / static_cast<double>(t.n);
}

}  // namespace

double accuracy(const Eigen::VectorXi& pred, const Eigen::VectorXi& truth) {
  return matched_accuracy(contingency(pred, truth));
}

double f1_score(const Eigen::VectorXi& pred, const Eigen::VectorXi& truth) {
  const ContingencyTable t = contingency(pred, truth);
  const std::vector<int> match = optimal_matching(t);
  const Index kt = t.counts.cols();
  std::vector<int> col_to_row(static_cast<size_t>(kt), -1);
  for (size_t i = 0; i < match.size(); ++i)
    if (match[i] >= 0) col_to_row[static_cast<size_t>(match[i])] = static_cast<int>(i);

  double sum = 0.0;
  for (Index c = 0; c < kt; ++c) {
    const int r = col_to_row[static_cast<size_t>(c)];
    if (r < 0) continue;  // unmatched true class: F1 contribution 0
    const double tp = static_cast<double>(t.counts(r, c));
    const double psum = static_cast<double>(t.counts.row(r).sum());
    const double tsum = static_cast<double>(t.counts.col(c).sum());
    const double prec = psum > 0 ? tp / psum : 0.0;
    const double rec = tsum > 0 ? tp / tsum : 0.0;
    if (prec + rec > 0) sum += 2.0 * prec * rec / (prec + rec);
  }
  return sum / static_cast<double>(kt);
}

double ari(const Eigen::VectorXi& pred, const Eigen::VectorXi& truth) {
  const ContingencyTable t = contingency(pred, truth);
  double index = 0.0;
  for (Index i = 0; i < t.counts.rows(); ++i)
    for (Index j = 0; j < t.counts.cols(); ++j)
      index += comb2(static_cast<double>(t.counts(i, j)));
  double sum_a = 0.0, sum_b = 0.0;
  for (Index i = 0; i < t.counts.rows(); ++i)
    sum_a += comb2(static_cast<double>(t.counts.row(i).sum()));
  for (Index j = 0; j < t.counts.cols(); ++j)
    sum_b += comb2(static_cast<double>(t.counts.col(j).sum()));
  const double total = comb2(static_cast<double>(t.n));
  const double expected = sum_a * sum_b / total;
  const double max_index = 0.5 * (sum_a + sum_b);
  if (max_index == expected) return 1.0;  // both partitions trivial
  return (index - expected) / (max_index - expected);
}

double nmi(const Eigen::VectorXi& pred, const Eigen::VectorXi& truth) {
  const ContingencyTable t = contingency(pred, truth);
  const double n = static_cast<double>(t.n);
  double hp = 0.0, ht = 0.0, mi = 0.0;
  for (Index i = 0; i < t.counts.rows(); ++i) {
    const double a = static_cast<double>(t.counts.row(i).sum());
    if (a > 0) hp -= (a / n) * std::log(a / n);
  }
  for (Index j = 0; j < t.counts.cols(); ++j) {
    const double b = static_cast<double>(t.counts.col(j).sum());
    if (b > 0) ht -= (b / n) * std::log(b / n);
  }
  for (Index i = 0; i < t.counts.rows(); ++i) {
    const double a = static_cast<double>(t.counts.row(i).sum());
    for (Index j = 0; j < t.counts.cols(); ++j) {
      const double nij = static_cast<double>(t.counts(i, j));
      if (nij > 0) {
        const double b = static_cast<double>(t.counts.col(j).sum());
        mi += (nij / n) * std::log(n * nij / (a * b));
      }
    }
  }
  if (hp == 0.0 && ht == 0.0) return 1.0;
  if (hp == 0.0 || ht == 0.0) return 0.0;
  return mi / std::sqrt(hp * ht);
}

MetricsReport evaluate(const std::string& dataset, const Eigen::VectorXi& pred,
                       const Eigen::VectorXi& truth) {
  MetricsReport r;
  r.dataset = dataset;
  const ContingencyTable t = contingency(pred, truth);
  r.k_pred = static_cast<int>(t.counts.rows());
  r.k_true = static_cast<int>(t.counts.cols());
  r.acc = matched_accuracy(t);
  r.f1 = f1_score(pred, truth);
  r.ari = ari(pred, truth);
  r.nmi = nmi(pred, truth);
  return r;
}

std::string metrics_csv_header() { return "dataset,k_true,k_pred,acc,f1,ari,nmi"; }

std::string metrics_csv_row(const MetricsReport& r) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%s,%d,%d,%.1f,%.1f,%.1f,%.1f", r.dataset.c_str(), r.k_true,
                r.k_pred, 100.0 * r.acc, 100.0 * r.f1, 100.0 * r.ari, 100.0 * r.nmi);
  return buf;
}

}  // namespace sarfc
