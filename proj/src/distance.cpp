#include "sarfc/distance.hpp"

#include <algorithm>
#include <string>

namespace sarfc {

void Dataset::validate() const {
  if (points.rows() < 1 || points.cols() < 1)
    throw InvalidInputError("dataset must have n >= 1 points and d >= 1 dimensions");
  if (!points.allFinite())
    throw InvalidInputError("dataset contains non-finite coordinates");
  if (labels) {
    if (labels->size() != points.rows())
      throw InvalidInputError("label vector length does not match point count");
    if ((labels->array() < 0).any())
      throw InvalidInputError("labels must be non-negative integers");
  }
}

int ClusterAssignment::distinct_labels() const {
  std::vector<int> seen;
  for (Index i = 0; i < labels.size(); ++i) {
    const int l = labels[i];
    if (l < 0) continue;
    if (std::find(seen.begin(), seen.end(), l) == seen.end()) seen.push_back(l);
  }
  return static_cast<int>(seen.size());
}

void DistanceView::gather(Index i, const std::vector<Index>& ids, Eigen::VectorXd& out) const {
  out.resize(static_cast<Index>(ids.size()));
  if (full_) {
    for (size_t a = 0; a < ids.size(); ++a) out[static_cast<Index>(a)] = matrix_(i, ids[a]);
  } else {
    for (size_t a = 0; a < ids.size(); ++a)
      out[static_cast<Index>(a)] = point_distance(points_, i, ids[a]);
  }
}

void DistanceView::fill_row(Index i, Eigen::VectorXd& out) const {
  const Index n = size();
  out.resize(n);
  if (full_) {
    out = matrix_.row(i);
  } else {
    for (Index j = 0; j < n; ++j) out[j] = point_distance(points_, i, j);
  }
}

DistanceView pairwise_distances(const Dataset& dataset, DistanceMode mode) {
  dataset.validate();
  const Index n = dataset.n();

  if (mode == DistanceMode::automatic)
    mode = n <= DistanceView::full_mode_limit ? DistanceMode::full : DistanceMode::streamed;
  if (mode == DistanceMode::full && n > DistanceView::full_mode_limit)
    throw InvalidParameterError("full distance matrix limited to n <= " +
                                std::to_string(DistanceView::full_mode_limit) +
                                "; use streamed mode");

  DistanceView dv;
  dv.points_ = dataset.points;
  if (mode == DistanceMode::full) {
    dv.full_ = true;
    dv.matrix_.resize(n, n);
    for (Index i = 0; i < n; ++i) {
      dv.matrix_(i, i) = 0.0;
      for (Index j = i + 1; j < n; ++j) {
        const double d = point_distance(dv.points_, i, j);
        dv.matrix_(i, j) = d;
        dv.matrix_(j, i) = d;
      }
    }
  }
  return dv;
}

Eigen::VectorXd rth_neighbor_distance(const DistanceView& dv, int r) {
  const Index n = dv.size();
  if (r < 1 || r >= n)
    throw InvalidParameterError("rth_neighbor_distance requires 1 <= r <= n-1");

  Eigen::VectorXd result(n);
  Eigen::VectorXd row;
  std::vector<double> others;
  others.reserve(static_cast<size_t>(n) - 1);
  for (Index i = 0; i < n; ++i) {
    dv.fill_row(i, row);
    others.clear();
    for (Index j = 0; j < n; ++j)
      if (j != i) others.push_back(row[j]);
    std::nth_element(others.begin(), others.begin() + (r - 1), others.end());
    result[i] = others[static_cast<size_t>(r) - 1];
  }
  return result;
}

}  // namespace sarfc
