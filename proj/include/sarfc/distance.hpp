#pragma once

#include <vector>

#include "sarfc/types.hpp"

namespace sarfc {

enum class DistanceMode { full, streamed, automatic };
enum class Metric { euclidean };

//! Euclidean distance between rows i and j. Every distance in the library
//! goes through this one kernel so full and streamed storage agree bitwise.
inline double point_distance(const Eigen::MatrixXd& pts, Index i, Index j) {
  double s = 0.0;
  for (Index c = 0; c < pts.cols(); ++c) {
    const double d = pts(i, c) - pts(j, c);
    s += d * d;
  }
  return std::sqrt(s);
}

//! Symmetric pairwise-distance access, either materialized (full) or
//! computed row-on-demand (streamed). Streamed mode never holds more than
//! the caller's row buffer.
class DistanceView {
 public:
  //! Full matrices above this size are refused; use streamed mode.
  static constexpr Index full_mode_limit = 20000;

  Index size() const { return points_.rows(); }
  DistanceMode mode() const { return full_ ? DistanceMode::full : DistanceMode::streamed; }
  Metric metric() const { return Metric::euclidean; }
  const Eigen::MatrixXd& points() const { return points_; }

  double operator()(Index i, Index j) const {
    return full_ ? matrix_(i, j) : point_distance(points_, i, j);
  }

  //! Distances from point i to every point in ids, written to out (resized).
  void gather(Index i, const std::vector<Index>& ids, Eigen::VectorXd& out) const;

  //! Whole row i (length n), written to out (resized).
  void fill_row(Index i, Eigen::VectorXd& out) const;

 private:
  friend DistanceView pairwise_distances(const Dataset&, DistanceMode);
  Eigen::MatrixXd points_;
  Eigen::MatrixXd matrix_;  // n x n, full mode only
  bool full_ = false;
};

//! Builds a DistanceView for the dataset. automatic picks full storage for
//! n <= full_mode_limit and streamed above. Rejects non-finite coordinates.
DistanceView pairwise_distances(const Dataset& dataset,
                                DistanceMode mode = DistanceMode::automatic);

//! Entry i is the r-th smallest distance from point i to another point
//! (self excluded; coincident points count). Requires 1 <= r <= n-1.
Eigen::VectorXd rth_neighbor_distance(const DistanceView& dv, int r);

}  // namespace sarfc
