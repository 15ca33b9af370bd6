#pragma once

#include <optional>
#include <vector>

#include "sarfc/distance.hpp"
#include "sarfc/types.hpp"

namespace sarfc {

//! Robustness order by set size: r = 1 for n <= 1000, 2 for n <= 2000,
//! 3 above; always capped at n - 1.
int select_r(Index n);

//! The points realizing the maximal r-span gap of a set: row point i and the
//! sorted-row neighbors x_j (position p) and x_k (position p+r) with
//! gap = f(i,k) - f(i,j).
struct CrackWitness {
  Index row = 0;
  Index lo = 0;
  Index hi = 0;
  double gap = 0.0;
};

//! MC^(r) of the subset: every row's distances (within the subset) are
//! sorted ascending and the maximal gap over spans of r is returned with its
//! witness. Ties break lexicographically by (row, span position); sorted-row
//! ties break by point index. Returns nullopt when |subset| <= r.
std::optional<CrackWitness> mc_r(const std::vector<Index>& subset, const DistanceView& dv,
                                 int r);

//! Binary split at the witness crack: points with f(row, t) <= f(row, lo) go
//! left, the rest right. Both sides are non-empty for a gap > 0 witness.
std::pair<std::vector<Index>, std::vector<Index>> split_subset(
    const std::vector<Index>& subset, const CrackWitness& witness, const DistanceView& dv);

//! One processed subset of the fission loop, for tracing.
struct FissionTraceEntry {
  Index subset_size = 0;
  double mc = 0.0;
  double d0 = 0.0;
  bool split = false;
  Index left_size = 0;
  Index right_size = 0;
  CrackWitness witness;
};

struct RfcOptions {
  std::optional<int> r;
  std::optional<double> d0;
  bool trace = false;
};

struct RfcResult {
  ClusterAssignment assignment;  //!< -1 outside the clustered set
  int r = 1;
  double d0 = 0.0;
  std::vector<FissionTraceEntry> trace;
};

//! True when the crack is genuinely wider than the threshold. Gap values are
//! differences of potentially large distances, so exact ties (MC == d0 on the
//! real line, e.g. collinear chains or uniform grids) land a few ulps off;
//! the slack keeps rounding from turning a tie into a split.
inline bool crack_exceeds(double gap, double d0, double distance_scale) {
  return gap > d0 + 1e-12 * (1.0 + distance_scale);
}

//! Robust fission clustering over the given point-index set. Repeatedly
//! splits the largest subset whose MC^(r) exceeds d0^(r) until none does.
//! d0^(r) is computed once over the input set unless overridden.
RfcResult rfc(const std::vector<Index>& subset, const DistanceView& dv, RfcOptions opts = {});

//! Convenience: rfc over all points of the view.
RfcResult rfc(const DistanceView& dv, RfcOptions opts = {});

}  // namespace sarfc
