#pragma once

#include <iosfwd>
#include <vector>

#include "sarfc/density.hpp"
#include "sarfc/types.hpp"

namespace sarfc {

//! Window-5 means of a descending sequence. v[m] averages entries m..m+4 of
//! the input; the paper-convention index of v[m] is m + offset (1-based).
struct SmoothedSequence {
  Eigen::VectorXd v;
  int offset = 5;

  //! Length of the underlying density sequence.
  Index n_points() const { return v.size() + 4; }
};

SmoothedSequence smooth_density(const Eigen::VectorXd& descending);
SmoothedSequence smooth_density(const DensityProfile& profile);

struct SoarResult {
  int p_r = 0;             //!< optimal split, paper index in [10, n-5]
  Eigen::VectorXd curve;   //!< R_p for candidate p = 10 + position
};

//! Two-piece linear regression split. For each candidate p, OLS lines are
//! fit to the head (indices 5..p) and tail (p+1..n) of V; R_p sums the
//! absolute residuals of both fits. Returns the argmin (smallest p on ties).
SoarResult soar_split(const SmoothedSequence& seq);

//! Turning-angle tangents tan a_i = |(k_i - k_{i-1}) / (1 + k_i k_{i-1})|
//! with k the consecutive slopes of v (horizontal step 1). Entry m speaks
//! for paper index m + offset + 1. Perpendicular slopes (zero denominator)
//! map to +infinity.
Eigen::VectorXd turning_angles(const SmoothedSequence& seq);

struct PmaxResult {
  int p_max = 0;
  bool fallback = false;  //!< no positive turning angle at/after p_r
};

//! Position of the turning-angle spike that separates the two trends: the
//! first local maximum of tan_alpha at or after p_r (paper-convention
//! indices; entry m of tan_alpha is index m + first_index). Falls back to
//! p_r with a warning when every tangent at/after p_r is zero.
PmaxResult find_pmax(const Eigen::VectorXd& tan_alpha, int p_r, int first_index = 6);

//! Dense subset C = { j : rho_j >= rho'_{p_max} } (ties at the threshold
//! included), as ascending point ids.
std::vector<Index> dense_subset(const DensityProfile& profile, int p_max);

//! Per-run diagnostics of the noise-identification stage.
struct SplitDiagnostics {
  int p_r = 0;
  int p_max = 0;
  bool pmax_fallback = false;
  Eigen::VectorXd soar_curve;
  Eigen::VectorXd tan_alpha;
};

//! Writes the curves as CSV (one row per index, paper convention).
void write_diagnostics_csv(const SplitDiagnostics& diag, const DensityProfile& profile,
                           std::ostream& out);

}  // namespace sarfc
