#pragma once

#include <vector>

#include "sarfc/types.hpp"

namespace sarfc {

//! Solution of the improved Sheather-Jones fixed point t = xi * gamma^[l](t).
struct BandwidthSolution {
  double t = 0.0;        //!< squared bandwidth, unit-normalized domain
  int iterations = 0;    //!< bisection steps taken
  double residual = 0.0;  //!< |rhs(t) - t| at termination
  bool silverman_fallback = false;  //!< true when no bracket was found
};

//! Improved Sheather-Jones plug-in bandwidth for a 1-D sample. The sample is
//! min-max normalized internally; t is reported in that [0,1] domain.
//! Requires at least 2 distinct values. Falls back to the Gaussian-reference
//! (Silverman) bandwidth with a flag when the fixed point cannot be bracketed.
BandwidthSolution sj_bandwidth(const Eigen::VectorXd& samples, int grid_size = 1 << 14);

//! Density of samples (already in [0,1]) on grid_size bin centers over [0,1],
//! smoothed by the heat semigroup at time t: the binned data's cosine
//! coefficients are damped by exp(-k^2 pi^2 t / 2) and transformed back.
//! Series truncation can produce small negatives; they are clamped to 0.
Eigen::VectorXd diffusion_kde_1d(const Eigen::VectorXd& samples01, double t,
                                 int grid_size = 1 << 14);

//! Linear interpolation of grid values (bin centers (j+0.5)/G) at x in [0,1].
double interpolate_grid(const Eigen::VectorXd& grid, double x);

//! Per-point densities with deterministic descending order.
struct DensityProfile {
  Eigen::VectorXd rho;                //!< density indicator per point
  Eigen::VectorXd rho_sorted;         //!< rho in non-increasing order
  std::vector<Index> sort_perm;       //!< sorted rank -> point id
  std::vector<int> constant_dims;     //!< dimensions with zero range (skipped)
  bool bandwidth_fallback = false;    //!< any dimension used the Silverman fallback
};

//! Joint diffusion-density indicator for every point.
//!
//! Each non-constant dimension is min-max normalized to [0,1]. For d <= 2 the
//! density is the reflected heat-equation solution with per-dimension
//! Sheather-Jones bandwidths, computed on a DCT grid and interpolated at the
//! points (1-D grid 2^14, 2-D grid 1024^2). For d >= 3 a diagonal Gaussian
//! product kernel with per-dimension Gaussian-reference bandwidths at the
//! d-dimensional rate (h_d = 0.5 * sigma_d * n^(-1/(d+4))) is evaluated
//! directly at the points. Ties in the descending sort break by point index.
DensityProfile point_densities(const Dataset& dataset);

//! Squared bandwidth used by point_densities for one normalized column when
//! d_effective >= 3. Exposed for tests.
double gaussian_reference_t(const Eigen::VectorXd& col01, Index n, int d_effective);

}  // namespace sarfc
