#pragma once

#include <Eigen/Dense>

namespace sarfc {

//! Unnormalized DCT-II for power-of-two length N >= 2:
//!   out[k] = 2 * sum_j x[j] * cos(pi*k*(2j+1)/(2N)),  k = 0..N-1.
//! O(N log N) via a single complex FFT.
void dct2_pow2(const Eigen::VectorXd& x, Eigen::VectorXd& out);

//! Exact inverse of dct2_pow2 (a scaled DCT-III):
//!   out[j] = (1/N) * (X[0]/2 + sum_{k>=1} X[k] * cos(pi*k*(2j+1)/(2N))).
void dct3_pow2(const Eigen::VectorXd& X, Eigen::VectorXd& out);

inline bool is_pow2(Eigen::Index n) { return n >= 1 && (n & (n - 1)) == 0; }

}  // namespace sarfc
