#pragma once

#include <iosfwd>
#include <string>

#include "sarfc/types.hpp"

namespace sarfc {

//! Co-occurrence counts of predicted vs true cluster ids.
struct ContingencyTable {
  Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic> counts;  // pred x true
  long long n = 0;
};

ContingencyTable contingency(const Eigen::VectorXi& pred, const Eigen::VectorXi& truth);

//! Fraction correctly labeled under the optimal one-to-one matching of
//! predicted to true clusters (maximum-weight bipartite matching).
double accuracy(const Eigen::VectorXi& pred, const Eigen::VectorXi& truth);

//! Macro-averaged F1 over true classes under the same optimal matching;
//! unmatched true classes contribute 0.
double f1_score(const Eigen::VectorXi& pred, const Eigen::VectorXi& truth);

//! Adjusted Rand Index (pair counting). Both-sides-single-cluster is 1.
double ari(const Eigen::VectorXi& pred, const Eigen::VectorXi& truth);

//! Normalized mutual information, I / sqrt(H_pred * H_truth); 0 log 0 = 0.
//! Both partitions degenerate (zero entropy) gives 1, one side degenerate 0.
double nmi(const Eigen::VectorXi& pred, const Eigen::VectorXi& truth);

//! Minimum-cost assignment on a square cost matrix; returns column per row.
std::vector<int> hungarian(const Eigen::MatrixXd& cost);

struct MetricsReport {
  std::string dataset;
  int k_true = 0;
  int k_pred = 0;
  double acc = 0.0;
  double f1 = 0.0;
  double ari = 0.0;
  double nmi = 0.0;
};

MetricsReport evaluate(const std::string& dataset, const Eigen::VectorXi& pred,
                       const Eigen::VectorXi& truth);

//! CSV row: dataset,k_true,k_pred,acc,f1,ari,nmi with percentages to one
//! decimal place.
std::string metrics_csv_row(const MetricsReport& r);
std::string metrics_csv_header();

}  // namespace sarfc
