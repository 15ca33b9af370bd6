#pragma once

#include <Eigen/Dense>
#include <optional>
#include <stdexcept>
#include <string>

namespace sarfc {

using Index = Eigen::Index;

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

//! Rejected input (non-finite coordinates, length mismatches, ...).
struct InvalidInputError : Error {
  using Error::Error;
};

//! A parameter outside its legal range (r >= n, t <= 0, ...).
struct InvalidParameterError : Error {
  using Error::Error;
};

//! Data without enough variation to process (all samples identical).
struct DegenerateDataError : Error {
  using Error::Error;
};

//! Too few points for the requested stage.
struct DatasetTooSmallError : Error {
  using Error::Error;
};

//! Malformed text input; message carries row/column location.
struct ParseError : Error {
  using Error::Error;
};

//! Loaded data contradicts its manifest.
struct ValidationError : Error {
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Core domain types
// ---------------------------------------------------------------------------

//! A point set with optional ground-truth class ids.
struct Dataset {
  Eigen::MatrixXd points;               // n x d
  std::optional<Eigen::VectorXi> labels;  // size n when present, values >= 0
  std::string name;

  Index n() const { return points.rows(); }
  Index dims() const { return points.cols(); }

  //! Throws InvalidInputError unless n >= 1, d >= 1, all coordinates finite
  //! and labels (when present) have matching length and non-negative values.
  void validate() const;
};

//! Total or partial cluster labeling. Unassigned points carry label -1.
struct ClusterAssignment {
  Eigen::VectorXi labels;  // n entries, cluster id in [0, k) or -1
  int k = 0;
  std::vector<bool> dense_mask;  // true = member of the dense subset

  Index n() const { return labels.size(); }
  bool total() const { return (labels.array() >= 0).all(); }
  //! Number of distinct non-negative labels.
  int distinct_labels() const;
};

}  // namespace sarfc
