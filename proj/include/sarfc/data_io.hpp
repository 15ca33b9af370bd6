#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "sarfc/types.hpp"

namespace sarfc {

//! Loads a numeric delimited file (delimiter auto-detected among comma,
//! semicolon and whitespace). label_column extracts that 0-based column as
//! ground truth; -1 means the last column. Non-numeric fields raise
//! ParseError with the row/column location.
Dataset load_csv(const std::filesystem::path& path,
                 std::optional<int> label_column = std::nullopt);

//! Writes coordinates (and the label column, when present) as comma CSV.
void save_csv(const Dataset& dataset, const std::filesystem::path& path);

struct NormalizeResult {
  Dataset dataset;
  std::vector<int> constant_dims;  //!< zero-range dimensions mapped to 0.5
};

//! Affinely maps every dimension to [0,1]; zero-range dimensions become 0.5.
NormalizeResult min_max_normalize(const Dataset& dataset);

// ---------------------------------------------------------------------------
// Synthetic generators
// ---------------------------------------------------------------------------

struct GeneratorSpec {
  std::string kind;       //!< blobs | ring_s | imbalance | supole_like | squcir_like
  Index n = 200;          //!< total points
  int k = 2;              //!< cluster count (blobs)
  std::uint64_t seed = 0;
  double separation = 10.0;  //!< center spacing relative to unit spread
  Index n2 = 0;           //!< second-cluster size (imbalance); 0 = n/20
};

//! Deterministic synthetic dataset per spec.kind; identical seeds give
//! identical output.
Dataset generate_synthetic(const GeneratorSpec& spec);

//! Parses "kind:key=value,key=value" (e.g. "blobs:n=200,k=2,seed=7").
GeneratorSpec parse_generator_spec(const std::string& text);

// ---------------------------------------------------------------------------
// Manifests
// ---------------------------------------------------------------------------

struct DatasetManifest {
  std::string name;
  std::string source;      //!< file name (relative to the manifest) or generator spec
  Index expected_n = 0;
  Index expected_d = 0;
  int expected_k = 0;
  bool has_labels = false;
  int label_column = -1;   //!< -1 = last column
};

//! Parses a manifest file: blocks of "key = value" lines introduced by
//! "[name]" headers. Keys: file|generate, n, d, k, labels (last|none|<idx>).
std::vector<DatasetManifest> parse_manifest(const std::filesystem::path& path);

//! Loads the dataset a manifest entry describes (file entries resolve
//! relative to data_dir) and validates its shape against the entry.
Dataset load_from_manifest(const DatasetManifest& entry,
                           const std::filesystem::path& data_dir);

}  // namespace sarfc
