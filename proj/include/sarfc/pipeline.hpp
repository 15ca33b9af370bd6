#pragma once

#include <optional>

#include "sarfc/fission.hpp"
#include "sarfc/noise_id.hpp"

namespace sarfc {

//! Completes a partial assignment by repeatedly giving the globally closest
//! (assigned, unassigned) pair the assigned point's label, growing the
//! assigned set as it goes. Ties break by (assigned id, unassigned id).
ClusterAssignment assign_border(const ClusterAssignment& partial, const DistanceView& dv);

struct StageTimings {
  double distances_s = 0.0;
  double density_s = 0.0;
  double noise_id_s = 0.0;
  double fission_s = 0.0;
  double assign_s = 0.0;
  double total_s = 0.0;
};

struct SarfcOptions {
  std::optional<int> r_override;
  bool noise_id = true;
  bool trace = false;
  DistanceMode mode = DistanceMode::automatic;
};

struct PipelineReport {
  ClusterAssignment assignment;
  SplitDiagnostics diagnostics;
  Index dense_count = 0;
  Index border_count = 0;
  bool noise_id_skipped = false;
  int r = 1;
  double d0 = 0.0;
  bool bandwidth_fallback = false;
  std::vector<FissionTraceEntry> fission_trace;
  StageTimings timings;
};

//! The full pipeline: densities, self-adaptive dense-subset selection,
//! fission clustering of the dense subset, then border assignment.
//! Datasets with n < 16 skip noise identification (every point is dense).
//!
//! The trend analysis (smoothing, regression split, turning angles) runs on
//! the log of the density sequence scaled to square-plot units; this is a
//! monotone reparametrization, so the density ordering and the resulting
//! subset thresholds are unchanged.
PipelineReport cluster(const Dataset& dataset, SarfcOptions opts = {});

}  // namespace sarfc
