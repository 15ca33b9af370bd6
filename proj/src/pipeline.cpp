#include "sarfc/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <numeric>
#include <queue>
#include <tuple>

namespace sarfc {

namespace {
double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}
}  // namespace

ClusterAssignment assign_border(const ClusterAssignment& partial, const DistanceView& dv) {
  const Index n = dv.size();
  if (partial.labels.size() != n)
    throw InvalidInputError("assignment length does not match distance view");
  if ((partial.labels.array() < 0).all())
    throw InvalidInputError("assign_border needs at least one assigned point");

  ClusterAssignment result = partial;
  std::vector<Index> assigned, unassigned;
  for (Index i = 0; i < n; ++i)
    (result.labels[i] >= 0 ? assigned : unassigned).push_back(i);
  if (unassigned.empty()) return result;

  // Best known (distance, assigned id) per unassigned point; a lazy heap of
  // (distance, assigned, unassigned) yields the global minimum pair exactly.
  std::vector<double> best_d(static_cast<size_t>(n), 0.0);
  std::vector<Index> best_a(static_cast<size_t>(n), -1);
  using Entry = std::tuple<double, Index, Index>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;

  Eigen::VectorXd dist;
  for (Index u : unassigned) {
    dv.gather(u, assigned, dist);
    double d = dist[0];
    Index a = assigned[0];
    for (size_t j = 1; j < assigned.size(); ++j) {
      const double dj = dist[static_cast<Index>(j)];
      if (dj < d) { d = dj; a = assigned[j]; }
    }
    best_d[static_cast<size_t>(u)] = d;
    best_a[static_cast<size_t>(u)] = a;
    heap.emplace(d, a, u);
  }

  std::vector<Index> pending = unassigned;
  while (!heap.empty()) {
    auto [d, a, u] = heap.top();
    heap.pop();
    if (result.labels[u] >= 0) continue;                       // already assigned
    if (d != best_d[static_cast<size_t>(u)] || a != best_a[static_cast<size_t>(u)])
      continue;                                                // stale entry
    result.labels[u] = result.labels[a];

    pending.erase(std::find(pending.begin(), pending.end(), u));
    // the new member may become someone's nearest assigned point
    for (Index w : pending) {
      const double dw = dv(u, w);
      auto& bd = best_d[static_cast<size_t>(w)];
      auto& ba = best_a[static_cast<size_t>(w)];
      if (dw < bd || (dw == bd && u < ba)) {
        bd = dw;
        ba = u;
        heap.emplace(dw, u, w);
      }
    }
  }
  result.k = result.distinct_labels();
  return result;
}

PipelineReport cluster(const Dataset& dataset, SarfcOptions opts) {
  dataset.validate();
  const Index n = dataset.n();
  const auto t_start = std::chrono::steady_clock::now();

  PipelineReport report;

  auto t0 = std::chrono::steady_clock::now();
  DistanceView dv = pairwise_distances(dataset, opts.mode);
  report.timings.distances_s = seconds_since(t0);

  std::vector<Index> dense;
  DensityProfile profile;
  if (n < 16 || !opts.noise_id) {
    report.noise_id_skipped = true;
    dense.resize(static_cast<size_t>(n));
    std::iota(dense.begin(), dense.end(), Index{0});
  } else {
    t0 = std::chrono::steady_clock::now();
    profile = point_densities(dataset);
    report.bandwidth_fallback = profile.bandwidth_fallback;
    report.timings.density_s = seconds_since(t0);

    t0 = std::chrono::steady_clock::now();
    // log-scale analysis curve (monotone in rho; ordering unchanged)
    Eigen::VectorXd analysis = profile.rho_sorted.cwiseMax(1e-300).array().log();
    SmoothedSequence seq = smooth_density(analysis);
    SoarResult soar = soar_split(seq);
    // square-plot units for the angle formula
    const double lo = seq.v.minCoeff();
    const double range = seq.v.maxCoeff() - lo;
    SmoothedSequence scaled = seq;
    if (range > 0.0)
      scaled.v = (seq.v.array() - lo) * (static_cast<double>(n) / range);
    Eigen::VectorXd ta = turning_angles(scaled);
    PmaxResult pm = find_pmax(ta, soar.p_r, seq.offset + 1);
    dense = dense_subset(profile, pm.p_max);

    report.diagnostics.p_r = soar.p_r;
    report.diagnostics.p_max = pm.p_max;
    report.diagnostics.pmax_fallback = pm.fallback;
    report.diagnostics.soar_curve = std::move(soar.curve);
    report.diagnostics.tan_alpha = std::move(ta);
    report.timings.noise_id_s = seconds_since(t0);
  }

  t0 = std::chrono::steady_clock::now();
  RfcOptions fission_opts;
  fission_opts.r = opts.r_override;
  fission_opts.trace = opts.trace;
  RfcResult fission = rfc(dense, dv, fission_opts);
  report.r = fission.r;
  report.d0 = fission.d0;
  report.fission_trace = std::move(fission.trace);
  report.timings.fission_s = seconds_since(t0);

  t0 = std::chrono::steady_clock::now();
  report.assignment = assign_border(fission.assignment, dv);
  report.assignment.dense_mask = fission.assignment.dense_mask;
  report.timings.assign_s = seconds_since(t0);

  report.dense_count = static_cast<Index>(dense.size());
  report.border_count = n - report.dense_count;
  report.timings.total_s = seconds_since(t_start);
  return report;
}

}  // namespace sarfc
