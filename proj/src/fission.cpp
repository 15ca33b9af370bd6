#include "sarfc/fission.hpp"

#include <algorithm>
#include <numeric>

namespace sarfc {

int select_r(Index n) {
  int r;
  if (n <= 1000) r = 1;
  else if (n <= 2000) r = 2;
  else r = 3;
  if (static_cast<Index>(r) > n - 1) r = static_cast<int>(n - 1);
  return std::max(r, 1);
}

namespace {

//! Max over the subset of each member's r-th neighbor distance within it.
double d0_of_subset(const std::vector<Index>& subset, const DistanceView& dv, int r) {
  const size_t m = subset.size();
  Eigen::VectorXd row;
  std::vector<double> others;
  others.reserve(m - 1);
  double d0 = 0.0;
  for (size_t a = 0; a < m; ++a) {
    dv.gather(subset[a], subset, row);
    others.clear();
    for (size_t b = 0; b < m; ++b)
      if (b != a) others.push_back(row[static_cast<Index>(b)]);
    std::nth_element(others.begin(), others.begin() + (r - 1), others.end());
    d0 = std::max(d0, others[static_cast<size_t>(r) - 1]);
  }
  return d0;
}

}  // namespace

std::optional<CrackWitness> mc_r(const std::vector<Index>& subset, const DistanceView& dv,
                                 int r) {
  const size_t m = subset.size();
  if (r < 1) throw InvalidParameterError("mc_r requires r >= 1");
  if (m <= static_cast<size_t>(r)) return std::nullopt;

  Eigen::VectorXd dist;
  std::vector<std::pair<double, Index>> row(m);
  CrackWitness best;
  bool have = false;
  for (size_t a = 0; a < m; ++a) {
    dv.gather(subset[a], subset, dist);
    for (size_t b = 0; b < m; ++b) row[b] = {dist[static_cast<Index>(b)], subset[b]};
    std::sort(row.begin(), row.end());
    for (size_t k = 0; k + static_cast<size_t>(r) < m; ++k) {
      const double gap = row[k + static_cast<size_t>(r)].first - row[k].first;
      if (!have || gap > best.gap) {
        best.gap = gap;
        best.row = subset[a];
        best.lo = row[k].second;
        best.hi = row[k + static_cast<size_t>(r)].second;
        have = true;
      }
    }
  }
  return best;
}

std::pair<std::vector<Index>, std::vector<Index>> split_subset(
    const std::vector<Index>& subset, const CrackWitness& witness, const DistanceView& dv) {
  const double lo_dist = dv(witness.row, witness.lo);
  const double hi_dist = dv(witness.row, witness.hi);
  const double threshold = std::min(lo_dist, hi_dist);
  std::vector<Index> left, right;
  for (Index id : subset) {
    if (dv(witness.row, id) <= threshold) left.push_back(id);
    else right.push_back(id);
  }
  if (left.empty() || right.empty())
    throw Error("split produced an empty side; invalid witness");
  return {std::move(left), std::move(right)};
}

RfcResult rfc(const std::vector<Index>& subset, const DistanceView& dv, RfcOptions opts) {
  if (subset.empty()) throw InvalidInputError("rfc requires a non-empty set");
  std::vector<Index> root = subset;
  std::sort(root.begin(), root.end());

  RfcResult res;
  res.r = opts.r ? *opts.r : select_r(static_cast<Index>(root.size()));
  if (res.r < 1 || static_cast<size_t>(res.r) >= root.size())
    res.r = select_r(static_cast<Index>(root.size()));
  res.d0 = opts.d0 ? *opts.d0
                   : (root.size() > 1 ? d0_of_subset(root, dv, res.r) : 0.0);

  std::vector<std::vector<Index>> work{std::move(root)};
  std::vector<std::vector<Index>> final_subsets;
  while (!work.empty()) {
    // largest first; ties by smallest leading point id
    size_t pick = 0;
    for (size_t i = 1; i < work.size(); ++i) {
      if (work[i].size() > work[pick].size() ||
          (work[i].size() == work[pick].size() && work[i].front() < work[pick].front()))
        pick = i;
    }
    std::vector<Index> cur = std::move(work[pick]);
    work.erase(work.begin() + static_cast<std::ptrdiff_t>(pick));

    std::optional<CrackWitness> w = mc_r(cur, dv, res.r);
    if (!w || !crack_exceeds(w->gap, res.d0, dv(w->row, w->hi))) {
      if (opts.trace) {
        FissionTraceEntry e;
        e.subset_size = static_cast<Index>(cur.size());
        e.mc = w ? w->gap : 0.0;
        e.d0 = res.d0;
        if (w) e.witness = *w;
        res.trace.push_back(e);
      }
      final_subsets.push_back(std::move(cur));
      continue;
    }
    auto [left, right] = split_subset(cur, *w, dv);
    if (opts.trace) {
      FissionTraceEntry e;
      e.subset_size = static_cast<Index>(cur.size());
      e.mc = w->gap;
      e.d0 = res.d0;
      e.split = true;
      e.left_size = static_cast<Index>(left.size());
      e.right_size = static_cast<Index>(right.size());
      e.witness = *w;
      res.trace.push_back(e);
    }
    work.push_back(std::move(left));
    work.push_back(std::move(right));
  }

  // deterministic cluster ids: by smallest member
  std::sort(final_subsets.begin(), final_subsets.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  res.assignment.labels = Eigen::VectorXi::Constant(dv.size(), -1);
  res.assignment.dense_mask.assign(static_cast<size_t>(dv.size()), false);
  for (size_t c = 0; c < final_subsets.size(); ++c) {
    for (Index id : final_subsets[c]) {
      res.assignment.labels[id] = static_cast<int>(c);
      res.assignment.dense_mask[static_cast<size_t>(id)] = true;
    }
  }
  res.assignment.k = static_cast<int>(final_subsets.size());
  return res;
}

RfcResult rfc(const DistanceView& dv, RfcOptions opts) {
  std::vector<Index> all(static_cast<size_t>(dv.size()));
  std::iota(all.begin(), all.end(), Index{0});
  return rfc(all, dv, opts);
}

}  // namespace sarfc
