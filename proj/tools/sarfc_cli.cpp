#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "sarfc/data_io.hpp"
#include "sarfc/metrics.hpp"
#include "sarfc/pipeline.hpp"

using namespace sarfc;
namespace fs = std::filesystem;

namespace {

constexpr int kExitResolve = 2;
constexpr int kExitPipeline = 3;

fs::path default_data_dir() {
  if (const char* env = std::getenv("SARFC_DATA_DIR")) return env;
  return "data";
}

DistanceMode parse_mode(const std::string& mode) {
  if (mode == "full") return DistanceMode::full;
  if (mode == "streamed") return DistanceMode::streamed;
  return DistanceMode::automatic;
}

Dataset resolve_dataset(const std::string& ref, const fs::path& data_dir,
                        std::optional<int> label_col) {
  if (fs::exists(ref) && fs::is_regular_file(ref)) return load_csv(ref, label_col);
  const fs::path manifest = data_dir / "benchmarks.manifest";
  if (fs::exists(manifest)) {
    for (const DatasetManifest& entry : parse_manifest(manifest))
      if (entry.name == ref) return load_from_manifest(entry, data_dir);
  }
  throw ValidationError("cannot resolve dataset '" + ref + "' (no such file, not in " +
                        manifest.string() + ")");
}

void write_trace(const PipelineReport& rep, const fs::path& path) {
  std::ofstream out(path);
  for (const FissionTraceEntry& e : rep.fission_trace) {
    nlohmann::json j{{"subset_size", e.subset_size}, {"mc", e.mc},       {"d0", e.d0},
                     {"split", e.split},             {"row", e.witness.row},
                     {"lo", e.witness.lo},           {"hi", e.witness.hi}};
    if (e.split) {
      j["left_size"] = e.left_size;
      j["right_size"] = e.right_size;
    }
    out << j.dump() << "\n";
  }
}

void print_summary(const Dataset& ds, const PipelineReport& rep,
                   const std::optional<MetricsReport>& metrics) {
  std::cout << "dataset: " << ds.name << " (n=" << ds.n() << ", d=" << ds.dims() << ")\n";
  std::cout << "clusters: " << rep.assignment.k << "  (dense " << rep.dense_count << ", border "
            << rep.border_count << ", r=" << rep.r << ")\n";
  if (!rep.noise_id_skipped)
    std::cout << "split: p_r=" << rep.diagnostics.p_r << " p_max=" << rep.diagnostics.p_max
              << (rep.diagnostics.pmax_fallback ? " (fallback)" : "") << "\n";
  if (metrics) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "metrics: acc=%.1f f1=%.1f ari=%.1f nmi=%.1f", 100 * metrics->acc,
                  100 * metrics->f1, 100 * metrics->ari, 100 * metrics->nmi);
    std::cout << buf << "\n";
  }
  char tbuf[200];
  std::snprintf(tbuf, sizeof tbuf,
                "timings: distances=%.2fs density=%.2fs noise-id=%.2fs fission=%.2fs assign=%.2fs "
                "total=%.2fs",
                rep.timings.distances_s, rep.timings.density_s, rep.timings.noise_id_s,
                rep.timings.fission_s, rep.timings.assign_s, rep.timings.total_s);
  std::cout << tbuf << "\n";
}

int cmd_run(const std::string& dataset_ref, const std::string& generate_spec, Index gen_n,
            int gen_k, std::uint64_t gen_seed, double gen_separation, Index gen_n2,
            std::optional<int> label_col, bool normalize, const std::string& out_dir,
            bool diagnostics, bool trace, std::optional<int> r_override, bool no_noise_id,
            const std::string& mode, const fs::path& data_dir) {
  Dataset ds;
  try {
    if (!generate_spec.empty()) {
      GeneratorSpec spec = parse_generator_spec(generate_spec);
      if (gen_n > 0) spec.n = gen_n;
      if (gen_k > 0) spec.k = gen_k;
      if (gen_seed) spec.seed = gen_seed;
      if (gen_separation > 0) spec.separation = gen_separation;
      if (gen_n2 > 0) spec.n2 = gen_n2;
      ds = generate_synthetic(spec);
    } else {
      ds = resolve_dataset(dataset_ref, data_dir, label_col);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitResolve;
  }

  try {
    if (normalize) ds = min_max_normalize(ds).dataset;
    SarfcOptions opts;
    opts.r_override = r_override;
    opts.noise_id = !no_noise_id;
    opts.trace = trace;
    opts.mode = parse_mode(mode);
    PipelineReport rep = cluster(ds, opts);

    std::optional<MetricsReport> metrics;
    if (ds.labels) metrics = evaluate(ds.name, rep.assignment.labels, *ds.labels);
    print_summary(ds, rep, metrics);

    const fs::path out(out_dir);
    fs::create_directories(out);
    if (metrics) {
      std::ofstream csv(out / (ds.name + "_results.csv"));
      csv << metrics_csv_header() << "\n" << metrics_csv_row(*metrics) << "\n";
    }
    {
      std::ofstream lab(out / (ds.name + "_labels.csv"));
      lab << "point,cluster,dense\n";
      for (Index i = 0; i < ds.n(); ++i)
        lab << i << ',' << rep.assignment.labels[i] << ','
            << (rep.assignment.dense_mask[static_cast<size_t>(i)] ? 1 : 0) << "\n";
    }
    if (diagnostics && !rep.noise_id_skipped) {
      DensityProfile prof = point_densities(ds);
      std::ofstream diag(out / (ds.name + "_diagnostics.csv"));
      write_diagnostics_csv(rep.diagnostics, prof, diag);
    }
    if (trace) write_trace(rep, out / (ds.name + "_trace.jsonl"));
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "pipeline error: " << e.what() << "\n";
    return kExitPipeline;
  }
}

int cmd_bench(const std::string& manifest_path, const std::string& out_dir,
              const fs::path& data_dir) {
  fs::path manifest = manifest_path.empty() ? data_dir / "benchmarks.manifest" : fs::path(manifest_path);
  std::vector<DatasetManifest> entries;
  try {
    entries = parse_manifest(manifest);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitResolve;
  }

  const fs::path out(out_dir);
  fs::create_directories(out);
  std::ofstream csv(out / "bench_results.csv");
  csv << metrics_csv_header() << "\n";

  std::printf("%-10s %6s %6s %7s %7s %7s %7s %9s\n", "dataset", "k_true", "k_pred", "acc", "f1",
              "ari", "nmi", "time");
  int failures = 0;
  for (const DatasetManifest& entry : entries) {
    try {
      Dataset ds = load_from_manifest(entry, data_dir / "");
      const auto t0 = std::chrono::steady_clock::now();
      PipelineReport rep = cluster(ds);
      const double secs =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      if (ds.labels) {
        MetricsReport m = evaluate(entry.name, rep.assignment.labels, *ds.labels);
        csv << metrics_csv_row(m) << "\n";
        std::printf("%-10s %6d %6d %7.1f %7.1f %7.1f %7.1f %8.1fs\n", entry.name.c_str(), m.k_true,
                    m.k_pred, 100 * m.acc, 100 * m.f1, 100 * m.ari, 100 * m.nmi, secs);
      } else {
        csv << entry.name << ",," << rep.assignment.k << ",,,,\n";
        std::printf("%-10s %6s %6d %7s %7s %7s %7s %8.1fs\n", entry.name.c_str(), "-",
                    rep.assignment.k, "-", "-", "-", "-", secs);
      }
    } catch (const std::exception& e) {
      ++failures;
      csv << entry.name << ",ERROR,,,,,\n";
      std::printf("%-10s ERROR: %s\n", entry.name.c_str(), e.what());
    }
  }
  return failures == static_cast<int>(entries.size()) && !entries.empty() ? kExitPipeline : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Parameter-free density-based fission clustering"};
  app.require_subcommand(1);

  std::string data_dir_str = default_data_dir().string();
  app.add_option("--data-dir", data_dir_str, "dataset cache directory (env SARFC_DATA_DIR)");

  // run
  auto* run = app.add_subcommand("run", "cluster one dataset");
  std::string dataset_ref, generate_spec, out_dir = ".", mode = "auto";
  Index gen_n = 0, gen_n2 = 0;
  int gen_k = 0;
  std::uint64_t gen_seed = 0;
  double gen_separation = 0.0;
  int label_col_opt = std::numeric_limits<int>::min();
  bool normalize = false, diagnostics = false, trace = false, no_noise_id = false;
  int r_override_opt = 0;
  run->add_option("--dataset", dataset_ref, "dataset name (manifest) or CSV path");
  run->add_option("--generate", generate_spec,
                  "generator kind or spec, e.g. blobs or blobs:n=200,k=2,seed=7");
  run->add_option("--n", gen_n, "generator: total points");
  run->add_option("--k", gen_k, "generator: cluster count");
  run->add_option("--seed", gen_seed, "generator: RNG seed");
  run->add_option("--separation", gen_separation, "generator: cluster separation");
  run->add_option("--n2", gen_n2, "generator: second-cluster size (imbalance)");
  run->add_option("--label-col", label_col_opt, "ground-truth column in the CSV (-1 = last)");
  run->add_flag("--normalize", normalize, "min-max normalize features before clustering");
  run->add_option("--out", out_dir, "output directory for result files");
  run->add_flag("--diagnostics", diagnostics, "write density/split curves as CSV");
  run->add_flag("--trace", trace, "write the fission trace as JSON lines");
  run->add_option("--r", r_override_opt, "override the self-adaptive robustness order");
  run->add_flag("--no-noise-id", no_noise_id, "cluster all points (skip border identification)");
  run->add_option("--mode", mode, "distance storage: full|streamed|auto");

  // bench
  auto* bench = app.add_subcommand("bench", "run every dataset of a manifest");
  std::string manifest_path, bench_out = ".";
  bench->add_option("--manifest", manifest_path, "manifest file (default <data-dir>/benchmarks.manifest)");
  bench->add_option("--out", bench_out, "output directory");

  CLI11_PARSE(app, argc, argv);

  const fs::path data_dir(data_dir_str);
  if (run->parsed()) {
    if (dataset_ref.empty() && generate_spec.empty()) {
      std::cerr << "error: provide --dataset or --generate\n";
      return kExitResolve;
    }
    std::optional<int> label_col;
    if (label_col_opt != std::numeric_limits<int>::min()) label_col = label_col_opt;
    std::optional<int> r_override;
    if (r_override_opt > 0) r_override = r_override_opt;
    return cmd_run(dataset_ref, generate_spec, gen_n, gen_k, gen_seed, gen_separation, gen_n2,
                   label_col, normalize, out_dir, diagnostics, trace, r_override, no_noise_id,
                   mode, data_dir);
  }
  return cmd_bench(manifest_path, bench_out, data_dir);
}
