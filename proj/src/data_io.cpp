#include "sarfc/data_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

namespace sarfc {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_fields(const std::string& line, char delim) {
  std::vector<std::string> out;
  if (delim == ' ') {
    std::istringstream ss(line);
    std::string tok;
    while (ss >> tok) out.push_back(tok);
  } else {
    std::stringstream ss(line);
    std::string tok;
    while (std::getline(ss, tok, delim)) out.push_back(trim(tok));
  }
  return out;
}

char detect_delimiter(const std::string& line) {
  if (line.find(',') != std::string::npos) return ',';
  if (line.find(';') != std::string::npos) return ';';
  return ' ';
}

double parse_number(const std::string& tok, int row, int col) {
  char* end = nullptr;
  const double v = std::strtod(tok.c_str(), &end);
  if (end == tok.c_str() || *end != '\0' || !std::isfinite(v)) {
    throw ParseError("non-numeric field at row " + std::to_string(row) + ", column " +
                     std::to_string(col) + ": '" + tok + "'");
  }
  return v;
}

}  // namespace

Dataset load_csv(const std::filesystem::path& path, std::optional<int> label_column) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");

  std::vector<std::vector<double>> rows;
  std::string line;
  char delim = 0;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty()) continue;
    if (delim == 0) delim = detect_delimiter(line);
    const std::vector<std::string> fields = split_fields(line, delim);
    std::vector<double> row;
    row.reserve(fields.size());
    for (size_t c = 0; c < fields.size(); ++c)
      row.push_back(parse_number(fields[c], lineno, static_cast<int>(c) + 1));
    if (!rows.empty() && row.size() != rows.front().size())
      throw ParseError("row " + std::to_string(lineno) + " has " +
                       std::to_string(row.size()) + " fields, expected " +
                       std::to_string(rows.front().size()));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError("'" + path.string() + "' contains no data rows");

  const Index n = static_cast<Index>(rows.size());
  const Index total_cols = static_cast<Index>(rows.front().size());

  Index label_col = -1;
  if (label_column) {
    label_col = *label_column < 0 ? total_cols - 1 : static_cast<Index>(*label_column);
    if (label_col >= total_cols)
      throw InvalidParameterError("label column out of range");
    if (total_cols < 2) throw ParseError("file has no feature columns besides the label");
  }

  Dataset ds;
  ds.name = path.stem().string();
  ds.points.resize(n, label_col >= 0 ? total_cols - 1 : total_cols);
  Eigen::VectorXi labels(n);
  for (Index i = 0; i < n; ++i) {
    Index out_c = 0;
    for (Index c = 0; c < total_cols; ++c) {
      const double v = rows[static_cast<size_t>(i)][static_cast<size_t>(c)];
      if (c == label_col) {
        const double r = std::round(v);
        if (std::abs(v - r) > 1e-9 || r < 0)
          throw ParseError("label at row " + std::to_string(i + 1) +
                           " is not a non-negative integer");
        labels[i] = static_cast<int>(r);
      } else {
        ds.points(i, out_c++) = v;
      }
    }
  }
  if (label_col >= 0) ds.labels = labels;
  ds.validate();
  return ds;
}

void save_csv(const Dataset& dataset, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  char buf[64];
  for (Index i = 0; i < dataset.n(); ++i) {
    for (Index c = 0; c < dataset.dims(); ++c) {
      std::snprintf(buf, sizeof buf, "%.17g", dataset.points(i, c));
      out << (c ? "," : "") << buf;
    }
    if (dataset.labels) out << ',' << (*dataset.labels)[i];
    out << '\n';
  }
}

NormalizeResult min_max_normalize(const Dataset& dataset) {
  dataset.validate();
  NormalizeResult res;
  res.dataset = dataset;
  for (Index c = 0; c < dataset.dims(); ++c) {
    const double lo = dataset.points.col(c).minCoeff();
    const double hi = dataset.points.col(c).maxCoeff();
    if (hi > lo) {
      res.dataset.points.col(c) = (dataset.points.col(c).array() - lo) / (hi - lo);
    } else {
      res.dataset.points.col(c).setConstant(0.5);
      res.constant_dims.push_back(static_cast<int>(c));
    }
  }
  return res;
}

// ---------------------------------------------------------------------------
// Generators
// ---------------------------------------------------------------------------

namespace {

using Rng = std::mt19937_64;

Dataset make_dataset(std::vector<std::array<double, 2>>& pts, std::vector<int>& labels,
                     std::string name) {
  Dataset ds;
  ds.name = std::move(name);
  ds.points.resize(static_cast<Index>(pts.size()), 2);
  Eigen::VectorXi lab(static_cast<Index>(pts.size()));
  for (size_t i = 0; i < pts.size(); ++i) {
    ds.points(static_cast<Index>(i), 0) = pts[i][0];
    ds.points(static_cast<Index>(i), 1) = pts[i][1];
    lab[static_cast<Index>(i)] = labels[i];
  }
  ds.labels = lab;
  return ds;
}

Dataset gen_blobs(const GeneratorSpec& spec) {
  if (spec.k < 1 || spec.n < spec.k) throw ValidationError("blobs: need n >= k >= 1");
  Rng rng(spec.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<std::array<double, 2>> pts;
  std::vector<int> labels;
  const double radius = spec.k == 1 ? 0.0 : spec.separation / (2.0 * std::sin(std::numbers::pi / spec.k));
  for (Index i = 0; i < spec.n; ++i) {
    const int c = static_cast<int>(i % spec.k);
    const double ang = 2.0 * std::numbers::pi * c / spec.k;
    pts.push_back({radius * std::cos(ang) + gauss(rng), radius * std::sin(ang) + gauss(rng)});
    labels.push_back(c);
  }
  return make_dataset(pts, labels, "blobs");
}

Dataset gen_ring_s(const GeneratorSpec& spec) {
  Rng rng(spec.seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<std::array<double, 2>> pts;
  std::vector<int> labels;
  const Index n_ring = spec.n / 2;
  const Index n_s = spec.n / 4;
  const Index n_blob = spec.n - n_ring - n_s;
  for (Index i = 0; i < n_ring; ++i) {
    const double a = 2.0 * std::numbers::pi * uni(rng);
    const double r = 10.0 + 0.6 * gauss(rng);
    pts.push_back({r * std::cos(a), r * std::sin(a)});
    labels.push_back(0);
  }
  for (Index i = 0; i < n_s; ++i) {
    // an S-shaped curve threading the annulus interior
    const double t = 2.0 * std::numbers::pi * uni(rng);
    pts.push_back({4.0 * std::sin(t) + 0.25 * gauss(rng), 3.0 * std::sin(2.0 * t) + 0.25 * gauss(rng)});
    labels.push_back(1);
  }
  for (Index i = 0; i < n_blob; ++i) {
    pts.push_back({22.0 + gauss(rng), 0.0 + gauss(rng)});
    labels.push_back(2);
  }
  return make_dataset(pts, labels, "ring_s");
}

Dataset gen_imbalance(const GeneratorSpec& spec) {
  Rng rng(spec.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const Index n2 = spec.n2 > 0 ? spec.n2 : std::max<Index>(spec.n / 20, 1);
  if (n2 >= spec.n) throw ValidationError("imbalance: n2 must be < n");
  const Index n1 = spec.n - n2;
  std::vector<std::array<double, 2>> pts;
  std::vector<int> labels;
  for (Index i = 0; i < n1; ++i) {
    pts.push_back({0.5 * gauss(rng), 0.5 * gauss(rng)});
    labels.push_back(0);
  }
  for (Index i = 0; i < n2; ++i) {
    pts.push_back({spec.separation * 3.0 + 3.0 * gauss(rng), 3.0 * gauss(rng)});
    labels.push_back(1);
  }
  return make_dataset(pts, labels, "imbalance");
}

Dataset gen_supole_like(const GeneratorSpec& spec) {
  Rng rng(spec.seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  std::vector<std::array<double, 2>> pts;
  std::vector<int> labels;
  const Index n_disc = (2 * spec.n) / 3;
  const Index n_pole = spec.n - n_disc;
  for (Index i = 0; i < n_disc; ++i) {
    // uniform disc, radius 2
    const double a = 2.0 * std::numbers::pi * uni(rng);
    const double r = 2.0 * std::sqrt(uni(rng));
    pts.push_back({r * std::cos(a), r * std::sin(a)});
    labels.push_back(0);
  }
  for (Index i = 0; i < n_pole; ++i) {
    // elongated bar to the right of the disc
    pts.push_back({spec.separation + 1.2 * uni(rng), -4.0 + 8.0 * uni(rng)});
    labels.push_back(1);
  }
  return make_dataset(pts, labels, "supole_like");
}

Dataset gen_squcir_like(const GeneratorSpec& spec) {
  Rng rng(spec.seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  std::vector<std::array<double, 2>> pts;
  std::vector<int> labels;
  const Index n_sq = spec.n / 2;
  const Index n_ci = spec.n - n_sq;
  for (Index i = 0; i < n_sq; ++i) {
    pts.push_back({10.0 * uni(rng), 10.0 * uni(rng)});
    labels.push_back(0);
  }
  const double cx = 10.0 + spec.separation + 5.0;
  for (Index i = 0; i < n_ci; ++i) {
    const double a = 2.0 * std::numbers::pi * uni(rng);
    const double r = 5.0 * std::sqrt(uni(rng));
    pts.push_back({cx + r * std::cos(a), 5.0 + r * std::sin(a)});
    labels.push_back(1);
  }
  return make_dataset(pts, labels, "squcir_like");
}

}  // namespace

Dataset generate_synthetic(const GeneratorSpec& spec) {
  if (spec.n < 1) throw ValidationError("generator: n must be >= 1");
  if (spec.kind == "blobs") return gen_blobs(spec);
  if (spec.kind == "ring_s") return gen_ring_s(spec);
  if (spec.kind == "imbalance") return gen_imbalance(spec);
  if (spec.kind == "supole_like") return gen_supole_like(spec);
  if (spec.kind == "squcir_like") return gen_squcir_like(spec);
  throw ValidationError("unknown generator kind '" + spec.kind + "'");
}

GeneratorSpec parse_generator_spec(const std::string& text) {
  GeneratorSpec spec;
  const auto colon = text.find(':');
  spec.kind = trim(text.substr(0, colon));
  if (colon != std::string::npos) {
    for (const std::string& kv : split_fields(text.substr(colon + 1), ',')) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw ParseError("generator spec expects key=value: '" + kv + "'");
      const std::string key = trim(kv.substr(0, eq));
      const std::string val = trim(kv.substr(eq + 1));
      if (key == "n") spec.n = std::stoll(val);
      else if (key == "k") spec.k = std::stoi(val);
      else if (key == "seed") spec.seed = std::stoull(val);
      else if (key == "separation") spec.separation = std::stod(val);
      else if (key == "n2") spec.n2 = std::stoll(val);
      else throw ParseError("unknown generator parameter '" + key + "'");
    }
  }
  return spec;
}

// ---------------------------------------------------------------------------
// Manifests
// ---------------------------------------------------------------------------

std::vector<DatasetManifest> parse_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open manifest '" + path.string() + "'");
  std::vector<DatasetManifest> entries;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    if (line.front() == '[' && line.back() == ']') {
      DatasetManifest m;
      m.name = trim(line.substr(1, line.size() - 2));
      if (m.name.empty()) throw ParseError("empty manifest section name at line " + std::to_string(lineno));
      entries.push_back(m);
      continue;
    }
    if (entries.empty()) throw ParseError("manifest key outside any [section] at line " + std::to_string(lineno));
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("expected key = value at line " + std::to_string(lineno));
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    DatasetManifest& m = entries.back();
    if (key == "file") m.source = val;
    else if (key == "generate") m.source = "generate:" + val;
    else if (key == "n") m.expected_n = std::stoll(val);
    else if (key == "d") m.expected_d = std::stoll(val);
    else if (key == "k") m.expected_k = std::stoi(val);
    else if (key == "labels") {
      if (val == "none") m.has_labels = false;
      else if (val == "last") { m.has_labels = true; m.label_column = -1; }
      else { m.has_labels = true; m.label_column = std::stoi(val); }
    } else {
      throw ParseError("unknown manifest key '" + key + "' at line " + std::to_string(lineno));
    }
  }
  return entries;
}

Dataset load_from_manifest(const DatasetManifest& entry, const std::filesystem::path& data_dir) {
  Dataset ds;
  if (entry.source.rfind("generate:", 0) == 0) {
    ds = generate_synthetic(parse_generator_spec(entry.source.substr(9)));
  } else {
    if (entry.source.empty()) throw ValidationError("manifest entry '" + entry.name + "' has no source");
    std::optional<int> label_col;
    if (entry.has_labels) label_col = entry.label_column;
    ds = load_csv(data_dir / entry.source, label_col);
  }
  ds.name = entry.name;
  if (entry.expected_n > 0 && ds.n() != entry.expected_n)
    throw ValidationError("'" + entry.name + "': expected n=" + std::to_string(entry.expected_n) +
                          ", loaded " + std::to_string(ds.n()));
  if (entry.expected_d > 0 && ds.dims() != entry.expected_d)
    throw ValidationError("'" + entry.name + "': expected d=" + std::to_string(entry.expected_d) +
                          ", loaded " + std::to_string(ds.dims()));
  if (entry.has_labels && !ds.labels)
    throw ValidationError("'" + entry.name + "': manifest promises labels but none were loaded");
  return ds;
}

}  // namespace sarfc
