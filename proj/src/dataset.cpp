#include "imbaug/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <unordered_map>

namespace imbaug {

void Dataset::validate() const {
  const auto n = rows();
  if (static_cast<Index>(labels.size()) != n ||
      static_cast<Index>(instance_ids.size()) != n)
    throw std::invalid_argument("dataset: row/label/id length mismatch");
  std::set<std::int64_t> ids(instance_ids.begin(), instance_ids.end());
  if (static_cast<Index>(ids.size()) != n)
    throw std::invalid_argument("dataset: instance_ids are not unique");
  auto counts = class_counts();
  for (int y : labels)
    if (y < 0 || y >= n_classes)
      throw std::invalid_argument("dataset: label out of range");
  for (Index c : counts)
    if (c == 0) throw std::invalid_argument("dataset: empty class");
}

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) {
    // trim surrounding whitespace and CR
    auto b = cell.find_first_not_of(" \t\r");
    auto e = cell.find_last_not_of(" \t\r");
    cells.push_back(b == std::string::npos ? "" : cell.substr(b, e - b + 1));
  }
  if (!line.empty() && line.back() == ',') cells.push_back("");
  return cells;
}

bool parse_double(const std::string& s, double& out) {
  if (s.empty()) return false;
  const char* begin = s.data();
  const char* end = begin + s.size();
  auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc() && ptr == end;
}

} // namespace

CsvLoadResult load_csv(const std::string& path, const std::string& label_col) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path);

  std::vector<std::vector<std::string>> raw;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    raw.push_back(split_line(line));
  }
  if (raw.empty()) throw std::runtime_error("empty file: " + path);

  const std::size_t n_cols = raw[0].size();
  for (std::size_t r = 0; r < raw.size(); ++r)
    if (raw[r].size() != n_cols)
      throw std::runtime_error("row " + std::to_string(r) +
                               ": inconsistent column count");

  // Header auto-detection: first row counts as header when any cell fails
  // to parse as a number.
  bool had_header = false;
  for (const auto& cell : raw[0]) {
    double v;
    if (!parse_double(cell, v)) {
      had_header = true;
      break;
    }
  }

  CsvLoadResult result;
  result.had_header = had_header;
  if (had_header) result.feature_names = raw[0];

  // Resolve the label column: integer index, or name against the header.
  int label_index = -1;
  {
    int idx;
    auto [ptr, ec] =
        std::from_chars(label_col.data(), label_col.data() + label_col.size(), idx);
    if (ec == std::errc() && ptr == label_col.data() + label_col.size()) {
      label_index = idx;
    } else if (had_header) {
      for (std::size_t j = 0; j < raw[0].size(); ++j)
        if (raw[0][j] == label_col) label_index = static_cast<int>(j);
      if (label_index < 0)
        throw std::runtime_error("label column '" + label_col +
                                 "' not found in header");
    } else {
      throw std::runtime_error(
          "label column given by name but the file has no header");
    }
  }
  if (label_index < 0 || label_index >= static_cast<int>(n_cols))
    throw std::runtime_error("label column index out of range");
  result.label_index = label_index;

  const std::size_t first_row = had_header ? 1 : 0;
  const Index n = static_cast<Index>(raw.size() - first_row);
  const Index d = static_cast<Index>(n_cols - 1);
  if (n == 0) throw std::runtime_error("file has a header but no data rows");

  Dataset data;
  data.features.resize(n, d);
  data.labels.resize(static_cast<std::size_t>(n));
  data.instance_ids.resize(static_cast<std::size_t>(n));

  std::unordered_map<std::string, int> label_map;
  for (Index i = 0; i < n; ++i) {
    const auto& row = raw[first_row + static_cast<std::size_t>(i)];
    Index jj = 0;
    for (std::size_t j = 0; j < n_cols; ++j) {
      if (static_cast<int>(j) == label_index) continue;
      double v;
      if (!parse_double(row[j], v))
        throw std::runtime_error("unparseable cell at row " +
                                 std::to_string(first_row + i) + ", column " +
                                 std::to_string(j) + ": '" + row[j] + "'");
      data.features(i, jj++) = v;
    }
    const std::string& lab = row[static_cast<std::size_t>(label_index)];
    auto it = label_map.find(lab);
    if (it == label_map.end()) {
      it = label_map.emplace(lab, static_cast<int>(label_map.size())).first;
      result.original_labels.push_back(lab);
    }
    data.labels[static_cast<std::size_t>(i)] = it->second;
    data.instance_ids[static_cast<std::size_t>(i)] = i;
  }
  data.n_classes = static_cast<int>(label_map.size());
  if (data.n_classes < 2)
    throw std::runtime_error("label column has a single distinct value");
  if (had_header)
    result.feature_names.erase(result.feature_names.begin() + label_index);

  data.validate();
  result.data = std::move(data);
  return result;
}

ScalerParams fit_standardizer(const Dataset& train) {
  if (train.rows() == 0) throw std::invalid_argument("empty training set");
  constexpr double kStdFloor = 1e-12;
  ScalerParams p;
  const auto n = static_cast<double>(train.rows());
  p.mean = train.features.colwise().mean();
  p.std_dev =
      ((train.features.rowwise() - p.mean.transpose()).array().square().colwise().sum() / n)
          .sqrt()
          .transpose();
  for (Index j = 0; j < p.std_dev.size(); ++j)
    if (p.std_dev(j) < kStdFloor) p.std_dev(j) = 1.0;
  return p;
}

Dataset apply_standardizer(const ScalerParams& params, const Dataset& data) {
  if (params.mean.size() != data.dims())
    throw std::invalid_argument("standardizer: column count mismatch");
  Dataset out = data;
  out.features = (data.features.rowwise() - params.mean.transpose()).array().rowwise() /
                 params.std_dev.transpose().array();
  return out;
}

SplitPlan stratified_splits(const Dataset& data, int repeats,
                            double train_fraction, std::uint64_t seed) {
  if (train_fraction <= 0.0 || train_fraction >= 1.0)
    throw std::invalid_argument("train_fraction must be in (0,1)");
  for (int c = 0; c < data.n_classes; ++c)
    if (static_cast<Index>(data.indices_of_class(c).size()) < 2)
      throw std::invalid_argument("class " + std::to_string(c) +
                                  " has fewer than 2 instances");

  SplitPlan plan;
  plan.repeats = repeats;
  plan.seed = seed;
  std::mt19937_64 rng(seed);
  for (int r = 0; r < repeats; ++r) {
    std::vector<Index> train, test;
    for (int c = 0; c < data.n_classes; ++c) {
      auto idx = data.indices_of_class(c);
      std::shuffle(idx.begin(), idx.end(), rng);
      auto n_c = static_cast<Index>(idx.size());
      Index n_train = static_cast<Index>(
          std::llround(train_fraction * static_cast<double>(n_c)));
      n_train = std::clamp<Index>(n_train, 1, n_c - 1);
      train.insert(train.end(), idx.begin(), idx.begin() + n_train);
      test.insert(test.end(), idx.begin() + n_train, idx.end());
    }
    std::sort(train.begin(), train.end());
    std::sort(test.begin(), test.end());
    plan.train_indices.push_back(std::move(train));
    plan.test_indices.push_back(std::move(test));
  }
  return plan;
}

Dataset subset(const Dataset& data, const std::vector<Index>& indices) {
  Dataset out;
  out.n_classes = data.n_classes;
  out.features.resize(static_cast<Index>(indices.size()), data.dims());
  for (std::size_t i = 0; i < indices.size(); ++i) {
    out.features.row(static_cast<Index>(i)) = data.features.row(indices[i]);
    out.labels.push_back(data.labels[static_cast<std::size_t>(indices[i])]);
    out.instance_ids.push_back(
        data.instance_ids[static_cast<std::size_t>(indices[i])]);
  }
  return out;
}

Dataset make_gaussian_imbalanced(Index n_major, Index n_minor, Index d,
                                 double separation, std::uint64_t seed) {
  if (n_major < 1 || n_minor < 1 || d < 1)
    throw std::invalid_argument("counts and dimension must be >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  Vector direction(d);
  for (Index j = 0; j < d; ++j) direction(j) = gauss(rng);
  direction.normalize();
  const Vector minor_mean = separation * direction;

  Dataset data;
  const Index n = n_major + n_minor;
  data.n_classes = 2;
  data.features.resize(n, d);
  data.labels.resize(static_cast<std::size_t>(n));
  data.instance_ids.resize(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) {
    const bool minority = i >= n_major;
    for (Index j = 0; j < d; ++j)
      data.features(i, j) = gauss(rng) + (minority ? minor_mean(j) : 0.0);
    data.labels[static_cast<std::size_t>(i)] = minority ? 1 : 0;
    data.instance_ids[static_cast<std::size_t>(i)] = i;
  }
  return data;
}

double imbalance_ratio(const Dataset& data) {
  if (data.n_classes < 2)
    throw std::invalid_argument("imbalance_ratio needs >= 2 classes");
  auto counts = data.class_counts();
  auto [mn, mx] = std::minmax_element(counts.begin(), counts.end());
  return static_cast<double>(*mx) / static_cast<double>(*mn);
}

void write_csv(const std::string& path, const Dataset& data) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out.precision(17);
  for (Index j = 0; j < data.dims(); ++j) out << "f" << j << ",";
  out << "label\n";
  for (Index i = 0; i < data.rows(); ++i) {
    for (Index j = 0; j < data.dims(); ++j) out << data.features(i, j) << ",";
    out << data.labels[static_cast<std::size_t>(i)] << "\n";
  }
}

} // namespace imbaug
