#pragma once

#include "imbaug/types.hpp"

namespace imbaug {

/// CSV ingestion result. Labels are remapped to contiguous {0..N-1} in order
/// of first appearance; the original label strings are kept for reports.
struct CsvLoadResult {
  Dataset data;
  std::vector<std::string> original_labels; // index = remapped class id
  std::vector<std::string> feature_names;   // empty when no header
  bool had_header = false;
  int label_index = -1;
};

/// Loads a UTF-8 comma-separated file. `label_col` is a 0-based column index
/// or, when a header row is present, a column name. Missing values are a
/// hard error, reported with row/column position.
CsvLoadResult load_csv(const std::string& path, const std::string& label_col);

ScalerParams fit_standardizer(const Dataset& train);
Dataset apply_standardizer(const ScalerParams& params, const Dataset& data);

/// `repeats` independent stratified shuffle-splits at `train_fraction`,
/// deterministic under `seed`. Per-class train counts are within one
/// instance of the target fraction.
SplitPlan stratified_splits(const Dataset& data, int repeats,
                            double train_fraction, std::uint64_t seed);

Dataset subset(const Dataset& data, const std::vector<Index>& indices);

/// Two isotropic Gaussian clusters with mean distance `separation` along a
/// seeded random direction. Class 0 is the majority.
Dataset make_gaussian_imbalanced(Index n_major, Index n_minor, Index d,
                                 double separation, std::uint64_t seed);

double imbalance_ratio(const Dataset& data);

void write_csv(const std::string& path, const Dataset& data);

} // namespace imbaug
