#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "afpsrc/classifier.hpp"
#include "afpsrc/metrics.hpp"

namespace afpsrc {

/// Encoded samples with their labels; row i of `features` belongs to ids[i].
struct LabeledSet {
  Eigen::MatrixXd features;
  std::vector<Label> labels;
  std::vector<std::string> ids;

  std::size_t size() const noexcept { return labels.size(); }
  std::size_t count(Label label) const noexcept;

  LabeledSet subset(std::span<const std::size_t> rows) const;
  static LabeledSet concat(const LabeledSet& first, const LabeledSet& second);
};

/// All rows share one label.
LabeledSet make_labeled_set(Eigen::MatrixXd features, Label label, std::vector<std::string> ids);

struct SplitSpec {
  std::size_t train_per_class = 300;
  std::uint64_t seed = 0;
};

struct DatasetSplit {
  LabeledSet train;  // class 1 rows first, original order within class
  LabeledSet test;
};

/// Seeded uniform sampling without replacement per class. At least one sample
/// per class must remain for testing.
DatasetSplit split_dataset(const LabeledSet& afps, const LabeledSet& non_afps,
                           const SplitSpec& spec);

/// 10, 20, ..., 100, 150, 175, 200, 225, 250, 300, 400, 500, 600.
std::vector<std::size_t> default_pc_list();

/// Largest usable component count for n training rows of width d: min(n, d).
std::size_t rank_bound(std::size_t n_train, std::size_t dim) noexcept;

struct SweepRow {
  std::size_t pcs = 0;
  ConfusionMatrix confusion;
  MetricsReport metrics;
  std::size_t unconverged = 0;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  std::vector<std::string> warnings;
};

/// Classifies every row of `probes` (already projected, width >= dictionary
/// rows; only the leading columns are used). Output order matches input.
std::vector<Classification> classify_rows(const SrcClassifier& classifier,
                                          const Eigen::MatrixXd& probes, unsigned threads);

/// One PCA fit on `train`; for each k a dictionary from the first k
/// components classifies all of `test`. Component counts beyond the rank
/// bound are skipped with a warning.
SweepResult pc_sweep(const LabeledSet& train, const LabeledSet& test,
                     std::span<const std::size_t> pc_list, const SolverDefaults& solver,
                     unsigned threads = 0);

enum class NoiseTarget {
  Projected,  // noise on unit-normalized PCA projections of the training rows
  Raw,        // noise on unit-normalized raw feature rows before the PCA fit
};

struct NoiseSpec {
  double sigma = 1.0;
  std::uint64_t seed = 0;
  NoiseTarget target = NoiseTarget::Projected;
};

/// Self-classification of the training rows against a dictionary corrupted by
/// i.i.d. N(0, sigma^2) noise. sigma = 0 is exactly pc_sweep(train, train).
SweepResult noise_robustness(const LabeledSet& train, const NoiseSpec& noise,
                             std::span<const std::size_t> pc_list, const SolverDefaults& solver,
                             unsigned threads = 0);

}  // namespace afpsrc
