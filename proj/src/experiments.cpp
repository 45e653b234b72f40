#include "afpsrc/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "afpsrc/parallel.hpp"
#include "afpsrc/rng.hpp"

namespace afpsrc {
namespace {

std::vector<std::size_t> choose(std::size_t n, std::size_t count, CounterRng& rng) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  for (std::size_t i = 0; i < count; ++i) {
    const auto j = i + static_cast<std::size_t>(rng.below(n - i));
    std::swap(idx[i], idx[j]);
  }
  idx.resize(count);
  std::sort(idx.begin(), idx.end());
  return idx;
}

std::vector<std::size_t> complement(std::size_t n, const std::vector<std::size_t>& chosen) {
  std::vector<std::size_t> out;
  out.reserve(n - chosen.size());
  std::size_t c = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (c < chosen.size() && chosen[c] == i) {
      ++c;
    } else {
      out.push_back(i);
    }
  }
  return out;
}

std::vector<std::size_t> usable_components(std::span<const std::size_t> pc_list,
                                           std::size_t bound,
                                           std::vector<std::string>& warnings) {
  std::vector<std::size_t> usable;
  for (std::size_t i = 0; i < pc_list.size(); ++i) {
    if (pc_list[i] == 0) throw Error(ErrorCode::InvalidArgument, "component counts must be >= 1");
    if (i > 0 && pc_list[i] <= pc_list[i - 1]) {
      throw Error(ErrorCode::InvalidArgument, "component counts must be strictly increasing");
    }
    if (pc_list[i] > bound) {
      warnings.push_back("pcs=" + std::to_string(pc_list[i]) + " exceeds rank bound " +
                         std::to_string(bound) + "; row skipped");
    } else {
      usable.push_back(pc_list[i]);
    }
  }
  return usable;
}

SweepRow score_row(std::size_t k, const SrcClassifier& classifier, const Eigen::MatrixXd& probes,
                   std::span<const Label> truth, unsigned threads) {
  const auto results = classify_rows(classifier, probes, threads);
  std::vector<Label> predicted;
  predicted.reserve(results.size());
  SweepRow row;
  row.pcs = k;
  for (const auto& r : results) {
    predicted.push_back(r.label);
    row.unconverged += r.converged ? 0 : 1;
  }
  row.confusion = confusion(truth, predicted);
  row.metrics = compute_metrics(row.confusion);
  return row;
}

void normalize_rows(Eigen::MatrixXd& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    const double norm = m.row(i).norm();
    if (norm <= kZeroNorm) {
      throw Error(ErrorCode::Numeric, "training row " + std::to_string(i) + " has zero norm");
    }
    m.row(i) /= norm;
  }
}

void add_noise(Eigen::MatrixXd& m, double sigma, CounterRng& rng) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) += sigma * rng.normal();
  }
}

}  // namespace

std::size_t LabeledSet::count(Label label) const noexcept {
  return static_cast<std::size_t>(std::count(labels.begin(), labels.end(), label));
}

LabeledSet LabeledSet::subset(std::span<const std::size_t> rows) const {
  LabeledSet out;
  out.features.resize(static_cast<Eigen::Index>(rows.size()), features.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i] >= size()) throw Error(ErrorCode::InvalidArgument, "subset row out of range");
    out.features.row(static_cast<Eigen::Index>(i)) =
        features.row(static_cast<Eigen::Index>(rows[i]));
    out.labels.push_back(labels[rows[i]]);
    out.ids.push_back(ids[rows[i]]);
  }
  return out;
}

LabeledSet LabeledSet::concat(const LabeledSet& first, const LabeledSet& second) {
  if (first.size() > 0 && second.size() > 0 && first.features.cols() != second.features.cols()) {
    throw Error(ErrorCode::InvalidArgument, "cannot concatenate sets of different widths");
  }
  LabeledSet out;
  const auto cols = first.size() > 0 ? first.features.cols() : second.features.cols();
  out.features.resize(first.features.rows() + second.features.rows(), cols);
  if (first.size() > 0) out.features.topRows(first.features.rows()) = first.features;
  if (second.size() > 0) out.features.bottomRows(second.features.rows()) = second.features;
  out.labels = first.labels;
  out.labels.insert(out.labels.end(), second.labels.begin(), second.labels.end());
  out.ids = first.ids;
  out.ids.insert(out.ids.end(), second.ids.begin(), second.ids.end());
  return out;
}

LabeledSet make_labeled_set(Eigen::MatrixXd features, Label label, std::vector<std::string> ids) {
  if (static_cast<std::size_t>(features.rows()) != ids.size()) {
    throw Error(ErrorCode::InvalidArgument, "id count does not match feature rows");
  }
  LabeledSet out;
  out.labels.assign(ids.size(), label);
  out.features = std::move(features);
  out.ids = std::move(ids);
  return out;
}

DatasetSplit split_dataset(const LabeledSet& afps, const LabeledSet& non_afps,
                           const SplitSpec& spec) {
  if (spec.train_per_class < 1) {
    throw Error(ErrorCode::InvalidArgument, "train_per_class must be >= 1");
  }
  for (const auto* set : {&afps, &non_afps}) {
    if (set->size() <= spec.train_per_class) {
      throw Error(ErrorCode::InvalidArgument,
                  "class has " + std::to_string(set->size()) + " samples; need more than " +
                      std::to_string(spec.train_per_class) + " to leave a test sample");
    }
  }

  CounterRng afp_rng(spec.seed, streams::kSplitAfp);
  CounterRng non_rng(spec.seed, streams::kSplitNonAfp);
  const auto afp_train = choose(afps.size(), spec.train_per_class, afp_rng);
  const auto non_train = choose(non_afps.size(), spec.train_per_class, non_rng);

  DatasetSplit out;
  out.train = LabeledSet::concat(afps.subset(afp_train), non_afps.subset(non_train));
  out.test = LabeledSet::concat(afps.subset(complement(afps.size(), afp_train)),
                                non_afps.subset(complement(non_afps.size(), non_train)));
  return out;
}

std::vector<std::size_t> default_pc_list() {
  return {10, 20, 30, 40, 50, 60, 70, 80, 90, 100, 150, 175, 200, 225, 250, 300, 400, 500, 600};
}

std::size_t rank_bound(std::size_t n_train, std::size_t dim) noexcept {
  return std::min(n_train, dim);
}

std::vector<Classification> classify_rows(const SrcClassifier& classifier,
                                          const Eigen::MatrixXd& probes, unsigned threads) {
  const auto p = static_cast<Eigen::Index>(classifier.dictionary().rows());
  if (probes.cols() < p) {
    throw Error(ErrorCode::InvalidArgument, "probe matrix narrower than the dictionary");
  }
  std::vector<Classification> out(static_cast<std::size_t>(probes.rows()));
  parallel_for(out.size(), threads, [&](std::size_t i) {
    const Eigen::VectorXd probe = probes.row(static_cast<Eigen::Index>(i)).head(p).transpose();
    out[i] = classifier.classify(probe);
  });
  return out;
}

SweepResult pc_sweep(const LabeledSet& train, const LabeledSet& test,
                     std::span<const std::size_t> pc_list, const SolverDefaults& solver,
                     unsigned threads) {
  if (train.features.cols() != test.features.cols()) {
    throw Error(ErrorCode::InvalidArgument, "train and test feature widths differ");
  }
  if (test.size() == 0) throw Error(ErrorCode::InvalidArgument, "test set is empty");

  SweepResult result;
  const auto bound = rank_bound(train.size(), static_cast<std::size_t>(train.features.cols()));
  const auto usable = usable_components(pc_list, bound, result.warnings);
  if (usable.empty()) return result;

  const PcaModel pca = PcaModel::fit(train.features);
  const Eigen::MatrixXd train_proj = pca.project_rows(train.features, usable.back());
  const Eigen::MatrixXd test_proj = pca.project_rows(test.features, usable.back());

  for (auto k : usable) {
    const auto cols = static_cast<Eigen::Index>(k);
    SrcClassifier classifier(build_dictionary(train_proj.leftCols(cols), train.labels), solver);
    result.rows.push_back(score_row(k, classifier, test_proj, test.labels, threads));
  }
  return result;
}

SweepResult noise_robustness(const LabeledSet& train, const NoiseSpec& noise,
                             std::span<const std::size_t> pc_list, const SolverDefaults& solver,
                             unsigned threads) {
  if (!(noise.sigma >= 0) || !std::isfinite(noise.sigma)) {
    throw Error(ErrorCode::InvalidArgument, "sigma must be finite and >= 0");
  }
  if (noise.sigma == 0.0) return pc_sweep(train, train, pc_list, solver, threads);

  SweepResult result;
  const auto bound = rank_bound(train.size(), static_cast<std::size_t>(train.features.cols()));
  const auto usable = usable_components(pc_list, bound, result.warnings);
  if (usable.empty()) return result;
  const std::size_t kmax = usable.back();

  if (noise.target == NoiseTarget::Raw) {
    Eigen::MatrixXd clean = train.features;
    normalize_rows(clean);
    Eigen::MatrixXd noisy = clean;
    CounterRng rng(noise.seed, streams::kDictionaryNoise);
    add_noise(noisy, noise.sigma, rng);
    const PcaModel pca = PcaModel::fit(noisy);
    const Eigen::MatrixXd dict_proj = pca.project_rows(noisy, kmax);
    const Eigen::MatrixXd probe_proj = pca.project_rows(clean, kmax);
    for (auto k : usable) {
      const auto cols = static_cast<Eigen::Index>(k);
      SrcClassifier classifier(build_dictionary(dict_proj.leftCols(cols), train.labels), solver);
      result.rows.push_back(score_row(k, classifier, probe_proj, train.labels, threads));
    }
    return result;
  }

  const PcaModel pca = PcaModel::fit(train.features);
  const Eigen::MatrixXd proj = pca.project_rows(train.features, kmax);
  for (auto k : usable) {
    Eigen::MatrixXd noisy = proj.leftCols(static_cast<Eigen::Index>(k));
    normalize_rows(noisy);
    CounterRng rng(noise.seed, streams::kDictionaryNoise + (static_cast<std::uint64_t>(k) << 20));
    add_noise(noisy, noise.sigma, rng);
    SrcClassifier classifier(build_dictionary(noisy, train.labels), solver);
    result.rows.push_back(score_row(k, classifier, proj, train.labels, threads));
  }
  return result;
}

}  // namespace afpsrc
