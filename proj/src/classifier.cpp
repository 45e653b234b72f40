#include "afpsrc/classifier.hpp"

#include <cmath>
#include <string>

namespace afpsrc {

std::size_t Dictionary::count(Label label) const noexcept {
  std::size_t n = 0;
  for (auto l : labels) n += (l == label);
  return n;
}

void Dictionary::validate() const {
  if (static_cast<std::size_t>(columns.cols()) != labels.size()) {
    throw Error(ErrorCode::InvalidArgument, "dictionary label count does not match columns");
  }
  if (columns.rows() < 1) throw Error(ErrorCode::InvalidArgument, "dictionary has no rows");
  if (count(Label::Afp) < 1 || count(Label::NonAfp) < 1) {
    throw Error(ErrorCode::InvalidArgument, "dictionary needs at least one column per class");
  }
  for (std::size_t j = 0; j < labels.size(); ++j) {
    if (labels[j] != Label::Afp && labels[j] != Label::NonAfp) {
      throw Error(ErrorCode::InvalidArgument, "dictionary label outside {1, 2}");
    }
    if (j > 0 && labels[j] < labels[j - 1]) {
      throw Error(ErrorCode::InvalidArgument, "dictionary columns are not grouped by class");
    }
    const double norm = columns.col(static_cast<Eigen::Index>(j)).norm();
    if (!(std::abs(norm - 1.0) <= 1e-9)) {
      throw Error(ErrorCode::InvalidArgument,
                  "dictionary column " + std::to_string(j) + " is not unit norm");
    }
  }
}

Dictionary build_dictionary(const Eigen::MatrixXd& samples, std::span<const Label> labels) {
  if (static_cast<std::size_t>(samples.rows()) != labels.size()) {
    throw Error(ErrorCode::InvalidArgument, "sample and label counts differ");
  }
  if (!samples.allFinite()) throw Error(ErrorCode::Numeric, "non-finite dictionary sample");

  Dictionary dict;
  dict.columns.resize(samples.cols(), samples.rows());
  dict.labels.reserve(labels.size());
  Eigen::Index col = 0;
  for (Label cls : {Label::Afp, Label::NonAfp}) {
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (labels[i] != Label::Afp && labels[i] != Label::NonAfp) {
        throw Error(ErrorCode::InvalidArgument, "sample label outside {1, 2}");
      }
      if (labels[i] != cls) continue;
      const auto row = samples.row(static_cast<Eigen::Index>(i));
      const double norm = row.norm();
      if (norm <= kZeroNorm) {
        throw Error(ErrorCode::Numeric, "training sample " + std::to_string(i) + " has zero norm");
      }
      dict.columns.col(col++) = row.transpose() / norm;
      dict.labels.push_back(cls);
    }
  }
  if (dict.count(Label::Afp) == 0 || dict.count(Label::NonAfp) == 0) {
    throw Error(ErrorCode::InvalidArgument, "each class needs at least one training sample");
  }
  return dict;
}

Eigen::VectorXd delta_mask(const Eigen::Ref<const Eigen::VectorXd>& omega,
                           const Dictionary& dictionary, Label label) {
  if (label != Label::Afp && label != Label::NonAfp) {
    throw Error(ErrorCode::InvalidArgument, "class must be 1 or 2");
  }
  if (static_cast<std::size_t>(omega.size()) != dictionary.size()) {
    throw Error(ErrorCode::InvalidArgument, "coefficient vector length does not match dictionary");
  }
  Eigen::VectorXd out = Eigen::VectorXd::Zero(omega.size());
  for (Eigen::Index j = 0; j < omega.size(); ++j) {
    if (dictionary.labels[static_cast<std::size_t>(j)] == label) out[j] = omega[j];
  }
  return out;
}

void SolverDefaults::validate() const {
  if (!std::isfinite(lambda_rel) || lambda_rel < 0) {
    throw Error(ErrorCode::InvalidArgument, "lambda must be finite and >= 0");
  }
  if (!std::isfinite(tol) || !(tol > 0)) throw Error(ErrorCode::InvalidArgument, "tol must be > 0");
  if (max_iter < 1) throw Error(ErrorCode::InvalidArgument, "max_iter must be >= 1");
}

SrcClassifier::SrcClassifier(Dictionary dictionary, SolverDefaults solver)
    : dictionary_(std::move(dictionary)), solver_(solver) {
  dictionary_.validate();
  solver_.validate();
  lipschitz_ = lipschitz_constant(dictionary_.columns);
}

Classification SrcClassifier::classify(const Eigen::Ref<const Eigen::VectorXd>& probe) const {
  if (static_cast<std::size_t>(probe.size()) != dictionary_.rows()) {
    throw Error(ErrorCode::InvalidArgument, "probe dimension does not match dictionary");
  }
  if (!probe.allFinite()) throw Error(ErrorCode::Numeric, "probe has non-finite entries");
  const double norm = probe.norm();
  if (norm <= kZeroNorm) throw Error(ErrorCode::Numeric, "projected probe has zero norm");
  const Eigen::VectorXd t = probe / norm;

  const double scale = (dictionary_.columns.transpose() * t).cwiseAbs().maxCoeff();
  BpProblem problem{dictionary_.columns, t, solver_.lambda_rel * scale, solver_.tol,
                    solver_.max_iter};
  SolveOptions options;
  options.lipschitz = lipschitz_;
  SparseSolution sol = solve_bp(problem, options);

  Classification out;
  for (Label cls : {Label::Afp, Label::NonAfp}) {
    const auto c = static_cast<std::size_t>(label_index(cls) - 1);
    const Eigen::VectorXd masked = delta_mask(sol.omega, dictionary_, cls);
    out.residuals[c] = (t - dictionary_.columns * masked).norm();
    out.scores[c] = masked.lpNorm<1>();
  }
  out.label = out.residuals[0] <= out.residuals[1] + kTieTolerance ? Label::Afp : Label::NonAfp;
  out.omega = std::move(sol.omega);
  out.iterations = sol.iterations;
  out.converged = sol.converged;
  return out;
}

SrcModel::SrcModel(EncodingKind encoding, PcaModel pca, SrcClassifier classifier)
    : encoding_(encoding), pca_(std::move(pca)), classifier_(std::move(classifier)) {
  if (pca_.dim() != feature_dim(encoding_)) {
    throw Error(ErrorCode::InvalidArgument, "PCA dimension does not match encoding");
  }
  if (classifier_.dictionary().rows() > pca_.dim()) {
    throw Error(ErrorCode::InvalidArgument, "dictionary has more rows than PCA components");
  }
}

SrcModel SrcModel::fit(const Eigen::MatrixXd& features, std::span<const Label> labels,
                       EncodingKind encoding, std::size_t k, SolverDefaults solver) {
  if (static_cast<std::size_t>(features.cols()) != feature_dim(encoding)) {
    throw Error(ErrorCode::InvalidArgument, "feature matrix width does not match encoding");
  }
  PcaModel pca = PcaModel::fit(features);
  Dictionary dict = build_dictionary(pca.project_rows(features, k), labels);
  return SrcModel(encoding, std::move(pca), SrcClassifier(std::move(dict), solver));
}

Classification SrcModel::classify(const Eigen::Ref<const Eigen::VectorXd>& features) const {
  return classifier_.classify(pca_.project(features, components()));
}

}  // namespace afpsrc
