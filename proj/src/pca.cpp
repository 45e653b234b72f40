#include "afpsrc/pca.hpp"

#include <string>

namespace afpsrc {

PcaModel PcaModel::fit(const Eigen::MatrixXd& samples) {
  const Eigen::Index n = samples.rows();
  const Eigen::Index d = samples.cols();
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "PCA needs at least 2 samples");
  if (d < 1) throw Error(ErrorCode::InvalidArgument, "PCA needs at least 1 feature");
  if (!samples.allFinite()) throw Error(ErrorCode::Numeric, "PCA input has non-finite entries");

  Eigen::VectorXd mean = samples.colwise().mean().transpose();
  const Eigen::MatrixXd centered = samples.rowwise() - mean.transpose();
  Eigen::MatrixXd cov = (centered.transpose() * centered) / static_cast<double>(n - 1);
  // Exact symmetry keeps the eigensolver deterministic under reordering of the products.
  cov = 0.5 * (cov + cov.transpose()).eval();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::Numeric, "covariance eigendecomposition failed");
  }

  // Eigen returns ascending order; reverse to descending.
  Eigen::MatrixXd components(d, d);
  Eigen::VectorXd eigenvalues(d);
  for (Eigen::Index j = 0; j < d; ++j) {
    const Eigen::Index src = d - 1 - j;
    eigenvalues[j] = std::max(0.0, solver.eigenvalues()[src]);
    components.col(j) = solver.eigenvectors().col(src);

    Eigen::Index pivot = 0;
    components.col(j).cwiseAbs().maxCoeff(&pivot);
    if (components(pivot, j) < 0) components.col(j) = -components.col(j);
  }
  return PcaModel(std::move(mean), std::move(components), std::move(eigenvalues));
}

PcaModel::PcaModel(Eigen::VectorXd mean, Eigen::MatrixXd components, Eigen::VectorXd eigenvalues)
    : mean_(std::move(mean)),
      components_(std::move(components)),
      eigenvalues_(std::move(eigenvalues)) {
  const auto d = mean_.size();
  if (d < 1 || components_.rows() != d || components_.cols() != d || eigenvalues_.size() != d) {
    throw Error(ErrorCode::InvalidArgument, "inconsistent PCA model dimensions");
  }
}

Eigen::VectorXd PcaModel::project(const Eigen::Ref<const Eigen::VectorXd>& x,
                                  std::size_t k) const {
  if (static_cast<std::size_t>(x.size()) != dim()) {
    throw Error(ErrorCode::InvalidArgument, "projection input has dimension " +
                                                std::to_string(x.size()) + ", model expects " +
                                                std::to_string(dim()));
  }
  if (k < 1 || k > dim()) {
    throw Error(ErrorCode::InvalidArgument,
                "component count " + std::to_string(k) + " outside [1, " +
                    std::to_string(dim()) + "]");
  }
  const Eigen::VectorXd centered = x - mean_;
  Eigen::VectorXd out(static_cast<Eigen::Index>(k));
  for (Eigen::Index j = 0; j < out.size(); ++j) out[j] = components_.col(j).dot(centered);
  return out;
}

Eigen::MatrixXd PcaModel::project_rows(const Eigen::MatrixXd& samples, std::size_t k) const {
  Eigen::MatrixXd out(samples.rows(), static_cast<Eigen::Index>(k));
  for (Eigen::Index i = 0; i < samples.rows(); ++i) {
    out.row(i) = project(samples.row(i).transpose(), k).transpose();
  }
  return out;
}

Eigen::VectorXd PcaModel::reconstruct(const Eigen::Ref<const Eigen::VectorXd>& coords) const {
  if (coords.size() > static_cast<Eigen::Index>(dim())) {
    throw Error(ErrorCode::InvalidArgument, "too many coordinates for reconstruction");
  }
  return mean_ + components_.leftCols(coords.size()) * coords;
}

}  // namespace afpsrc
