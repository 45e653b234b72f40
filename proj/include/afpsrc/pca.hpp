#pragma once

#include <cstddef>

#include <Eigen/Dense>

#include "afpsrc/error.hpp"

namespace afpsrc {

/// Covariance PCA. Components are the columns of a d x d orthonormal matrix
/// ordered by descending eigenvalue; each column's largest-magnitude entry is
/// positive so that fits are reproducible.
class PcaModel {
 public:
  /// Fits on the rows of `samples` (n x d, n >= 2). The covariance uses the
  /// n - 1 denominator; features are centered but not rescaled.
  static PcaModel fit(const Eigen::MatrixXd& samples);

  /// Reassembles a model from stored parts; validates shapes.
  PcaModel(Eigen::VectorXd mean, Eigen::MatrixXd components, Eigen::VectorXd eigenvalues);

  std::size_t dim() const noexcept { return static_cast<std::size_t>(mean_.size()); }
  const Eigen::VectorXd& mean() const noexcept { return mean_; }
  const Eigen::MatrixXd& components() const noexcept { return components_; }
  const Eigen::VectorXd& eigenvalues() const noexcept { return eigenvalues_; }

  /// Coordinates of (x - mean) on the first k components. Entry j is computed
  /// the same way for every k, so project(x, k) is a prefix of project(x, d).
  Eigen::VectorXd project(const Eigen::Ref<const Eigen::VectorXd>& x, std::size_t k) const;

  /// Row-wise projection of an n x d matrix to n x k.
  Eigen::MatrixXd project_rows(const Eigen::MatrixXd& samples, std::size_t k) const;

  /// mean + sum_j coords[j] * component_j for the first coords.size() components.
  Eigen::VectorXd reconstruct(const Eigen::Ref<const Eigen::VectorXd>& coords) const;

 private:
  Eigen::VectorXd mean_;
  Eigen::MatrixXd components_;
  Eigen::VectorXd eigenvalues_;
};

}  // namespace afpsrc
