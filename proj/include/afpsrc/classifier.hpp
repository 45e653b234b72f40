#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "afpsrc/encoding.hpp"
#include "afpsrc/pca.hpp"
#include "afpsrc/seqio.hpp"
#include "afpsrc/sparse.hpp"

namespace afpsrc {

/// Samples whose norm is at or below this are rejected as zero vectors.
inline constexpr double kZeroNorm = 1e-12;

/// Residual gap below which the two classes count as tied (class 1 wins).
inline constexpr double kTieTolerance = 1e-9;

/// Over-complete dictionary: unit-norm columns, class 1 first, then class 2.
struct Dictionary {
  Eigen::MatrixXd columns;  // p x m
  std::vector<Label> labels;

  std::size_t rows() const noexcept { return static_cast<std::size_t>(columns.rows()); }
  std::size_t size() const noexcept { return labels.size(); }
  std::size_t count(Label label) const noexcept;

  /// Checks the layout and normalization invariants; throws on violation.
  void validate() const;
};

/// Builds a dictionary from row samples (n x p). Class order is stable within
/// each class; duplicates are kept.
Dictionary build_dictionary(const Eigen::MatrixXd& samples, std::span<const Label> labels);

/// Copy of omega with every entry outside class `label` zeroed.
Eigen::VectorXd delta_mask(const Eigen::Ref<const Eigen::VectorXd>& omega,
                           const Dictionary& dictionary, Label label);

struct SolverDefaults {
  /// Penalty as a fraction of |T^T t|_inf for the normalized probe t.
  double lambda_rel = 1e-4;
  double tol = kDefaultTol;
  std::size_t max_iter = kDefaultMaxIter;

  void validate() const;
};

struct Classification {
  Label label = Label::Afp;
  std::array<double, 2> residuals{};  // r1, r2
  std::array<double, 2> scores{};     // l1 mass of omega per class
  Eigen::VectorXd omega;
  std::size_t iterations = 0;
  bool converged = false;
};

/// Delta-rule classifier over a fixed dictionary.
class SrcClassifier {
 public:
  SrcClassifier(Dictionary dictionary, SolverDefaults solver);

  /// Classifies a probe already in dictionary space (length p). The probe is
  /// scaled to unit norm before sparse coding.
  Classification classify(const Eigen::Ref<const Eigen::VectorXd>& probe) const;

  const Dictionary& dictionary() const noexcept { return dictionary_; }
  const SolverDefaults& solver() const noexcept { return solver_; }
  double lipschitz() const noexcept { return lipschitz_; }

 private:
  Dictionary dictionary_;
  SolverDefaults solver_;
  double lipschitz_;
};

/// Everything needed for inference: PCA, dictionary, solver settings, encoding.
/// Building one is the whole of "training".
class SrcModel {
 public:
  SrcModel(EncodingKind encoding, PcaModel pca, SrcClassifier classifier);

  /// Fits PCA on `features` (n x feature_dim(encoding)) and builds the
  /// dictionary from the first k components.
  static SrcModel fit(const Eigen::MatrixXd& features, std::span<const Label> labels,
                      EncodingKind encoding, std::size_t k, SolverDefaults solver);

  Classification classify(const Eigen::Ref<const Eigen::VectorXd>& features) const;

  EncodingKind encoding() const noexcept { return encoding_; }
  std::size_t components() const noexcept { return classifier_.dictionary().rows(); }
  const PcaModel& pca() const noexcept { return pca_; }
  const SrcClassifier& classifier() const noexcept { return classifier_; }

 private:
  EncodingKind encoding_;
  PcaModel pca_;
  SrcClassifier classifier_;
};

}  // namespace afpsrc
