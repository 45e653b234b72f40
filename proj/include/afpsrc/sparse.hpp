#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "afpsrc/error.hpp"

namespace afpsrc {

inline constexpr double kDefaultTol = 1e-6;
inline constexpr std::size_t kDefaultMaxIter = 5000;

/// Penalized basis-pursuit instance: minimize 0.5 |T w - t|^2 + lambda |w|_1.
/// Columns of the dictionary are expected to be normalized by the caller.
struct BpProblem {
  Eigen::Ref<const Eigen::MatrixXd> dictionary;
  Eigen::Ref<const Eigen::VectorXd> probe;
  double lambda = 0.0;
  double tol = kDefaultTol;
  std::size_t max_iter = kDefaultMaxIter;
};

struct SparseSolution {
  Eigen::VectorXd omega;
  std::size_t iterations = 0;
  double residual_norm = 0.0;
  bool converged = false;
};

struct SolveOptions {
  /// Step-size bound |T|_2^2. Computed from the dictionary when <= 0; pass a
  /// cached value when solving many probes against one dictionary.
  double lipschitz = 0.0;
  /// When set, receives the penalized objective after every iteration.
  std::vector<double>* objective_trace = nullptr;
};

/// Largest eigenvalue of T^T T.
double lipschitz_constant(const Eigen::Ref<const Eigen::MatrixXd>& dictionary);

double bp_objective(const BpProblem& problem, const Eigen::Ref<const Eigen::VectorXd>& omega);

/// Monotone accelerated proximal gradient (FISTA with function-value restart)
/// from omega = 0. Stops once the relative change of omega between accepted
/// iterates falls below tol; hitting max_iter is reported via `converged`.
SparseSolution solve_bp(const BpProblem& problem, const SolveOptions& options = {});

/// Exhaustive search over supports of size 1..max_k (m <= 20, max_k <= 4).
/// Returns the smallest support whose least-squares residual is below 1e-8;
/// within a cardinality the smallest residual wins, then the lexicographically
/// first support. If nothing fits, the overall best is returned unconverged.
SparseSolution brute_force_l0(const Eigen::Ref<const Eigen::MatrixXd>& dictionary,
                              const Eigen::Ref<const Eigen::VectorXd>& probe, std::size_t max_k);

/// Indices of nonzero entries, ascending.
std::vector<std::size_t> support_of(const Eigen::Ref<const Eigen::VectorXd>& omega,
                                    double threshold = 0.0);

/// Indices of the `count` largest-magnitude entries, ascending. Ties go to the
/// lower index.
std::vector<std::size_t> dominant_support(const Eigen::Ref<const Eigen::VectorXd>& omega,
                                          std::size_t count);

}  // namespace afpsrc
