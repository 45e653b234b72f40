#include "afpsrc/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace afpsrc {
namespace {

constexpr double kExactResidual = 1e-8;

void validate(const BpProblem& problem) {
  const auto& T = problem.dictionary;
  if (T.rows() < 1 || T.cols() < 1) {
    throw Error(ErrorCode::InvalidArgument, "dictionary must be non-empty");
  }
  if (problem.probe.size() != T.rows()) {
    throw Error(ErrorCode::InvalidArgument,
                "probe has dimension " + std::to_string(problem.probe.size()) +
                    ", dictionary has " + std::to_string(T.rows()) + " rows");
  }
  if (!std::isfinite(problem.lambda) || problem.lambda < 0) {
    throw Error(ErrorCode::InvalidArgument, "lambda must be finite and >= 0");
  }
  if (!(problem.tol > 0) || !std::isfinite(problem.tol)) {
    throw Error(ErrorCode::InvalidArgument, "tol must be positive");
  }
  if (problem.max_iter < 1) throw Error(ErrorCode::InvalidArgument, "max_iter must be >= 1");
  if (!T.allFinite() || !problem.probe.allFinite()) {
    throw Error(ErrorCode::Numeric, "non-finite values in sparse coding input");
  }
}

double soft_threshold(double v, double threshold) {
  if (v > threshold) return v - threshold;
  if (v < -threshold) return v + threshold;
  return 0.0;
}

}  // namespace

double lipschitz_constant(const Eigen::Ref<const Eigen::MatrixXd>& dictionary) {
  const Eigen::MatrixXd gram = dictionary.rows() <= dictionary.cols()
                                   ? Eigen::MatrixXd(dictionary * dictionary.transpose())
                                   : Eigen::MatrixXd(dictionary.transpose() * dictionary);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::Numeric, "failed to estimate dictionary spectral norm");
  }
  return std::max(0.0, solver.eigenvalues().maxCoeff());
}

double bp_objective(const BpProblem& problem, const Eigen::Ref<const Eigen::VectorXd>& omega) {
  return 0.5 * (problem.dictionary * omega - problem.probe).squaredNorm() +
         problem.lambda * omega.lpNorm<1>();
}

namespace {

// Continuation ratio between successive penalties.
constexpr double kContinuation = 0.1;

struct FistaState {
  Eigen::VectorXd x;   // current accepted iterate
  Eigen::VectorXd Tx;  // T * x
};

// Monotone FISTA with function-value restart at a fixed penalty, warm-started
// from `state`. Consumes at most `budget` iterations; returns true once the
// relative change of x drops below tol.
bool fista(const Eigen::Ref<const Eigen::MatrixXd>& T, const Eigen::Ref<const Eigen::VectorXd>& t,
           double lambda, double tol, double step, std::size_t budget, FistaState& state,
           std::size_t& iterations, std::vector<double>* trace) {
  const Eigen::Index m = T.cols();
  const double threshold = lambda * step;
  Eigen::VectorXd& x = state.x;
  Eigen::VectorXd& Tx = state.Tx;
  Eigen::VectorXd y = x;
  Eigen::VectorXd Ty = Tx;
  Eigen::VectorXd z(m);
  Eigen::VectorXd Tz(T.rows());
  Eigen::VectorXd grad(m);
  double fx = 0.5 * (Tx - t).squaredNorm() + lambda * x.lpNorm<1>();
  double momentum = 1.0;
  bool restarted = true;

  for (std::size_t it = 0; it < budget; ++it) {
    ++iterations;
    grad.noalias() = T.transpose() * (Ty - t);
    for (Eigen::Index i = 0; i < m; ++i) z[i] = soft_threshold(y[i] - step * grad[i], threshold);
    Tz.noalias() = T * z;
    const double fz = 0.5 * (Tz - t).squaredNorm() + lambda * z.lpNorm<1>();

    if (fz <= fx) {
      const double change = (z - x).norm();
      const double next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * momentum * momentum));
      const double beta = (momentum - 1.0) / next;
      y = z + beta * (z - x);
      Ty = Tz + beta * (Tz - Tx);
      x.swap(z);
      Tx.swap(Tz);
      fx = fz;
      momentum = next;
      restarted = false;
      if (trace) trace->push_back(fx);
      if (change <= tol * x.norm() || change == 0.0) return true;
    } else {
      if (trace) trace->push_back(fx);
      // A plain proximal step from x failed to decrease the objective: x is
      // stationary up to rounding.
      if (restarted) return true;
      y = x;
      Ty = Tx;
      momentum = 1.0;
      restarted = true;
    }
  }
  return false;
}

}  // namespace

SparseSolution solve_bp(const BpProblem& problem, const SolveOptions& options) {
  validate(problem);
  const auto& T = problem.dictionary;
  const auto& t = problem.probe;

  SparseSolution sol;
  FistaState state{Eigen::VectorXd::Zero(T.cols()), Eigen::VectorXd::Zero(T.rows())};

  const double lipschitz = options.lipschitz > 0 ? options.lipschitz : lipschitz_constant(T);
  const double lambda_max = (T.transpose() * t).cwiseAbs().maxCoeff();
  if (lipschitz <= 0 || problem.lambda >= lambda_max) {
    // omega = 0 satisfies the optimality conditions exactly.
    sol.omega = std::move(state.x);
    sol.residual_norm = t.norm();
    sol.converged = true;
    return sol;
  }
  const double step = 1.0 / lipschitz;

  // Warm-started path of decreasing penalties. Each stage starts where the
  // previous one stopped, so the objective at the current penalty never
  // increases, and the final stage only refines an identified support.
  double lambda = lambda_max * kContinuation;
  while (lambda > problem.lambda) {
    const std::size_t budget = problem.max_iter - sol.iterations;
    if (!fista(T, t, lambda, problem.tol, step, budget, state, sol.iterations,
               options.objective_trace)) {
      break;
    }
    lambda *= kContinuation;
  }
  if (sol.iterations < problem.max_iter) {
    sol.converged = fista(T, t, problem.lambda, problem.tol, step,
                          problem.max_iter - sol.iterations, state, sol.iterations,
                          options.objective_trace);
  }

  sol.omega = std::move(state.x);
  sol.residual_norm = (T * sol.omega - t).norm();
  return sol;
}

SparseSolution brute_force_l0(const Eigen::Ref<const Eigen::MatrixXd>& dictionary,
                              const Eigen::Ref<const Eigen::VectorXd>& probe,
                              std::size_t max_k) {
  const auto m = static_cast<std::size_t>(dictionary.cols());
  if (m < 1 || m > 20) throw Error(ErrorCode::InvalidArgument, "brute_force_l0 needs 1 <= m <= 20");
  if (max_k < 1 || max_k > 4) {
    throw Error(ErrorCode::InvalidArgument, "brute_force_l0 needs 1 <= max_k <= 4");
  }
  if (probe.size() != dictionary.rows()) {
    throw Error(ErrorCode::InvalidArgument, "probe dimension does not match dictionary");
  }
  if (!dictionary.allFinite() || !probe.allFinite()) {
    throw Error(ErrorCode::Numeric, "non-finite values in sparse coding input");
  }

  SparseSolution best;
  best.omega = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(m));
  best.residual_norm = probe.norm();
  if (best.residual_norm < kExactResidual) {
    best.converged = true;
    return best;
  }

  std::vector<std::size_t> support;
  std::size_t evaluated = 0;
  const auto evaluate = [&](SparseSolution& exact) {
    Eigen::MatrixXd sub(dictionary.rows(), static_cast<Eigen::Index>(support.size()));
    for (std::size_t j = 0; j < support.size(); ++j) {
      sub.col(static_cast<Eigen::Index>(j)) = dictionary.col(static_cast<Eigen::Index>(support[j]));
    }
    const Eigen::VectorXd coef = sub.colPivHouseholderQr().solve(probe);
    const double residual = (sub * coef - probe).norm();
    ++evaluated;
    auto assign = [&](SparseSolution& target) {
      target.omega.setZero();
      for (std::size_t j = 0; j < support.size(); ++j) {
        target.omega[static_cast<Eigen::Index>(support[j])] = coef[static_cast<Eigen::Index>(j)];
      }
      target.residual_norm = residual;
    };
    if (residual < best.residual_norm) assign(best);
    if (residual < kExactResidual && residual < exact.residual_norm) {
      assign(exact);
      exact.converged = true;
    }
  };

  for (std::size_t k = 1; k <= std::min(max_k, m); ++k) {
    SparseSolution exact;
    exact.omega = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(m));
    exact.residual_norm = kExactResidual;

    // Lexicographic enumeration of k-subsets of {0..m-1}.
    support.resize(k);
    std::iota(support.begin(), support.end(), std::size_t{0});
    while (true) {
      evaluate(exact);
      std::size_t pos = k;
      while (pos > 0 && support[pos - 1] == m - k + pos - 1) --pos;
      if (pos == 0) break;
      ++support[pos - 1];
      for (std::size_t j = pos; j < k; ++j) support[j] = support[j - 1] + 1;
    }
    if (exact.converged) {
      exact.iterations = evaluated;
      return exact;
    }
  }
  best.iterations = evaluated;
  best.converged = false;
  return best;
}

std::vector<std::size_t> support_of(const Eigen::Ref<const Eigen::VectorXd>& omega,
                                    double threshold) {
  std::vector<std::size_t> out;
  for (Eigen::Index i = 0; i < omega.size(); ++i) {
    if (std::abs(omega[i]) > threshold) out.push_back(static_cast<std::size_t>(i));
  }
  return out;
}

std::vector<std::size_t> dominant_support(const Eigen::Ref<const Eigen::VectorXd>& omega,
                                          std::size_t count) {
  std::vector<std::size_t> idx(static_cast<std::size_t>(omega.size()));
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  count = std::min(count, idx.size());
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return std::abs(omega[static_cast<Eigen::Index>(a)]) >
           std::abs(omega[static_cast<Eigen::Index>(b)]);
  });
  idx.resize(count);
  std::sort(idx.begin(), idx.end());
  return idx;
}

}  // namespace afpsrc
