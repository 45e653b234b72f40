#include "afpsrc/pca.hpp"

#include <cmath>
#include <cstring>

#include <gtest/gtest.h>

#include "support/synthetic.hpp"

using namespace afpsrc;

TEST(Pca, TwoPointDataset) {
  Eigen::MatrixXd X(2, 2);
  X << 0, 0, 2, 2;
  const auto model = PcaModel::fit(X);
  EXPECT_NEAR(model.mean()[0], 1.0, 1e-15);
  EXPECT_NEAR(model.mean()[1], 1.0, 1e-15);
  EXPECT_NEAR(model.components()(0, 0), 1 / std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(model.components()(1, 0), 1 / std::sqrt(2.0), 1e-12);
  // Sample covariance with denominator n-1 = 1: [[2,2],[2,2]], eigenvalues 4 and 0.
  EXPECT_NEAR(model.eigenvalues()[0], 4.0, 1e-12);
  EXPECT_NEAR(model.eigenvalues()[1], 0.0, 1e-12);

  Eigen::Vector2d x(2, 2);
  EXPECT_NEAR(model.project(x, 1)[0], std::sqrt(2.0), 1e-12);
}

TEST(Pca, IdenticalRowsProjectToZero) {
  Eigen::MatrixXd X(4, 3);
  X.rowwise() = Eigen::RowVector3d(0.2, 0.5, 0.3);
  const auto model = PcaModel::fit(X);
  EXPECT_EQ(model.eigenvalues().cwiseAbs().maxCoeff(), 0.0);
  for (std::size_t k = 1; k <= 3; ++k) {
    EXPECT_EQ(model.project(X.row(0).transpose(), k).cwiseAbs().maxCoeff(), 0.0);
  }
}

TEST(Pca, ProjectingTheMeanGivesZero) {
  CounterRng rng(3, 1);
  const auto X = synth::gaussian_matrix(8, 5, rng);
  const auto model = PcaModel::fit(X);
  for (std::size_t k = 1; k <= 5; ++k) {
    EXPECT_EQ(model.project(model.mean(), k).cwiseAbs().maxCoeff(), 0.0);
  }
}

TEST(Pca, FullReconstruction10x6) {
  CounterRng rng(2024, 1);
  const auto X = synth::gaussian_matrix(10, 6, rng);
  const auto model = PcaModel::fit(X);
  for (Eigen::Index i = 0; i < X.rows(); ++i) {
    const Eigen::VectorXd z = model.project(X.row(i).transpose(), 6);
    // Independent reconstruction: mean + sum_j z_j * component_j.
    Eigen::VectorXd rebuilt = model.mean();
    for (Eigen::Index j = 0; j < 6; ++j) rebuilt += z[j] * model.components().col(j);
    EXPECT_LT((rebuilt - X.row(i).transpose()).cwiseAbs().maxCoeff(), 1e-8);
    EXPECT_LT((model.reconstruct(z) - X.row(i).transpose()).cwiseAbs().maxCoeff(), 1e-8);
  }
}

TEST(Pca, EigenvaluesMatchSingularValuesOfCenteredData) {
  CounterRng rng(5, 1);
  const auto X = synth::gaussian_matrix(12, 7, rng);
  const auto model = PcaModel::fit(X);
  const Eigen::MatrixXd centered = X.rowwise() - X.colwise().mean();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(centered);
  const Eigen::VectorXd sv = svd.singularValues();
  for (Eigen::Index j = 0; j < sv.size(); ++j) {
    EXPECT_NEAR(model.eigenvalues()[j], sv[j] * sv[j] / 11.0, 1e-10);
  }
}

TEST(Pca, RankDeficientWhenFewerSamplesThanFeatures) {
  CounterRng rng(6, 1);
  const auto X = synth::gaussian_matrix(4, 9, rng);
  const auto model = PcaModel::fit(X);
  for (Eigen::Index j = 3; j < 9; ++j) EXPECT_LT(model.eigenvalues()[j], 1e-10);
  EXPECT_GT(model.eigenvalues()[2], 1e-3);
}

TEST(Pca, SignAndOrthonormality) {
  CounterRng rng(8, 1);
  const auto X = synth::gaussian_matrix(20, 6, rng);
  const auto model = PcaModel::fit(X);
  const auto& C = model.components();
  EXPECT_LT((C.transpose() * C - Eigen::MatrixXd::Identity(6, 6)).cwiseAbs().maxCoeff(), 1e-8);
  for (Eigen::Index j = 0; j < 6; ++j) {
    Eigen::Index pivot = 0;
    C.col(j).cwiseAbs().maxCoeff(&pivot);
    EXPECT_GT(C(pivot, j), 0.0);
  }
}

TEST(Pca, Errors) {
  EXPECT_THROW(PcaModel::fit(Eigen::MatrixXd::Zero(1, 3)), Error);
  Eigen::MatrixXd bad = Eigen::MatrixXd::Zero(3, 2);
  bad(1, 1) = std::nan("");
  EXPECT_THROW(PcaModel::fit(bad), Error);

  const auto model = PcaModel::fit(Eigen::MatrixXd::Identity(3, 3));
  EXPECT_THROW(model.project(Eigen::VectorXd::Zero(3), 0), Error);
  EXPECT_THROW(model.project(Eigen::VectorXd::Zero(3), 4), Error);
  EXPECT_THROW(model.project(Eigen::VectorXd::Zero(2), 1), Error);
}

TEST(Pca, ProjectionIsPrefixConsistent) {
  CounterRng rng(10, 1);
  const auto X = synth::gaussian_matrix(15, 8, rng);
  const auto model = PcaModel::fit(X);
  const Eigen::VectorXd full = model.project(X.row(3).transpose(), 8);
  for (std::size_t k = 1; k <= 8; ++k) {
    const Eigen::VectorXd part = model.project(X.row(3).transpose(), k);
    EXPECT_EQ(std::memcmp(part.data(), full.data(), k * sizeof(double)), 0);
  }
}

// Properties over random shapes: variance ordering, trace identity,
// isometry at full rank and bit-identical refits.
TEST(PcaProperty, RandomMatrices) {
  CounterRng rng(77, 1);
  for (int trial = 0; trial < 50; ++trial) {
    const auto n = static_cast<Eigen::Index>(2 + rng.below(29));
    const auto d = static_cast<Eigen::Index>(1 + rng.below(30));
    const auto X = synth::gaussian_matrix(n, d, rng);
    const auto model = PcaModel::fit(X);
    const auto again = PcaModel::fit(X);
    EXPECT_EQ(std::memcmp(model.components().data(), again.components().data(),
                          sizeof(double) * static_cast<std::size_t>(d * d)),
              0);

    const Eigen::MatrixXd centered = X.rowwise() - X.colwise().mean();
    const double trace = centered.squaredNorm() / static_cast<double>(n - 1);
    EXPECT_NEAR(model.eigenvalues().sum(), trace, 1e-8 * std::max(1.0, trace));

    const auto Z = model.project_rows(X, static_cast<std::size_t>(d));
    for (Eigen::Index j = 0; j + 1 < d; ++j) {
      EXPECT_GE(model.eigenvalues()[j], model.eigenvalues()[j + 1]);
      const double vj = Z.col(j).squaredNorm() / static_cast<double>(n - 1);
      const double vk = Z.col(j + 1).squaredNorm() / static_cast<double>(n - 1);
      EXPECT_GE(vj + 1e-10, vk);
    }
    for (Eigen::Index i = 0; i < n; ++i) {
      EXPECT_LT((model.reconstruct(Z.row(i).transpose()) - X.row(i).transpose()).cwiseAbs().maxCoeff(),
                1e-8);
      if (i > 0) {
        const double dx = (X.row(i) - X.row(i - 1)).norm();
        const double dz = (Z.row(i) - Z.row(i - 1)).norm();
        EXPECT_NEAR(dx, dz, 1e-8);
      }
    }
  }
}
