#include "afpsrc/classifier.hpp"

#include <cmath>
#include <cstring>

#include <gtest/gtest.h>

#include "support/synthetic.hpp"

using namespace afpsrc;

namespace {

const std::vector<Label> kTwoTwo = {Label::Afp, Label::Afp, Label::NonAfp, Label::NonAfp};

}  // namespace

TEST(BuildDictionary, LayoutAndNormalization) {
  Eigen::MatrixXd samples(4, 2);
  samples << 0, 2,   //
      3, 4,          //
      1, 0,          //
      5, 0;
  const std::vector<Label> labels = {Label::NonAfp, Label::Afp, Label::Afp, Label::NonAfp};
  const auto dict = build_dictionary(samples, labels);
  ASSERT_EQ(dict.size(), 4u);
  EXPECT_EQ(dict.labels, kTwoTwo);
  // Class 1 in original order: (3,4) then (1,0).
  EXPECT_NEAR(dict.columns(0, 0), 0.6, 1e-15);
  EXPECT_NEAR(dict.columns(1, 0), 0.8, 1e-15);
  EXPECT_EQ(dict.columns(0, 1), 1.0);
  // Class 2: (0,2) then (5,0).
  EXPECT_EQ(dict.columns(1, 2), 1.0);
  EXPECT_EQ(dict.columns(0, 3), 1.0);
  EXPECT_NO_THROW(dict.validate());
}

TEST(BuildDictionary, DuplicatesAreKept) {
  Eigen::MatrixXd samples(4, 2);
  samples << 1, 1, 1, 1, 0, 1, 0, 1;
  const auto dict = build_dictionary(samples, kTwoTwo);
  EXPECT_EQ(dict.columns.col(0), dict.columns.col(1));
  EXPECT_EQ(dict.size(), 4u);
}

TEST(BuildDictionary, Errors) {
  Eigen::MatrixXd samples(2, 2);
  samples << 1, 0, 0, 0;
  EXPECT_THROW(build_dictionary(samples, std::vector<Label>{Label::Afp, Label::NonAfp}), Error);
  samples << 1, 0, 0, 1;
  EXPECT_THROW(build_dictionary(samples, std::vector<Label>{Label::Afp, Label::Afp}), Error);
  EXPECT_THROW(build_dictionary(samples, std::vector<Label>{Label::Afp}), Error);
}

TEST(DeltaMask, Examples) {
  Dictionary dict;
  dict.columns = Eigen::MatrixXd::Identity(4, 4);
  dict.labels = kTwoTwo;
  Eigen::Vector4d w(1, 2, 3, 4);
  EXPECT_EQ(delta_mask(w, dict, Label::Afp), Eigen::Vector4d(1, 2, 0, 0));
  EXPECT_EQ(delta_mask(w, dict, Label::NonAfp), Eigen::Vector4d(0, 0, 3, 4));
  EXPECT_EQ(delta_mask(w, dict, Label::Afp) + delta_mask(w, dict, Label::NonAfp), w);
  EXPECT_THROW(delta_mask(w, dict, static_cast<Label>(3)), Error);
  EXPECT_THROW(delta_mask(Eigen::Vector3d(1, 2, 3), dict, Label::Afp), Error);
}

TEST(Classify, SelfReconstruction) {
  CounterRng rng(40, 1);
  const auto samples = synth::gaussian_matrix(8, 6, rng);
  const std::vector<Label> labels = {Label::Afp, Label::Afp, Label::Afp, Label::Afp,
                                     Label::NonAfp, Label::NonAfp, Label::NonAfp, Label::NonAfp};
  SrcClassifier clf(build_dictionary(samples, labels), {});
  for (Eigen::Index i = 0; i < 8; ++i) {
    const auto c = clf.classify(samples.row(i).transpose());
    const auto truth = labels[static_cast<std::size_t>(i)];
    const auto own = static_cast<std::size_t>(label_index(truth) - 1);
    EXPECT_EQ(c.label, truth);
    EXPECT_LT(c.residuals[own], 1e-3);
    EXPECT_LT(c.residuals[own], c.residuals[1 - own]);
  }
}

TEST(Classify, MirrorTieGoesToClassOne) {
  Dictionary dict;
  dict.columns = Eigen::MatrixXd::Identity(2, 2);
  dict.labels = {Label::Afp, Label::NonAfp};
  SrcClassifier clf(dict, {});
  const auto c = clf.classify(Eigen::Vector2d(1, 1));
  EXPECT_NEAR(c.residuals[0], c.residuals[1], 1e-9);
  EXPECT_EQ(c.label, Label::Afp);
  EXPECT_NEAR(c.scores[0], c.scores[1], 1e-12);
}

TEST(Classify, ZeroProbeIsError) {
  Dictionary dict;
  dict.columns = Eigen::MatrixXd::Identity(2, 2);
  dict.labels = {Label::Afp, Label::NonAfp};
  SrcClassifier clf(dict, {});
  EXPECT_THROW(clf.classify(Eigen::Vector2d(0, 0)), Error);
  EXPECT_THROW(clf.classify(Eigen::Vector3d(1, 0, 0)), Error);
}

TEST(Classify, GaussianClustersAgainstNearestCentroidOracle) {
  const auto data = synth::gaussian_clusters(20, 100, 42);
  const double oracle = synth::nearest_centroid_accuracy(data.train, data.train_labels,
                                                           data.probes, data.probe_labels);
  ASSERT_GE(oracle, 0.95) << "synthetic data is not separable";

  SrcClassifier clf(build_dictionary(data.train, data.train_labels), {});
  std::size_t correct = 0;
  for (Eigen::Index i = 0; i < data.probes.rows(); ++i) {
    correct += clf.classify(data.probes.row(i).transpose()).label ==
               data.probe_labels[static_cast<std::size_t>(i)];
  }
  EXPECT_GE(static_cast<double>(correct) / static_cast<double>(data.probes.rows()), 0.95);
}

TEST(ClassifyProperty, IdentitiesAndInvariances) {
  const auto data = synth::gaussian_clusters(15, 20, 7);
  const auto dict = build_dictionary(data.train, data.train_labels);
  SrcClassifier clf(dict, {});

  // Class-1 columns reversed: same residuals.
  Dictionary permuted = dict;
  const auto s1 = static_cast<Eigen::Index>(dict.count(Label::Afp));
  for (Eigen::Index j = 0; j < s1; ++j) permuted.columns.col(j) = dict.columns.col(s1 - 1 - j);
  SrcClassifier clf_perm(permuted, {});

  for (Eigen::Index i = 0; i < data.probes.rows(); ++i) {
    const Eigen::VectorXd x = data.probes.row(i).transpose();
    const auto c = clf.classify(x);

    const Eigen::VectorXd split = dict.columns * delta_mask(c.omega, dict, Label::Afp) +
                                  dict.columns * delta_mask(c.omega, dict, Label::NonAfp);
    EXPECT_LT((split - dict.columns * c.omega).cwiseAbs().maxCoeff(), 1e-9);

    EXPECT_EQ(clf.classify(3.5 * x).label, c.label);

    const auto again = clf.classify(x);
    EXPECT_EQ(std::memcmp(again.omega.data(), c.omega.data(),
                          sizeof(double) * static_cast<std::size_t>(c.omega.size())),
              0);
    EXPECT_EQ(again.residuals, c.residuals);

    const auto cp = clf_perm.classify(x);
    EXPECT_NEAR(cp.residuals[0], c.residuals[0], 1e-8);
    EXPECT_NEAR(cp.residuals[1], c.residuals[1], 1e-8);
  }
}

TEST(SrcModel, FitShapesAndClassify) {
  CounterRng rng(50, 1);
  std::vector<ProteinRecord> recs;
  std::vector<Label> labels;
  for (auto cls : {Label::Afp, Label::NonAfp}) {
    for (auto& r : synth::synthetic_proteins(cls, 5, 3, cls == Label::Afp ? "a" : "n")) {
      recs.push_back(r);
      labels.push_back(cls);
    }
  }
  const auto features = encode_batch(recs, EncodingKind::Seg2);
  const auto model = SrcModel::fit(features, labels, EncodingKind::Seg2, 4, {});
  EXPECT_EQ(model.components(), 4u);
  EXPECT_EQ(model.classifier().dictionary().size(), 10u);
  EXPECT_EQ(model.classifier().dictionary().rows(), 4u);
  for (std::size_t i = 0; i < recs.size(); ++i) {
    const auto c = model.classify(features.row(static_cast<Eigen::Index>(i)).transpose());
    EXPECT_EQ(c.label, labels[i]);
  }
  EXPECT_THROW(SrcModel::fit(features, labels, EncodingKind::Aac, 4, {}), Error);
}
