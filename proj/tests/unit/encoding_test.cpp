#include "afpsrc/encoding.hpp"

#include <cmath>
#include <sstream>

#include <gtest/gtest.h>

#include "support/synthetic.hpp"

using namespace afpsrc;

namespace {

std::vector<Residue> seq(std::string_view letters) {
  return make_record("s", letters).sequence;
}

std::size_t idx(char c) { return *residue_index(c); }
std::size_t pair(char a, char b) { return kAlphabetSize * idx(a) + idx(b); }

}  // namespace

TEST(Aac, SingleLetter) {
  const auto fv = aac(seq("AAAA"));
  EXPECT_EQ(fv.values.size(), 20);
  EXPECT_DOUBLE_EQ(fv.values[idx('A')], 1.0);
  EXPECT_DOUBLE_EQ(fv.values.sum(), 1.0);
}

TEST(Aac, UniformComposition) {
  const auto fv = aac(seq("ACDEFGHIKLMNPQRSTVWY"));
  for (Eigen::Index i = 0; i < 20; ++i) EXPECT_DOUBLE_EQ(fv.values[i], 0.05);
}

TEST(Aac, TwoLetters) {
  const auto fv = aac(seq("AC"));
  EXPECT_DOUBLE_EQ(fv.values[idx('A')], 0.5);
  EXPECT_DOUBLE_EQ(fv.values[idx('C')], 0.5);
  EXPECT_DOUBLE_EQ(fv.values.cwiseAbs().sum(), 1.0);
}

TEST(Aac, EmptyIsError) { EXPECT_THROW(aac({}), Error); }

TEST(Dpc, Examples) {
  auto fv = dpc(seq("AA"));
  EXPECT_EQ(fv.values.size(), 400);
  EXPECT_DOUBLE_EQ(fv.values[pair('A', 'A')], 1.0);

  fv = dpc(seq("ACA"));
  EXPECT_DOUBLE_EQ(fv.values[pair('A', 'C')], 0.5);
  EXPECT_DOUBLE_EQ(fv.values[pair('C', 'A')], 0.5);
  EXPECT_DOUBLE_EQ(fv.values.sum(), 1.0);

  fv = dpc(seq("ACDC"));
  EXPECT_DOUBLE_EQ(fv.values[pair('A', 'C')], 1.0 / 3);
  EXPECT_DOUBLE_EQ(fv.values[pair('C', 'D')], 1.0 / 3);
  EXPECT_DOUBLE_EQ(fv.values[pair('D', 'C')], 1.0 / 3);
  EXPECT_NEAR(fv.values.sum(), 1.0, 1e-15);
}

TEST(Dpc, TooShort) { EXPECT_THROW(dpc(seq("A")), Error); }

TEST(Seg2, EvenSplit) {
  const auto fv = seg2_features(seq("AAAACCCC"));
  ASSERT_EQ(fv.values.size(), 840);
  EXPECT_DOUBLE_EQ(fv.values[idx('A')], 1.0);
  EXPECT_DOUBLE_EQ(fv.values[20 + pair('A', 'A')], 1.0);
  EXPECT_DOUBLE_EQ(fv.values[420 + idx('C')], 1.0);
  EXPECT_DOUBLE_EQ(fv.values[440 + pair('C', 'C')], 1.0);
  EXPECT_DOUBLE_EQ(fv.values.sum(), 4.0);
}

TEST(Seg2, OddLengthGivesFirstHalfTheExtraResidue) {
  const auto fv = seg2_features(seq("AAACC"));
  EXPECT_DOUBLE_EQ(fv.values[idx('A')], 1.0);            // seg1 = AAA
  EXPECT_DOUBLE_EQ(fv.values[20 + pair('A', 'A')], 1.0);
  EXPECT_DOUBLE_EQ(fv.values[420 + idx('C')], 1.0);      // seg2 = CC
  EXPECT_DOUBLE_EQ(fv.values[440 + pair('C', 'C')], 1.0);
}

TEST(Seg2, MinimumLength) {
  EXPECT_THROW(seg2_features(seq("ACD")), Error);
  EXPECT_NO_THROW(seg2_features(seq("ACDE")));
}

TEST(EncodeBatch, ShapesAndOrder) {
  std::vector<ProteinRecord> recs = {make_record("a", "ACDE"), make_record("b", "GGHH")};
  const auto m = encode_batch(recs, EncodingKind::Aac);
  EXPECT_EQ(m.rows(), 2);
  EXPECT_EQ(m.cols(), 20);
  EXPECT_DOUBLE_EQ(m(1, idx('G')), 0.5);

  EXPECT_EQ(encode_batch({}, EncodingKind::Dpc).rows(), 0);
  EXPECT_EQ(encode_batch({}, EncodingKind::Dpc).cols(), 400);

  std::vector<ProteinRecord> same = {make_record("x", "MKVLA"), make_record("y", "MKVLA")};
  const auto s = encode_batch(same, EncodingKind::Seg2);
  EXPECT_EQ(s.row(0), s.row(1));
}

TEST(EncodeBatch, ErrorNamesRecord) {
  std::vector<ProteinRecord> recs = {make_record("ok", "ACDEF"), make_record("short1", "ACD")};
  try {
    encode_batch(recs, EncodingKind::Seg2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Encoding);
    EXPECT_NE(std::string(e.what()).find("short1"), std::string::npos);
  }
}

TEST(Encoding, PermutationSensitivity) {
  EXPECT_EQ(aac(seq("AACC")).values, aac(seq("ACAC")).values);
  EXPECT_NE(dpc(seq("AACC")).values, dpc(seq("ACAC")).values);
}

TEST(Encoding, FeatureNamesAndCsv) {
  const auto names = feature_names(EncodingKind::Seg2);
  ASSERT_EQ(names.size(), 840u);
  EXPECT_EQ(names[0], "S1_AAC_A");
  EXPECT_EQ(names[20], "S1_DPC_AA");
  EXPECT_EQ(names[21], "S1_DPC_AC");
  EXPECT_EQ(names[420], "S2_AAC_A");
  EXPECT_EQ(names[839], "S2_DPC_YY");
  EXPECT_EQ(feature_names(EncodingKind::Dpc)[1], "DPC_AC");

  std::vector<ProteinRecord> recs = {make_record("p", "AC")};
  std::ostringstream out;
  write_feature_csv(out, recs, encode_batch(recs, EncodingKind::Aac), EncodingKind::Aac);
  EXPECT_EQ(out.str().substr(0, 14), "id,AAC_A,AAC_C");
  EXPECT_NE(out.str().find("\np,0.5,0.5,0,"), std::string::npos);
}

// Properties over random sequences: block sums and integer-count recovery.
TEST(EncodingProperty, BlocksSumToOneAndCountsAreIntegers) {
  CounterRng rng(11, 5);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto len = 4 + rng.below(300);
    const auto s = seq(synth::random_letters(len, rng));
    const auto a = aac(s).values;
    const auto d = dpc(s).values;
    const auto g = seg2_features(s).values;
    EXPECT_NEAR(a.sum(), 1.0, 1e-12);
    EXPECT_NEAR(d.sum(), 1.0, 1e-12);
    for (int b = 0; b < 2; ++b) {
      EXPECT_NEAR(g.segment(420 * b, 20).sum(), 1.0, 1e-12);
      EXPECT_NEAR(g.segment(420 * b + 20, 400).sum(), 1.0, 1e-12);
    }
    EXPECT_GE(g.minCoeff(), 0.0);
    const Eigen::VectorXd ac = a * static_cast<double>(len);
    const Eigen::VectorXd dc = d * static_cast<double>(len - 1);
    EXPECT_LT((ac - ac.array().round().matrix()).cwiseAbs().maxCoeff(), 1e-9);
    EXPECT_LT((dc - dc.array().round().matrix()).cwiseAbs().maxCoeff(), 1e-9);
  }
}
