#include "afpsrc/afpsrc.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <unistd.h>

#include <gtest/gtest.h>

namespace fs = std::filesystem;

namespace {

const fs::path kFixtures = AFPSRC_FIXTURE_DIR;

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("afpsrc_capi_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

struct ConfigHandle {
  afpsrc_config* ptr = nullptr;
  ConfigHandle() { EXPECT_EQ(afpsrc_config_create(&ptr), AFPSRC_OK); }
  ~ConfigHandle() { afpsrc_config_destroy(ptr); }
  void set(const char* key, const std::string& value) {
    ASSERT_EQ(afpsrc_config_set(ptr, key, value.c_str()), AFPSRC_OK) << afpsrc_last_error();
  }
};

struct ModelHandle {
  afpsrc_model* ptr = nullptr;
  ~ModelHandle() { afpsrc_model_destroy(ptr); }
};

void small_fit_config(ConfigHandle& cfg) {
  cfg.set("afp", (kFixtures / "afp_small.fasta").string());
  cfg.set("non_afp", (kFixtures / "non_afp_small.fasta").string());
  cfg.set("pcs", "4");
}

}  // namespace

TEST(CApi, VersionAndStatusStrings) {
  EXPECT_STREQ(afpsrc_version(), "1.0.0");
  EXPECT_STREQ(afpsrc_status_string(AFPSRC_OK), "ok");
  EXPECT_NE(std::string(afpsrc_status_string(AFPSRC_ERR_FORMAT)), "");
  EXPECT_NE(std::string(afpsrc_status_string(static_cast<afpsrc_status>(1234))), "");
}

TEST(CApi, NullArguments) {
  EXPECT_EQ(afpsrc_config_create(nullptr), AFPSRC_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(afpsrc_model_fit(nullptr, nullptr), AFPSRC_ERR_INVALID_ARGUMENT);
  EXPECT_NE(std::string(afpsrc_last_error()), "");
  afpsrc_config_destroy(nullptr);
  afpsrc_model_destroy(nullptr);
}

TEST(CApi, ConfigGetSet) {
  ConfigHandle cfg;
  cfg.set("pcs", "42");
  std::size_t needed = 0;
  ASSERT_EQ(afpsrc_config_get(cfg.ptr, "pcs", nullptr, 0, &needed), AFPSRC_OK);
  EXPECT_EQ(needed, 3u);
  char buf[8];
  ASSERT_EQ(afpsrc_config_get(cfg.ptr, "pcs", buf, sizeof buf, &needed), AFPSRC_OK);
  EXPECT_STREQ(buf, "42");
  EXPECT_EQ(afpsrc_config_get(cfg.ptr, "pcs", buf, 2, &needed), AFPSRC_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(afpsrc_config_set(cfg.ptr, "bogus", "1"), AFPSRC_ERR_INVALID_ARGUMENT);
  EXPECT_NE(std::string(afpsrc_last_error()).find("bogus"), std::string::npos);
}

TEST(CApi, FitSaveLoadClassify) {
  ConfigHandle cfg;
  small_fit_config(cfg);
  ModelHandle model;
  ASSERT_EQ(afpsrc_model_fit(cfg.ptr, &model.ptr), AFPSRC_OK) << afpsrc_last_error();

  afpsrc_model_info info{};
  ASSERT_EQ(afpsrc_model_info_get(model.ptr, &info), AFPSRC_OK);
  EXPECT_EQ(info.encoding, 2u);
  EXPECT_EQ(info.feature_dim, 840u);
  EXPECT_EQ(info.components, 4u);
  EXPECT_EQ(info.columns, 10u);
  EXPECT_EQ(info.class1_columns, 5u);
  EXPECT_EQ(info.class2_columns, 5u);

  const auto path = scratch("model.bin");
  ASSERT_EQ(afpsrc_model_save(model.ptr, path.string().c_str()), AFPSRC_OK);
  ModelHandle loaded;
  ASSERT_EQ(afpsrc_model_load(path.string().c_str(), &loaded.ptr), AFPSRC_OK);
  afpsrc_model_info info2{};
  afpsrc_model_info_get(loaded.ptr, &info2);
  EXPECT_EQ(info2.hash, info.hash);

  afpsrc_classification c{};
  ASSERT_EQ(afpsrc_model_classify_sequence(loaded.ptr, "MKVLAAGICWSTTHEDNFLAK", &c), AFPSRC_OK);
  EXPECT_TRUE(c.label == 1 || c.label == 2);
  EXPECT_EQ(afpsrc_model_classify_sequence(loaded.ptr, "MKV", &c), AFPSRC_ERR_ENCODING);
  EXPECT_EQ(afpsrc_model_classify_sequence(loaded.ptr, "MKVLAB", &c), AFPSRC_ERR_PARSE);
}

TEST(CApi, LoadRejectsForeignFile) {
  const auto path = scratch("foreign.bin");
  std::ofstream(path) << "hello, this is not a model";
  ModelHandle model;
  EXPECT_EQ(afpsrc_model_load(path.string().c_str(), &model.ptr), AFPSRC_ERR_FORMAT);
  EXPECT_EQ(model.ptr, nullptr);
  EXPECT_NE(std::string(afpsrc_last_error()).find("not a model file"), std::string::npos);
  EXPECT_EQ(afpsrc_model_load(scratch("absent.bin").string().c_str(), &model.ptr),
            AFPSRC_ERR_IO);
}

TEST(CApi, PredictAndEvaluate) {
  ConfigHandle cfg;
  small_fit_config(cfg);
  ModelHandle model;
  ASSERT_EQ(afpsrc_model_fit(cfg.ptr, &model.ptr), AFPSRC_OK) << afpsrc_last_error();

  cfg.set("input", (kFixtures / "afp_small.fasta").string());
  const auto out = scratch("pred.csv");
  std::size_t records = 0, failed = 0;
  ASSERT_EQ(afpsrc_predict(model.ptr, cfg.ptr, out.string().c_str(), &records, &failed),
            AFPSRC_OK)
      << afpsrc_last_error();
  EXPECT_EQ(records, 5u);
  EXPECT_EQ(failed, 0u);
  const auto csv = slurp(out);
  EXPECT_EQ(csv.rfind("id,label,r1,r2,score1,score2,converged\n", 0), 0u);

  afpsrc_metrics m{};
  const auto eval = scratch("eval.csv");
  ASSERT_EQ(afpsrc_evaluate(model.ptr, cfg.ptr, eval.string().c_str(), &m), AFPSRC_OK)
      << afpsrc_last_error();
  EXPECT_EQ(m.accuracy, 1.0);
}

TEST(CApi, MetricsCompute) {
  afpsrc_metrics m{};
  ASSERT_EQ(afpsrc_metrics_compute(165, 7319, 1874, 16, &m), AFPSRC_OK);
  EXPECT_NEAR(m.sensitivity, 165.0 / 181.0, 1e-15);
  EXPECT_NEAR(m.specificity, 7319.0 / 9193.0, 1e-15);
  EXPECT_EQ(afpsrc_metrics_compute(0, 0, 0, 0, &m), AFPSRC_ERR_INVALID_ARGUMENT);
}
