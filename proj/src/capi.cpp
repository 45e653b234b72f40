#include "afpsrc/afpsrc.h"

#include <fstream>
#include <iostream>
#include <new>
#include <sstream>
#include <string>

#include "afpsrc/config.hpp"
#include "afpsrc/metrics.hpp"
#include "afpsrc/model_io.hpp"
#include "afpsrc/pipeline.hpp"

struct afpsrc_config {
  afpsrc::Config value;
};

struct afpsrc_model {
  afpsrc::SrcModel value;
};

namespace {

thread_local std::string g_last_error;

afpsrc_status to_status(afpsrc::ErrorCode code) {
  using afpsrc::ErrorCode;
  switch (code) {
    case ErrorCode::InvalidArgument: return AFPSRC_ERR_INVALID_ARGUMENT;
    case ErrorCode::Parse: return AFPSRC_ERR_PARSE;
    case ErrorCode::Encoding: return AFPSRC_ERR_ENCODING;
    case ErrorCode::Io: return AFPSRC_ERR_IO;
    case ErrorCode::Format: return AFPSRC_ERR_FORMAT;
    case ErrorCode::Version: return AFPSRC_ERR_VERSION;
    case ErrorCode::Numeric: return AFPSRC_ERR_NUMERIC;
  }
  return AFPSRC_ERR_INTERNAL;
}

afpsrc_status fail(afpsrc_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

template <class Fn>
afpsrc_status guarded(Fn&& fn) noexcept {
  try {
    return fn();
  } catch (const afpsrc::Error& e) {
    return fail(to_status(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(AFPSRC_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(AFPSRC_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(AFPSRC_ERR_INTERNAL, "unknown error");
  }
}

bool is_stdout(const char* output) {
  return output == nullptr || output[0] == '\0' || std::string_view(output) == "-";
}

void emit(const char* output, const std::string& text) {
  if (is_stdout(output)) {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream out(output, std::ios::binary | std::ios::trunc);
  if (!out) throw afpsrc::Error(afpsrc::ErrorCode::Io, std::string("cannot write ") + output);
  out << text;
  if (!out) throw afpsrc::Error(afpsrc::ErrorCode::Io, std::string("write failed: ") + output);
}

void copy_metrics(const afpsrc::MetricsReport& r, afpsrc_metrics* out) {
  out->sensitivity = r.sensitivity;
  out->specificity = r.specificity;
  out->accuracy = r.accuracy;
  out->mcc = r.mcc;
  out->balanced_accuracy = r.balanced_accuracy;
  out->youden = r.youden;
  out->f1 = r.f1;
  out->precision = r.precision;
}

#define AFPSRC_REQUIRE(cond, what) \
  if (!(cond)) return fail(AFPSRC_ERR_INVALID_ARGUMENT, what)

}  // namespace

extern "C" {

const char* afpsrc_version(void) { return "1.0.0"; }

const char* afpsrc_status_string(afpsrc_status status) {
  switch (status) {
    case AFPSRC_OK: return "ok";
    case AFPSRC_ERR_INVALID_ARGUMENT: return "invalid argument";
    case AFPSRC_ERR_PARSE: return "parse error";
    case AFPSRC_ERR_ENCODING: return "encoding error";
    case AFPSRC_ERR_IO: return "I/O error";
    case AFPSRC_ERR_FORMAT: return "format error";
    case AFPSRC_ERR_VERSION: return "unsupported version";
    case AFPSRC_ERR_NUMERIC: return "numeric error";
    case AFPSRC_ERR_RECORDS: return "some records failed";
    case AFPSRC_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* afpsrc_last_error(void) { return g_last_error.c_str(); }

afpsrc_status afpsrc_config_create(afpsrc_config** out) {
  AFPSRC_REQUIRE(out, "null output handle");
  return guarded([&] {
    *out = new afpsrc_config{};
    return AFPSRC_OK;
  });
}

void afpsrc_config_destroy(afpsrc_config* config) { delete config; }

afpsrc_status afpsrc_config_set(afpsrc_config* config, const char* key, const char* value) {
  AFPSRC_REQUIRE(config && key && value, "null argument");
  return guarded([&] {
    config->value.set(key, value);
    return AFPSRC_OK;
  });
}

afpsrc_status afpsrc_config_load_file(afpsrc_config* config, const char* path) {
  AFPSRC_REQUIRE(config && path, "null argument");
  return guarded([&] {
    config->value.load_file(path);
    return AFPSRC_OK;
  });
}

afpsrc_status afpsrc_config_get(const afpsrc_config* config, const char* key, char* buf,
                                size_t buf_size, size_t* needed) {
  AFPSRC_REQUIRE(config && key, "null argument");
  return guarded([&] {
    const auto value = config->value.get(key);
    if (needed) *needed = value.size() + 1;
    if (buf) {
      if (buf_size < value.size() + 1) {
        return fail(AFPSRC_ERR_INVALID_ARGUMENT, "buffer too small");
      }
      value.copy(buf, value.size());
      buf[value.size()] = '\0';
    }
    return AFPSRC_OK;
  });
}

afpsrc_status afpsrc_model_fit(const afpsrc_config* config, afpsrc_model** out) {
  AFPSRC_REQUIRE(config && out, "null argument");
  return guarded([&] {
    *out = new afpsrc_model{afpsrc::fit_from_config(config->value)};
    return AFPSRC_OK;
  });
}

afpsrc_status afpsrc_model_load(const char* path, afpsrc_model** out) {
  AFPSRC_REQUIRE(path && out, "null argument");
  return guarded([&] {
    *out = new afpsrc_model{afpsrc::load_model(path)};
    return AFPSRC_OK;
  });
}

afpsrc_status afpsrc_model_save(const afpsrc_model* model, const char* path) {
  AFPSRC_REQUIRE(model && path, "null argument");
  return guarded([&] {
    afpsrc::save_model(model->value, path);
    return AFPSRC_OK;
  });
}

void afpsrc_model_destroy(afpsrc_model* model) { delete model; }

afpsrc_status afpsrc_model_info_get(const afpsrc_model* model, afpsrc_model_info* out) {
  AFPSRC_REQUIRE(model && out, "null argument");
  return guarded([&] {
    const auto& m = model->value;
    const auto& dict = m.classifier().dictionary();
    const auto& solver = m.classifier().solver();
    out->encoding = static_cast<uint32_t>(m.encoding());
    out->feature_dim = static_cast<uint32_t>(afpsrc::feature_dim(m.encoding()));
    out->components = static_cast<uint32_t>(m.components());
    out->columns = static_cast<uint32_t>(dict.size());
    out->class1_columns = static_cast<uint32_t>(dict.count(afpsrc::Label::Afp));
    out->class2_columns = static_cast<uint32_t>(dict.count(afpsrc::Label::NonAfp));
    out->lambda = solver.lambda_rel;
    out->tol = solver.tol;
    out->max_iter = solver.max_iter;
    out->hash = afpsrc::model_hash(m);
    return AFPSRC_OK;
  });
}

afpsrc_status afpsrc_model_classify_sequence(const afpsrc_model* model, const char* residues,
                                             afpsrc_classification* out) {
  AFPSRC_REQUIRE(model && residues && out, "null argument");
  return guarded([&] {
    const auto record = afpsrc::make_record("query", residues);
    const auto features = afpsrc::encode(record.sequence, model->value.encoding());
    const auto c = model->value.classify(features.values);
    out->label = afpsrc::label_index(c.label);
    out->residual[0] = c.residuals[0];
    out->residual[1] = c.residuals[1];
    out->score[0] = c.scores[0];
    out->score[1] = c.scores[1];
    out->iterations = c.iterations;
    out->converged = c.converged ? 1 : 0;
    return AFPSRC_OK;
  });
}

afpsrc_status afpsrc_predict(const afpsrc_model* model, const afpsrc_config* config,
                             const char* output, size_t* records, size_t* failed) {
  AFPSRC_REQUIRE(model && config, "null argument");
  return guarded([&] {
    std::ostringstream csv;
    const auto outcome = afpsrc::predict_to_csv(model->value, config->value, csv);
    emit(output, csv.str());
    if (records) *records = outcome.records;
    if (failed) *failed = outcome.errors.size();
    if (!outcome.errors.empty()) {
      std::string joined;
      for (const auto& e : outcome.errors) joined += (joined.empty() ? "" : "\n") + e;
      return fail(AFPSRC_ERR_RECORDS, std::move(joined));
    }
    return AFPSRC_OK;
  });
}

afpsrc_status afpsrc_evaluate(const afpsrc_model* model, const afpsrc_config* config,
                              const char* output, afpsrc_metrics* metrics) {
  AFPSRC_REQUIRE(model && config, "null argument");
  return guarded([&] {
    std::ostringstream csv;
    const auto row = afpsrc::evaluate_to_csv(model->value, config->value, csv);
    emit(output, csv.str());
    if (metrics) copy_metrics(row.metrics, metrics);
    return AFPSRC_OK;
  });
}

afpsrc_status afpsrc_sweep(const afpsrc_config* config, const char* output, size_t* rows,
                           size_t* skipped) {
  AFPSRC_REQUIRE(config, "null argument");
  return guarded([&] {
    std::ostringstream csv;
    const auto result = afpsrc::sweep_to_csv(config->value, csv);
    emit(output, csv.str());
    if (rows) *rows = result.rows.size();
    if (skipped) *skipped = result.warnings.size();
    return AFPSRC_OK;
  });
}

afpsrc_status afpsrc_noise(const afpsrc_config* config, const char* output, size_t* rows,
                           size_t* skipped) {
  AFPSRC_REQUIRE(config, "null argument");
  return guarded([&] {
    std::ostringstream csv;
    const auto result = afpsrc::noise_to_csv(config->value, csv);
    emit(output, csv.str());
    if (rows) *rows = result.rows.size();
    if (skipped) *skipped = result.warnings.size();
    return AFPSRC_OK;
  });
}

afpsrc_status afpsrc_metrics_compute(uint64_t tp, uint64_t tn, uint64_t fp, uint64_t fn,
                                     afpsrc_metrics* out) {
  AFPSRC_REQUIRE(out, "null argument");
  return guarded([&] {
    copy_metrics(afpsrc::compute_metrics({tp, tn, fp, fn}), out);
    return AFPSRC_OK;
  });
}

}  // extern "C"
