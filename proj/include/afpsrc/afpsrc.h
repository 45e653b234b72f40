/*
 * afpsrc: sparse-representation classification of protein sequences.
 *
 * Plain C interface to the shared library. Objects are opaque handles that
 * the caller releases with the matching *_destroy function. Every fallible
 * call returns an afpsrc_status; on failure a message describing the error is
 * available from afpsrc_last_error() on the calling thread until the next
 * failing call on that thread.
 */
#ifndef AFPSRC_AFPSRC_H
#define AFPSRC_AFPSRC_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(AFPSRC_BUILDING_LIBRARY)
#    define AFPSRC_API __declspec(dllexport)
#  else
#    define AFPSRC_API __declspec(dllimport)
#  endif
#else
#  define AFPSRC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum afpsrc_status {
  AFPSRC_OK = 0,
  AFPSRC_ERR_INVALID_ARGUMENT = 1,
  AFPSRC_ERR_PARSE = 2,        /* malformed FASTA or config */
  AFPSRC_ERR_ENCODING = 3,     /* sequence too short for the encoding */
  AFPSRC_ERR_IO = 4,
  AFPSRC_ERR_FORMAT = 5,       /* not a model file, corrupt or inconsistent */
  AFPSRC_ERR_VERSION = 6,      /* model file written by an unknown format version */
  AFPSRC_ERR_NUMERIC = 7,
  AFPSRC_ERR_RECORDS = 8,      /* output written, but some records failed */
  AFPSRC_ERR_INTERNAL = 99
} afpsrc_status;

typedef struct afpsrc_config afpsrc_config;
typedef struct afpsrc_model afpsrc_model;

typedef struct afpsrc_model_info {
  uint32_t encoding;       /* 0 = aac, 1 = dpc, 2 = seg2 */
  uint32_t feature_dim;    /* 20, 400 or 840 */
  uint32_t components;     /* retained principal components (dictionary rows) */
  uint32_t columns;        /* dictionary columns */
  uint32_t class1_columns;
  uint32_t class2_columns;
  double lambda;           /* relative penalty */
  double tol;
  uint64_t max_iter;
  uint64_t hash;           /* FNV-1a of the serialized model */
} afpsrc_model_info;

typedef struct afpsrc_classification {
  int label;               /* 1 = AFP, 2 = non-AFP */
  double residual[2];
  double score[2];
  uint64_t iterations;
  int converged;
} afpsrc_classification;

typedef struct afpsrc_metrics {
  double sensitivity;
  double specificity;
  double accuracy;
  double mcc;
  double balanced_accuracy;
  double youden;
  double f1;
  double precision;
} afpsrc_metrics;

AFPSRC_API const char* afpsrc_version(void);
AFPSRC_API const char* afpsrc_status_string(afpsrc_status status);
AFPSRC_API const char* afpsrc_last_error(void);

/* Configuration. Keys match the CLI flags (dashes or underscores). */
AFPSRC_API afpsrc_status afpsrc_config_create(afpsrc_config** out);
AFPSRC_API void afpsrc_config_destroy(afpsrc_config* config);
AFPSRC_API afpsrc_status afpsrc_config_set(afpsrc_config* config, const char* key,
                                           const char* value);
AFPSRC_API afpsrc_status afpsrc_config_load_file(afpsrc_config* config, const char* path);
/* Copies the value (NUL-terminated) into buf; *needed receives the size
 * including the terminator. buf may be NULL to query the size. */
AFPSRC_API afpsrc_status afpsrc_config_get(const afpsrc_config* config, const char* key,
                                           char* buf, size_t buf_size, size_t* needed);

/* Models. */
AFPSRC_API afpsrc_status afpsrc_model_fit(const afpsrc_config* config, afpsrc_model** out);
AFPSRC_API afpsrc_status afpsrc_model_load(const char* path, afpsrc_model** out);
AFPSRC_API afpsrc_status afpsrc_model_save(const afpsrc_model* model, const char* path);
AFPSRC_API void afpsrc_model_destroy(afpsrc_model* model);
AFPSRC_API afpsrc_status afpsrc_model_info_get(const afpsrc_model* model,
                                               afpsrc_model_info* out);

/* Classifies one sequence given as amino-acid letters. */
AFPSRC_API afpsrc_status afpsrc_model_classify_sequence(const afpsrc_model* model,
                                                        const char* residues,
                                                        afpsrc_classification* out);

/* Commands. `output` is a file path; NULL, "" or "-" writes to stdout.
 * afpsrc_predict returns AFPSRC_ERR_RECORDS when some records could not be
 * classified; the CSV is still complete and *failed holds the count. */
AFPSRC_API afpsrc_status afpsrc_predict(const afpsrc_model* model, const afpsrc_config* config,
                                        const char* output, size_t* records, size_t* failed);
AFPSRC_API afpsrc_status afpsrc_evaluate(const afpsrc_model* model, const afpsrc_config* config,
                                         const char* output, afpsrc_metrics* metrics);
AFPSRC_API afpsrc_status afpsrc_sweep(const afpsrc_config* config, const char* output,
                                      size_t* rows, size_t* skipped);
AFPSRC_API afpsrc_status afpsrc_noise(const afpsrc_config* config, const char* output,
                                      size_t* rows, size_t* skipped);

/* Metrics from confusion counts (class 1 positive). */
AFPSRC_API afpsrc_status afpsrc_metrics_compute(uint64_t tp, uint64_t tn, uint64_t fp,
                                                uint64_t fn, afpsrc_metrics* out);

#ifdef __cplusplus
}
#endif

#endif /* AFPSRC_AFPSRC_H */
