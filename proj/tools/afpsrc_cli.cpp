// afpsrc command-line front end. Uses only the C API of libafpsrc.

#include <cstdio>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "afpsrc/afpsrc.h"

namespace {

using ConfigPtr = std::unique_ptr<afpsrc_config, decltype(&afpsrc_config_destroy)>;
using ModelPtr = std::unique_ptr<afpsrc_model, decltype(&afpsrc_model_destroy)>;

int report(afpsrc_status status, const char* context) {
  std::fprintf(stderr, "afpsrc %s: %s: %s\n", context, afpsrc_status_string(status),
               afpsrc_last_error());
  return 1;
}

std::string config_value(const afpsrc_config* cfg, const char* key) {
  std::size_t needed = 0;
  if (afpsrc_config_get(cfg, key, nullptr, 0, &needed) != AFPSRC_OK) return {};
  std::string out(needed, '\0');
  afpsrc_config_get(cfg, key, out.data(), out.size(), &needed);
  out.resize(needed - 1);
  return out;
}

const char* output_arg(const std::string& path) { return path.empty() ? nullptr : path.c_str(); }

struct Flags {
  std::optional<std::string> config_file;
  std::map<std::string, std::string> values;  // config key -> value given on the command line
  bool drop_ambiguous = false;
  bool noise_split = false;
};

void add_shared_flags(CLI::App& cmd, Flags& flags) {
  struct Spec {
    const char* flag;
    const char* key;
    const char* help;
  };
  static const std::vector<Spec> specs = {
      {"--encoding", "encoding", "Feature encoding: aac, dpc or seg2"},
      {"--pcs", "pcs", "Principal components kept in the model"},
      {"--lambda", "lambda", "l1 penalty relative to |T^T t|_inf"},
      {"--tol", "tol", "Relative coefficient-change stopping tolerance"},
      {"--max-iter", "max_iter", "Solver iteration limit"},
      {"--seed", "seed", "Seed for splits and noise"},
      {"--train-per-class", "train_per_class", "Training samples drawn per class"},
      {"--pc-list", "pc_list", "Comma-separated component counts, or 'default'"},
      {"--sigma", "sigma", "Standard deviation of dictionary noise"},
      {"--noise-target", "noise_target", "Where noise is added: projected or raw"},
      {"--threads", "threads", "Worker threads (0 = all cores)"},
      {"--afp", "afp", "FASTA file of AFP (class 1) sequences"},
      {"--non-afp", "non_afp", "FASTA file of non-AFP (class 2) sequences"},
      {"--model", "model", "Model file"},
      {"--input", "input", "FASTA file of sequences to classify"},
      {"--output,-o", "output", "Output path ('-' for stdout)"},
  };
  for (const auto& spec : specs) {
    const std::string key = spec.key;
    cmd.add_option_function<std::string>(
        spec.flag, [&flags, key](const std::string& v) { flags.values[key] = v; }, spec.help);
  }
  cmd.add_option("--config", flags.config_file, "key=value configuration file");
  cmd.add_flag("--drop-ambiguous", flags.drop_ambiguous,
               "Remove non-canonical residues instead of failing");
  cmd.add_flag("--noise-split", flags.noise_split,
               "Run the noise study on the training half of a split");
}

ConfigPtr build_config(const Flags& flags) {
  afpsrc_config* raw = nullptr;
  if (afpsrc_config_create(&raw) != AFPSRC_OK) return {nullptr, &afpsrc_config_destroy};
  ConfigPtr cfg(raw, &afpsrc_config_destroy);
  if (flags.config_file) {
    if (auto st = afpsrc_config_load_file(cfg.get(), flags.config_file->c_str()); st != AFPSRC_OK) {
      report(st, "config");
      return {nullptr, &afpsrc_config_destroy};
    }
  }
  auto set = [&](const std::string& key, const std::string& value) {
    if (auto st = afpsrc_config_set(cfg.get(), key.c_str(), value.c_str()); st != AFPSRC_OK) {
      report(st, "config");
      return false;
    }
    return true;
  };
  for (const auto& [key, value] : flags.values) {
    if (!set(key, value)) return {nullptr, &afpsrc_config_destroy};
  }
  if (flags.drop_ambiguous && !set("drop_ambiguous", "true")) return {nullptr, &afpsrc_config_destroy};
  if (flags.noise_split && !set("noise_split", "true")) return {nullptr, &afpsrc_config_destroy};
  return cfg;
}

ModelPtr load_model(const afpsrc_config* cfg) {
  const auto path = config_value(cfg, "model");
  if (path.empty()) {
    std::fprintf(stderr, "afpsrc: --model is required\n");
    return {nullptr, &afpsrc_model_destroy};
  }
  afpsrc_model* raw = nullptr;
  if (auto st = afpsrc_model_load(path.c_str(), &raw); st != AFPSRC_OK) {
    report(st, "load model");
    return {nullptr, &afpsrc_model_destroy};
  }
  return {raw, &afpsrc_model_destroy};
}

int cmd_fit(const afpsrc_config* cfg) {
  const auto path = config_value(cfg, "model");
  if (path.empty()) {
    std::fprintf(stderr, "afpsrc fit: --model (output path) is required\n");
    return 1;
  }
  afpsrc_model* raw = nullptr;
  if (auto st = afpsrc_model_fit(cfg, &raw); st != AFPSRC_OK) return report(st, "fit");
  ModelPtr model(raw, &afpsrc_model_destroy);
  if (auto st = afpsrc_model_save(model.get(), path.c_str()); st != AFPSRC_OK) {
    return report(st, "fit");
  }
  afpsrc_model_info info{};
  afpsrc_model_info_get(model.get(), &info);
  static const char* kinds[] = {"aac", "dpc", "seg2"};
  std::printf("fitted %s: n_afp=%u n_non_afp=%u encoding=%s dim=%u pcs=%u dictionary=%ux%u hash=%016llx\n",
              path.c_str(), info.class1_columns, info.class2_columns,
              kinds[info.encoding < 3 ? info.encoding : 0], info.feature_dim, info.components,
              info.components, info.columns, static_cast<unsigned long long>(info.hash));
  return 0;
}

int cmd_predict(const afpsrc_config* cfg) {
  auto model = load_model(cfg);
  if (!model) return 1;
  const auto output = config_value(cfg, "output");
  std::size_t records = 0, failed = 0;
  const auto st = afpsrc_predict(model.get(), cfg, output_arg(output), &records, &failed);
  if (st == AFPSRC_ERR_RECORDS) {
    std::fprintf(stderr, "afpsrc predict: %zu of %zu records failed:\n%s\n", failed, records,
                 afpsrc_last_error());
    return 1;
  }
  if (st != AFPSRC_OK) return report(st, "predict");
  return 0;
}

int cmd_evaluate(const afpsrc_config* cfg) {
  auto model = load_model(cfg);
  if (!model) return 1;
  const auto output = config_value(cfg, "output");
  afpsrc_metrics metrics{};
  if (auto st = afpsrc_evaluate(model.get(), cfg, output_arg(output), &metrics); st != AFPSRC_OK) {
    return report(st, "evaluate");
  }
  return 0;
}

int cmd_experiment(const afpsrc_config* cfg, bool noise) {
  const auto output = config_value(cfg, "output");
  std::size_t rows = 0, skipped = 0;
  const auto st = noise ? afpsrc_noise(cfg, output_arg(output), &rows, &skipped)
                        : afpsrc_sweep(cfg, output_arg(output), &rows, &skipped);
  if (st != AFPSRC_OK) return report(st, noise ? "noise" : "sweep");
  if (skipped > 0) {
    std::fprintf(stderr, "afpsrc %s: %zu component counts skipped (above rank bound)\n",
                 noise ? "noise" : "sweep", skipped);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sparse-representation classification of antifreeze proteins"};
  app.set_version_flag("--version", afpsrc_version());
  app.require_subcommand(1);

  Flags flags;
  auto* fit = app.add_subcommand("fit", "Build a model from AFP and non-AFP FASTA files");
  auto* predict = app.add_subcommand("predict", "Classify the sequences of a FASTA file");
  auto* evaluate = app.add_subcommand("evaluate", "Score a model on labeled FASTA files");
  auto* sweep = app.add_subcommand("sweep", "Split the data and sweep principal-component counts");
  auto* noise = app.add_subcommand("noise", "Self-classification against a noisy dictionary");
  for (auto* cmd : {fit, predict, evaluate, sweep, noise}) add_shared_flags(*cmd, flags);

  CLI11_PARSE(app, argc, argv);

  auto cfg = build_config(flags);
  if (!cfg) return 1;

  if (fit->parsed()) return cmd_fit(cfg.get());
  if (predict->parsed()) return cmd_predict(cfg.get());
  if (evaluate->parsed()) return cmd_evaluate(cfg.get());
  if (sweep->parsed()) return cmd_experiment(cfg.get(), false);
  return cmd_experiment(cfg.get(), true);
}
