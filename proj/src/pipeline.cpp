#include "afpsrc/pipeline.hpp"

#include <bit>
#include <cstdio>
#include <optional>
#include <ostream>

#include "afpsrc/csv.hpp"
#include "afpsrc/model_io.hpp"
#include "afpsrc/parallel.hpp"

namespace afpsrc {
namespace {

void require_path(const std::string& path, const char* what) {
  if (path.empty()) throw Error(ErrorCode::InvalidArgument, std::string("missing ") + what + " path");
}

std::string solver_line(const SolverDefaults& s) {
  return "# lambda=" + csv::format_double(s.lambda_rel) + " tol=" + csv::format_double(s.tol) +
         " max_iter=" + std::to_string(s.max_iter) + "\n";
}

void write_rows(std::ostream& out, const SweepResult& result) {
  for (const auto& w : result.warnings) out << "# warning: " << w << '\n';
  out << metrics_csv_header() << '\n';
  for (const auto& row : result.rows) out << metrics_csv_row(row.pcs, row.metrics) << '\n';
}

struct TrainingData {
  LabeledSet afps;
  LabeledSet non_afps;
};

TrainingData load_pair(const Config& config) {
  require_path(config.afp_path, "AFP FASTA");
  require_path(config.non_afp_path, "non-AFP FASTA");
  return {load_labeled_fasta(config.afp_path, Label::Afp, config.encoding, config.ambiguity),
          load_labeled_fasta(config.non_afp_path, Label::NonAfp, config.encoding,
                             config.ambiguity)};
}

}  // namespace

LabeledSet load_labeled_fasta(const std::filesystem::path& path, Label label,
                              EncodingKind encoding, AmbiguityPolicy policy) {
  const auto records = read_fasta_file(path, policy);
  std::vector<std::string> ids;
  ids.reserve(records.size());
  for (const auto& r : records) ids.push_back(r.id);
  try {
    return make_labeled_set(encode_batch(records, encoding), label, std::move(ids));
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

SrcModel fit_from_config(const Config& config) {
  auto data = load_pair(config);
  if (data.afps.size() == 0 || data.non_afps.size() == 0) {
    throw Error(ErrorCode::InvalidArgument, "each class needs at least one sequence");
  }
  const auto train = LabeledSet::concat(data.afps, data.non_afps);
  const auto bound = rank_bound(train.size(), feature_dim(config.encoding));
  if (config.pcs > bound) {
    throw Error(ErrorCode::InvalidArgument,
                "pcs=" + std::to_string(config.pcs) + " exceeds rank bound " +
                    std::to_string(bound) + " for " + std::to_string(train.size()) +
                    " training sequences");
  }
  return SrcModel::fit(train.features, train.labels, config.encoding, config.pcs, config.solver);
}

std::uint64_t model_hash(const SrcModel& model) { return fnv1a64(serialize_model(model)); }

std::uint64_t data_hash(const LabeledSet& data) {
  std::vector<std::uint8_t> bytes;
  bytes.reserve(static_cast<std::size_t>(data.features.size()) * 8 + data.size());
  for (Eigen::Index i = 0; i < data.features.rows(); ++i) {
    for (Eigen::Index j = 0; j < data.features.cols(); ++j) {
      const auto bits = std::bit_cast<std::uint64_t>(data.features(i, j));
      for (int b = 0; b < 8; ++b) bytes.push_back(static_cast<std::uint8_t>(bits >> (8 * b)));
    }
  }
  for (auto l : data.labels) bytes.push_back(static_cast<std::uint8_t>(l));
  return fnv1a64(bytes);
}

std::string hex64(std::uint64_t value) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(value));
  return buf;
}

PredictOutcome predict_to_csv(const SrcModel& model, const Config& config, std::ostream& out) {
  require_path(config.input_path, "input FASTA");
  const auto records = read_fasta_file(config.input_path, config.ambiguity);

  struct Slot {
    std::optional<Classification> result;
    std::string error;
  };
  std::vector<Slot> slots(records.size());
  parallel_for(records.size(), config.threads, [&](std::size_t i) {
    try {
      const auto features = encode(records[i].sequence, model.encoding());
      slots[i].result = model.classify(features.values);
    } catch (const Error& e) {
      slots[i].error = "record \"" + records[i].id + "\": " + e.what();
    }
  });

  PredictOutcome outcome;
  outcome.records = records.size();
  out << "id,label,r1,r2,score1,score2,converged\n";
  for (std::size_t i = 0; i < records.size(); ++i) {
    out << csv::escape(records[i].id) << ',';
    if (!slots[i].result) {
      out << "ERROR,,,,,\n";
      outcome.errors.push_back(slots[i].error);
      continue;
    }
    const auto& c = *slots[i].result;
    out << label_index(c.label) << ',' << csv::format_double(c.residuals[0]) << ','
        << csv::format_double(c.residuals[1]) << ',' << csv::format_double(c.scores[0]) << ','
        << csv::format_double(c.scores[1]) << ',' << (c.converged ? "true" : "false") << '\n';
  }
  return outcome;
}

SweepRow evaluate_to_csv(const SrcModel& model, const Config& config, std::ostream& out) {
  require_path(config.afp_path, "AFP FASTA");
  require_path(config.non_afp_path, "non-AFP FASTA");
  const auto data = LabeledSet::concat(
      load_labeled_fasta(config.afp_path, Label::Afp, model.encoding(), config.ambiguity),
      load_labeled_fasta(config.non_afp_path, Label::NonAfp, model.encoding(), config.ambiguity));
  if (data.size() == 0) throw Error(ErrorCode::InvalidArgument, "no sequences to evaluate");

  const Eigen::MatrixXd probes = model.pca().project_rows(data.features, model.components());
  const auto results = classify_rows(model.classifier(), probes, config.threads);
  std::vector<Label> predicted;
  SweepRow row;
  row.pcs = model.components();
  for (const auto& r : results) {
    predicted.push_back(r.label);
    row.unconverged += r.converged ? 0 : 1;
  }
  row.confusion = confusion(data.labels, predicted);
  row.metrics = compute_metrics(row.confusion);

  const auto& cm = row.confusion;
  out << "# afpsrc evaluate\n"
      << "# encoding=" << to_string(model.encoding()) << " pcs=" << model.components() << '\n'
      << solver_line(model.classifier().solver()) << "# model_hash=" << hex64(model_hash(model))
      << '\n'
      << "# tp=" << cm.tp << " tn=" << cm.tn << " fp=" << cm.fp << " fn=" << cm.fn
      << " unconverged=" << row.unconverged << '\n'
      << metrics_csv_header() << '\n'
      << metrics_csv_row(row.pcs, row.metrics) << '\n';
  return row;
}

SweepResult sweep_to_csv(const Config& config, std::ostream& out) {
  const auto data = load_pair(config);
  const auto split = split_dataset(data.afps, data.non_afps, {config.train_per_class, config.seed});
  auto result = pc_sweep(split.train, split.test, config.pc_list, config.solver, config.threads);

  out << "# afpsrc sweep\n"
      << "# encoding=" << to_string(config.encoding) << " seed=" << config.seed
      << " train_per_class=" << config.train_per_class << " n_train=" << split.train.size()
      << " n_test=" << split.test.size() << '\n'
      << solver_line(config.solver)
      << "# data_hash=" << hex64(data_hash(LabeledSet::concat(split.train, split.test))) << '\n';
  write_rows(out, result);
  return result;
}

SweepResult noise_to_csv(const Config& config, std::ostream& out) {
  const auto data = load_pair(config);
  const LabeledSet train =
      config.noise_split
          ? split_dataset(data.afps, data.non_afps, {config.train_per_class, config.seed}).train
          : LabeledSet::concat(data.afps, data.non_afps);
  NoiseSpec noise{config.sigma, config.seed, config.noise_target};
  auto result = noise_robustness(train, noise, config.pc_list, config.solver, config.threads);

  out << "# afpsrc noise\n"
      << "# encoding=" << to_string(config.encoding) << " seed=" << config.seed
      << " sigma=" << csv::format_double(config.sigma)
      << " target=" << (config.noise_target == NoiseTarget::Raw ? "raw" : "projected")
      << " n_train=" << train.size() << '\n'
      << solver_line(config.solver) << "# data_hash=" << hex64(data_hash(train)) << '\n';
  write_rows(out, result);
  return result;
}

}  // namespace afpsrc
