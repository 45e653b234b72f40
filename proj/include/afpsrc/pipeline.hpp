#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "afpsrc/classifier.hpp"
#include "afpsrc/config.hpp"
#include "afpsrc/experiments.hpp"

// File-level workflows behind the CLI commands: FASTA in, model or CSV out.
namespace afpsrc {

/// Parses and encodes one FASTA file whose records all belong to `label`.
/// Encoding failures name the offending record.
LabeledSet load_labeled_fasta(const std::filesystem::path& path, Label label,
                              EncodingKind encoding, AmbiguityPolicy policy);

/// Builds a model from config.afp_path / config.non_afp_path.
SrcModel fit_from_config(const Config& config);

/// Hash of a serialized model, as printed in report headers.
std::uint64_t model_hash(const SrcModel& model);

/// Hash of encoded data (features and labels), for experiment headers.
std::uint64_t data_hash(const LabeledSet& data);

std::string hex64(std::uint64_t value);

struct PredictOutcome {
  std::size_t records = 0;
  std::vector<std::string> errors;  // one message per failed record
};

/// Writes id,label,r1,r2,score1,score2,converged for each record of
/// config.input_path in input order. Records that cannot be encoded get a row
/// with label ERROR and empty fields; their messages are returned.
PredictOutcome predict_to_csv(const SrcModel& model, const Config& config, std::ostream& out);

/// Classifies both labeled FASTA files and writes one metrics row.
SweepRow evaluate_to_csv(const SrcModel& model, const Config& config, std::ostream& out);

/// Split, then a component sweep over config.pc_list.
SweepResult sweep_to_csv(const Config& config, std::ostream& out);

/// Noisy-dictionary self-classification over config.pc_list.
SweepResult noise_to_csv(const Config& config, std::ostream& out);

}  // namespace afpsrc
