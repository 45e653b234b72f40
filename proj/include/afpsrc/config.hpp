#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "afpsrc/classifier.hpp"
#include "afpsrc/encoding.hpp"
#include "afpsrc/experiments.hpp"
#include "afpsrc/seqio.hpp"

namespace afpsrc {

/// Run configuration shared by every command. Each field has a key usable in
/// a key=value config file and as a CLI flag (dashes and underscores are
/// interchangeable in keys).
struct Config {
  EncodingKind encoding = EncodingKind::Seg2;
  std::size_t pcs = 200;
  SolverDefaults solver;
  std::uint64_t seed = 0;
  std::size_t train_per_class = 300;
  AmbiguityPolicy ambiguity = AmbiguityPolicy::Strict;
  std::vector<std::size_t> pc_list = default_pc_list();
  double sigma = 1.0;
  NoiseTarget noise_target = NoiseTarget::Projected;
  bool noise_split = false;  // run the noise study on the training half of a split
  unsigned threads = 0;      // 0 = hardware concurrency

  std::string afp_path;      // FASTA of class 1 (AFP) sequences
  std::string non_afp_path;  // FASTA of class 2 (non-AFP) sequences
  std::string model_path;
  std::string input_path;    // probes for predict
  std::string output_path;   // "-" or empty means stdout

  /// Sets one value; throws Error(InvalidArgument) for unknown keys or bad values.
  void set(std::string_view key, std::string_view value);
  std::string get(std::string_view key) const;

  /// Applies a config file on top of the current values.
  void load_file(const std::filesystem::path& path);
  void load_text(std::string_view text);

  /// Every setting as key=value lines in key order.
  std::string to_text() const;

  static const std::vector<std::string>& keys();
};

std::vector<std::size_t> parse_pc_list(std::string_view text);

}  // namespace afpsrc
