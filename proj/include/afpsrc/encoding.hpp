#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "afpsrc/seqio.hpp"

namespace afpsrc {

enum class EncodingKind : std::uint32_t {
  Aac = 0,   // 20 residue frequencies
  Dpc = 1,   // 400 adjacent-pair frequencies
  Seg2 = 2,  // [AAC | DPC] of each half, 840 values
};

inline constexpr std::size_t kAacDim = kAlphabetSize;
inline constexpr std::size_t kDpcDim = kAlphabetSize * kAlphabetSize;
inline constexpr std::size_t kSeg2Dim = 2 * (kAacDim + kDpcDim);

std::size_t feature_dim(EncodingKind kind) noexcept;

/// Shortest sequence each encoding accepts.
std::size_t min_length(EncodingKind kind) noexcept;

std::string_view to_string(EncodingKind kind) noexcept;
std::optional<EncodingKind> parse_encoding_kind(std::string_view name) noexcept;

struct FeatureVector {
  EncodingKind kind;
  Eigen::VectorXd values;
};

FeatureVector aac(std::span<const Residue> seq);
FeatureVector dpc(std::span<const Residue> seq);

/// Splits the sequence into a first half of ceil(L/2) residues and a second
/// half holding the rest, then concatenates AAC and DPC of each half.
FeatureVector seg2_features(std::span<const Residue> seq);

FeatureVector encode(std::span<const Residue> seq, EncodingKind kind);

/// One row per record, in input order. Errors carry the record id.
Eigen::MatrixXd encode_batch(std::span<const ProteinRecord> records, EncodingKind kind);

/// Column names such as AAC_A, DPC_AC, S1_AAC_A, S2_DPC_YY.
std::vector<std::string> feature_names(EncodingKind kind);

void write_feature_csv(std::ostream& out, std::span<const ProteinRecord> records,
                       const Eigen::MatrixXd& features, EncodingKind kind);

}  // namespace afpsrc
