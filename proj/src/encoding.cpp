#include "afpsrc/encoding.hpp"

#include <ostream>

#include "afpsrc/csv.hpp"

namespace afpsrc {
namespace {

void check_residues(std::span<const Residue> seq) {
  for (auto r : seq) {
    if (r >= kAlphabetSize) {
      throw Error(ErrorCode::Encoding, "residue index out of range: " + std::to_string(r));
    }
  }
}

void fill_aac(std::span<const Residue> seq, Eigen::Ref<Eigen::VectorXd> out) {
  out.setZero();
  for (auto r : seq) out[r] += 1.0;
  out /= static_cast<double>(seq.size());
}

void fill_dpc(std::span<const Residue> seq, Eigen::Ref<Eigen::VectorXd> out) {
  out.setZero();
  for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
    out[kAlphabetSize * seq[i] + seq[i + 1]] += 1.0;
  }
  out /= static_cast<double>(seq.size() - 1);
}

void require_length(std::span<const Residue> seq, EncodingKind kind) {
  if (seq.size() < min_length(kind)) {
    throw Error(ErrorCode::Encoding,
                std::string(to_string(kind)) + " needs at least " +
                    std::to_string(min_length(kind)) + " residues, got " +
                    std::to_string(seq.size()));
  }
  check_residues(seq);
}

}  // namespace

std::size_t feature_dim(EncodingKind kind) noexcept {
  switch (kind) {
    case EncodingKind::Aac: return kAacDim;
    case EncodingKind::Dpc: return kDpcDim;
    case EncodingKind::Seg2: return kSeg2Dim;
  }
  return 0;
}

std::size_t min_length(EncodingKind kind) noexcept {
  switch (kind) {
    case EncodingKind::Aac: return 1;
    case EncodingKind::Dpc: return 2;
    case EncodingKind::Seg2: return 4;
  }
  return 0;
}

std::string_view to_string(EncodingKind kind) noexcept {
  switch (kind) {
    case EncodingKind::Aac: return "aac";
    case EncodingKind::Dpc: return "dpc";
    case EncodingKind::Seg2: return "seg2";
  }
  return "unknown";
}

std::optional<EncodingKind> parse_encoding_kind(std::string_view name) noexcept {
  if (name == "aac") return EncodingKind::Aac;
  if (name == "dpc") return EncodingKind::Dpc;
  if (name == "seg2") return EncodingKind::Seg2;
  return std::nullopt;
}

FeatureVector aac(std::span<const Residue> seq) {
  require_length(seq, EncodingKind::Aac);
  FeatureVector fv{EncodingKind::Aac, Eigen::VectorXd(kAacDim)};
  fill_aac(seq, fv.values);
  return fv;
}

FeatureVector dpc(std::span<const Residue> seq) {
  require_length(seq, EncodingKind::Dpc);
  FeatureVector fv{EncodingKind::Dpc, Eigen::VectorXd(kDpcDim)};
  fill_dpc(seq, fv.values);
  return fv;
}

FeatureVector seg2_features(std::span<const Residue> seq) {
  require_length(seq, EncodingKind::Seg2);
  const std::size_t first = (seq.size() + 1) / 2;
  const auto seg1 = seq.first(first);
  const auto seg2 = seq.subspan(first);

  FeatureVector fv{EncodingKind::Seg2, Eigen::VectorXd(kSeg2Dim)};
  constexpr Eigen::Index block = kAacDim + kDpcDim;
  fill_aac(seg1, fv.values.segment(0, kAacDim));
  fill_dpc(seg1, fv.values.segment(kAacDim, kDpcDim));
  fill_aac(seg2, fv.values.segment(block, kAacDim));
  fill_dpc(seg2, fv.values.segment(block + kAacDim, kDpcDim));
  return fv;
}

FeatureVector encode(std::span<const Residue> seq, EncodingKind kind) {
  switch (kind) {
    case EncodingKind::Aac: return aac(seq);
    case EncodingKind::Dpc: return dpc(seq);
    case EncodingKind::Seg2: return seg2_features(seq);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown encoding kind");
}

Eigen::MatrixXd encode_batch(std::span<const ProteinRecord> records, EncodingKind kind) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(records.size()),
                      static_cast<Eigen::Index>(feature_dim(kind)));
  for (std::size_t i = 0; i < records.size(); ++i) {
    try {
      out.row(static_cast<Eigen::Index>(i)) = encode(records[i].sequence, kind).values.transpose();
    } catch (const Error& e) {
      throw Error(e.code(), "record \"" + records[i].id + "\": " + e.what());
    }
  }
  return out;
}

std::vector<std::string> feature_names(EncodingKind kind) {
  auto block = [](const std::string& prefix, std::vector<std::string>& out) {
    for (char a : kAlphabet) out.push_back(prefix + "AAC_" + a);
    for (char a : kAlphabet) {
      for (char b : kAlphabet) out.push_back(prefix + "DPC_" + a + b);
    }
  };
  std::vector<std::string> names;
  names.reserve(feature_dim(kind));
  switch (kind) {
    case EncodingKind::Aac:
      for (char a : kAlphabet) names.push_back(std::string("AAC_") + a);
      break;
    case EncodingKind::Dpc:
      for (char a : kAlphabet) {
        for (char b : kAlphabet) names.push_back(std::string("DPC_") + a + b);
      }
      break;
    case EncodingKind::Seg2:
      block("S1_", names);
      block("S2_", names);
      break;
  }
  return names;
}

void write_feature_csv(std::ostream& out, std::span<const ProteinRecord> records,
                       const Eigen::MatrixXd& features, EncodingKind kind) {
  if (static_cast<std::size_t>(features.rows()) != records.size() ||
      static_cast<std::size_t>(features.cols()) != feature_dim(kind)) {
    throw Error(ErrorCode::InvalidArgument, "feature matrix shape does not match records");
  }
  out << "id";
  for (const auto& name : feature_names(kind)) out << ',' << name;
  out << '\n';
  for (std::size_t i = 0; i < records.size(); ++i) {
    out << csv::escape(records[i].id);
    for (Eigen::Index j = 0; j < features.cols(); ++j) {
      out << ',' << csv::format_double(features(static_cast<Eigen::Index>(i), j));
    }
    out << '\n';
  }
}

}  // namespace afpsrc
