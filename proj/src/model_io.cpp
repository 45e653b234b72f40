#include "afpsrc/model_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <string>

namespace afpsrc {
namespace {

constexpr char kMagic[4] = {'S', 'R', 'C', 'M'};

class Writer {
 public:
  void bytes(const void* data, std::size_t n) {
    const auto* p = static_cast<const std::uint8_t*>(data);
    out_.insert(out_.end(), p, p + n);
  }
  void u8(std::uint8_t v) { out_.push_back(v); }
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }
  void f64s(const double* data, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) f64(data[i]);
  }
  std::vector<std::uint8_t>& buffer() { return out_; }

 private:
  std::vector<std::uint8_t> out_;
};

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> in) : in_(in) {}

  void need(std::size_t n) const {
    if (in_.size() - pos_ < n) throw Error(ErrorCode::Format, "model file is truncated");
  }
  void bytes(void* out, std::size_t n) {
    need(n);
    std::memcpy(out, in_.data() + pos_, n);
    pos_ += n;
  }
  std::uint8_t u8() {
    need(1);
    return in_[pos_++];
  }
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(in_[pos_++]) << (8 * i);
    return v;
  }
  std::uint64_t u64() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(in_[pos_++]) << (8 * i);
    return v;
  }
  double f64() { return std::bit_cast<double>(u64()); }
  void f64s(double* out, std::size_t n) {
    need(8 * n);
    for (std::size_t i = 0; i < n; ++i) out[i] = f64();
  }
  std::size_t position() const noexcept { return pos_; }
  std::size_t remaining() const noexcept { return in_.size() - pos_; }

 private:
  std::span<const std::uint8_t> in_;
  std::size_t pos_ = 0;
};

}  // namespace

std::uint64_t fnv1a64(std::span<const std::uint8_t> bytes, std::uint64_t state) noexcept {
  for (auto b : bytes) {
    state ^= b;
    state *= 0x100000001b3ull;
  }
  return state;
}

std::vector<std::uint8_t> serialize_model(const SrcModel& model) {
  const auto& pca = model.pca();
  const auto& dict = model.classifier().dictionary();
  const auto& solver = model.classifier().solver();
  const auto d = static_cast<std::uint32_t>(pca.dim());
  const auto p = static_cast<std::uint32_t>(dict.rows());
  const auto m = static_cast<std::uint32_t>(dict.size());

  Writer w;
  w.bytes(kMagic, sizeof(kMagic));
  w.u32(kModelFormatVersion);
  w.u32(static_cast<std::uint32_t>(model.encoding()));
  w.u32(static_cast<std::uint32_t>(model.components()));
  w.u32(p);
  w.u32(m);
  w.u32(d);
  w.u32(static_cast<std::uint32_t>(kAlphabet.size()));
  w.bytes(kAlphabet.data(), kAlphabet.size());

  w.f64s(pca.mean().data(), d);
  w.f64s(pca.eigenvalues().data(), d);
  w.f64s(pca.components().data(), static_cast<std::size_t>(d) * d);  // column-major

  w.f64s(dict.columns.data(), static_cast<std::size_t>(p) * m);  // column-major
  for (auto l : dict.labels) w.u8(static_cast<std::uint8_t>(l));

  w.f64(solver.lambda_rel);
  w.f64(solver.tol);
  w.u64(solver.max_iter);

  w.u64(fnv1a64(w.buffer()));
  return std::move(w.buffer());
}

SrcModel deserialize_model(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < sizeof(kMagic) || std::memcmp(bytes.data(), kMagic, sizeof(kMagic)) != 0) {
    throw Error(ErrorCode::Format, "not a model file");
  }
  Reader r(bytes);
  char magic[4];
  r.bytes(magic, sizeof(magic));
  const auto version = r.u32();
  if (version != kModelFormatVersion) {
    throw Error(ErrorCode::Version, "unsupported model format version " + std::to_string(version) +
                                        " (expected " + std::to_string(kModelFormatVersion) + ")");
  }
  if (bytes.size() < 8 + sizeof(kMagic)) throw Error(ErrorCode::Format, "model file is truncated");
  const auto body = bytes.first(bytes.size() - 8);
  std::uint64_t stored = 0;
  for (int i = 0; i < 8; ++i) {
    stored |= static_cast<std::uint64_t>(bytes[bytes.size() - 8 + i]) << (8 * i);
  }
  if (fnv1a64(body) != stored) throw Error(ErrorCode::Format, "model file checksum mismatch");
  Reader br(body);
  br.bytes(magic, sizeof(magic));
  br.u32();

  const auto kind_raw = br.u32();
  if (kind_raw > static_cast<std::uint32_t>(EncodingKind::Seg2)) {
    throw Error(ErrorCode::Format, "unknown encoding kind in model file");
  }
  const auto encoding = static_cast<EncodingKind>(kind_raw);
  const auto k = br.u32();
  const auto p = br.u32();
  const auto m = br.u32();
  const auto d = br.u32();
  if (p != k || d != feature_dim(encoding) || k < 1 || k > d || m < 2) {
    throw Error(ErrorCode::Format, "inconsistent dimensions in model file");
  }
  const auto alpha_len = br.u32();
  if (alpha_len != kAlphabet.size()) throw Error(ErrorCode::Format, "alphabet length mismatch");
  std::string alphabet(alpha_len, '\0');
  br.bytes(alphabet.data(), alpha_len);
  if (alphabet != kAlphabet) throw Error(ErrorCode::Format, "amino-acid ordering mismatch");
  const std::uint64_t expected = 8ull * (2ull * d + 1ull * d * d + 1ull * p * m + 3) + m;
  if (br.remaining() != expected) throw Error(ErrorCode::Format, "model file size mismatch");

  Eigen::VectorXd mean(d), eigenvalues(d);
  Eigen::MatrixXd components(d, d);
  br.f64s(mean.data(), d);
  br.f64s(eigenvalues.data(), d);
  br.f64s(components.data(), static_cast<std::size_t>(d) * d);

  Dictionary dict;
  dict.columns.resize(p, m);
  br.f64s(dict.columns.data(), static_cast<std::size_t>(p) * m);
  dict.labels.reserve(m);
  for (std::uint32_t j = 0; j < m; ++j) {
    const auto l = br.u8();
    if (l != 1 && l != 2) throw Error(ErrorCode::Format, "invalid class label in model file");
    dict.labels.push_back(static_cast<Label>(l));
  }

  SolverDefaults solver;
  solver.lambda_rel = br.f64();
  solver.tol = br.f64();
  solver.max_iter = static_cast<std::size_t>(br.u64());
  if (br.remaining() != 0) throw Error(ErrorCode::Format, "trailing bytes in model file");

  try {
    return SrcModel(encoding, PcaModel(std::move(mean), std::move(components), std::move(eigenvalues)),
                    SrcClassifier(std::move(dict), solver));
  } catch (const Error& e) {
    throw Error(ErrorCode::Format, std::string("invalid model contents: ") + e.what());
  }
}

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (in.bad()) throw Error(ErrorCode::Io, "read failed: " + path.string());
  return bytes;
}

void save_model(const SrcModel& model, const std::filesystem::path& path) {
  const auto bytes = serialize_model(model);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::Io, "write failed: " + path.string());
}

SrcModel load_model(const std::filesystem::path& path) {
  return deserialize_model(read_file_bytes(path));
}

}  // namespace afpsrc
