#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "afpsrc/classifier.hpp"

namespace afpsrc {

inline constexpr std::uint32_t kModelFormatVersion = 1;

/// Binary model container; the byte layout is described in docs/model_format.md.
std::vector<std::uint8_t> serialize_model(const SrcModel& model);

/// Rejects foreign files ("not a model file"), unknown versions, truncation,
/// and checksum mismatches.
SrcModel deserialize_model(std::span<const std::uint8_t> bytes);

void save_model(const SrcModel& model, const std::filesystem::path& path);
SrcModel load_model(const std::filesystem::path& path);

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path);

/// 64-bit FNV-1a.
std::uint64_t fnv1a64(std::span<const std::uint8_t> bytes,
                      std::uint64_t state = 0xcbf29ce484222325ull) noexcept;

}  // namespace afpsrc
