#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "afpsrc/error.hpp"

namespace afpsrc {

/// Canonical amino-acid alphabet, alphabetical by one-letter code. Residue
/// indices refer to positions in this string, and the ordering is recorded in
/// model files.
inline constexpr std::string_view kAlphabet = "ACDEFGHIKLMNPQRSTVWY";
inline constexpr std::size_t kAlphabetSize = 20;

using Residue = std::uint8_t;

/// Index of an amino-acid letter (case-insensitive) or nullopt when the
/// letter is not one of the 20 canonical residues.
std::optional<Residue> residue_index(char letter) noexcept;

struct ProteinRecord {
  std::string id;
  std::string description;
  std::vector<Residue> sequence;

  std::string sequence_string() const;

  friend bool operator==(const ProteinRecord&, const ProteinRecord&) = default;
};

enum class Label : std::uint8_t { Afp = 1, NonAfp = 2 };

inline int label_index(Label label) noexcept { return static_cast<int>(label); }

struct LabeledRecord {
  ProteinRecord record;
  Label label;
};

enum class AmbiguityPolicy {
  Strict,  // any non-canonical letter is an error
  Drop,    // non-canonical letters are removed from the sequence
};

/// Raised on malformed FASTA. For invalid residues the record id, the 1-based
/// position within the sequence, and the offending letter are kept.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::string record_id = {},
             std::size_t position = 0, char letter = '\0')
      : Error(ErrorCode::Parse, message),
        record_id_(std::move(record_id)),
        position_(position),
        letter_(letter) {}

  const std::string& record_id() const noexcept { return record_id_; }
  std::size_t position() const noexcept { return position_; }
  char letter() const noexcept { return letter_; }

 private:
  std::string record_id_;
  std::size_t position_;
  char letter_;
};

std::vector<ProteinRecord> parse_fasta(std::string_view text,
                                       AmbiguityPolicy policy = AmbiguityPolicy::Strict);

std::vector<ProteinRecord> read_fasta_file(const std::filesystem::path& path,
                                           AmbiguityPolicy policy = AmbiguityPolicy::Strict);

/// Serializes records as FASTA with sequence lines wrapped at `line_width`.
std::string to_fasta(std::span<const ProteinRecord> records, std::size_t line_width = 60);

/// Builds a record from a letter string; throws ParseError on invalid letters.
ProteinRecord make_record(std::string id, std::string_view letters,
                          std::string description = {});

}  // namespace afpsrc
