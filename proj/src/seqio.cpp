#include "afpsrc/seqio.hpp"

#include <array>
#include <fstream>
#include <sstream>

namespace afpsrc {
namespace {

constexpr std::array<std::int8_t, 256> make_lookup() {
  std::array<std::int8_t, 256> table{};
  for (auto& v : table) v = -1;
  for (std::size_t i = 0; i < kAlphabet.size(); ++i) {
    const auto upper = static_cast<unsigned char>(kAlphabet[i]);
    table[upper] = static_cast<std::int8_t>(i);
    table[upper - 'A' + 'a'] = static_cast<std::int8_t>(i);
  }
  return table;
}

constexpr auto kLookup = make_lookup();

bool is_space(char c) noexcept {
  return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\v' || c == '\f';
}

std::string_view trim(std::string_view s) noexcept {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

struct Builder {
  ProteinRecord record;
  std::size_t raw_position = 0;  // non-whitespace characters seen
};

void finish(std::optional<Builder>& current, std::vector<ProteinRecord>& out) {
  if (!current) return;
  if (current->record.sequence.empty()) {
    throw ParseError("record \"" + current->record.id + "\": empty sequence",
                     current->record.id);
  }
  out.push_back(std::move(current->record));
  current.reset();
}

}  // namespace

std::optional<Residue> residue_index(char letter) noexcept {
  const auto v = kLookup[static_cast<unsigned char>(letter)];
  if (v < 0) return std::nullopt;
  return static_cast<Residue>(v);
}

std::string ProteinRecord::sequence_string() const {
  std::string s;
  s.reserve(sequence.size());
  for (auto r : sequence) s.push_back(kAlphabet[r]);
  return s;
}

std::vector<ProteinRecord> parse_fasta(std::string_view text, AmbiguityPolicy policy) {
  std::vector<ProteinRecord> records;
  std::optional<Builder> current;
  std::size_t line_no = 0;

  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;

    for (char c : line) {
      if (static_cast<unsigned char>(c) >= 0x80) {
        throw ParseError("line " + std::to_string(line_no) + ": non-ASCII byte in input");
      }
    }

    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '>') {
      finish(current, records);
      auto header = trim(line.substr(1));
      std::size_t split = 0;
      while (split < header.size() && !is_space(header[split])) ++split;
      if (split == 0) {
        throw ParseError("line " + std::to_string(line_no) + ": header without identifier");
      }
      current.emplace();
      current->record.id = std::string(header.substr(0, split));
      current->record.description = std::string(trim(header.substr(split)));
      continue;
    }

    if (!current) {
      throw ParseError("line " + std::to_string(line_no) +
                       ": sequence data before the first '>' header");
    }
    for (char c : line) {
      if (is_space(c)) continue;
      ++current->raw_position;
      if (auto r = residue_index(c)) {
        current->record.sequence.push_back(*r);
      } else if (policy == AmbiguityPolicy::Strict) {
        throw ParseError("record \"" + current->record.id + "\": invalid residue '" +
                             std::string(1, c) + "' at position " +
                             std::to_string(current->raw_position),
                         current->record.id, current->raw_position, c);
      }
    }
  }
  finish(current, records);
  return records;
}

std::vector<ProteinRecord> read_fasta_file(const std::filesystem::path& path,
                                           AmbiguityPolicy policy) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::Io, "read failed: " + path.string());
  try {
    return parse_fasta(buf.str(), policy);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what(), e.record_id(), e.position(),
                     e.letter());
  }
}

std::string to_fasta(std::span<const ProteinRecord> records, std::size_t line_width) {
  if (line_width == 0) line_width = std::string::npos;
  std::string out;
  for (const auto& rec : records) {
    out += '>';
    out += rec.id;
    if (!rec.description.empty()) {
      out += ' ';
      out += rec.description;
    }
    out += '\n';
    const auto seq = rec.sequence_string();
    for (std::size_t i = 0; i < seq.size(); i += line_width) {
      out.append(seq, i, line_width);
      out += '\n';
    }
  }
  return out;
}

ProteinRecord make_record(std::string id, std::string_view letters, std::string description) {
  ProteinRecord rec{std::move(id), std::move(description), {}};
  rec.sequence.reserve(letters.size());
  for (std::size_t i = 0; i < letters.size(); ++i) {
    auto r = residue_index(letters[i]);
    if (!r) {
      throw ParseError("record \"" + rec.id + "\": invalid residue '" +
                           std::string(1, letters[i]) + "' at position " + std::to_string(i + 1),
                       rec.id, i + 1, letters[i]);
    }
    rec.sequence.push_back(*r);
  }
  return rec;
}

}  // namespace afpsrc
