#include "afpsrc/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "afpsrc/csv.hpp"

namespace afpsrc {
namespace {

std::string canonical_key(std::string_view key) {
  std::string out(key);
  std::replace(out.begin(), out.end(), '-', '_');
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value, std::string_view why) {
  throw Error(ErrorCode::InvalidArgument, "invalid value \"" + std::string(value) + "\" for " +
                                              std::string(key) + ": " + std::string(why));
}

template <class T>
T parse_unsigned(std::string_view key, std::string_view value) {
  value = trim(value);
  T out{};
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size() || value.empty()) {
    bad_value(key, value, "expected a non-negative integer");
  }
  return out;
}

double parse_double(std::string_view key, std::string_view value) {
  value = trim(value);
  double out = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size() || value.empty() ||
      !std::isfinite(out)) {
    bad_value(key, value, "expected a finite number");
  }
  return out;
}

bool parse_bool(std::string_view key, std::string_view value) {
  value = trim(value);
  if (value == "true" || value == "1" || value == "yes" || value == "on") return true;
  if (value == "false" || value == "0" || value == "no" || value == "off") return false;
  bad_value(key, value, "expected true or false");
}

}  // namespace

std::vector<std::size_t> parse_pc_list(std::string_view text) {
  std::vector<std::size_t> out;
  text = trim(text);
  if (text == "default") return default_pc_list();
  while (!text.empty()) {
    const auto comma = text.find(',');
    const auto item = text.substr(0, comma);
    const auto k = parse_unsigned<std::size_t>("pc_list", item);
    if (k == 0) bad_value("pc_list", item, "component counts must be >= 1");
    if (!out.empty() && k <= out.back()) bad_value("pc_list", text, "must be strictly increasing");
    out.push_back(k);
    if (comma == std::string_view::npos) break;
    text = text.substr(comma + 1);
  }
  if (out.empty()) bad_value("pc_list", text, "empty list");
  return out;
}

const std::vector<std::string>& Config::keys() {
  static const std::vector<std::string> k = {
      "encoding", "pcs",         "lambda",       "tol",     "max_iter", "seed",
      "train_per_class", "drop_ambiguous", "pc_list", "sigma", "noise_target", "noise_split",
      "threads",  "afp",         "non_afp",      "model",   "input",    "output"};
  return k;
}

void Config::set(std::string_view raw_key, std::string_view raw_value) {
  const auto key = canonical_key(trim(raw_key));
  const auto value = trim(raw_value);
  if (key == "encoding") {
    const auto kind = parse_encoding_kind(value);
    if (!kind) bad_value(key, value, "expected aac, dpc or seg2");
    encoding = *kind;
  } else if (key == "pcs") {
    pcs = parse_unsigned<std::size_t>(key, value);
    if (pcs == 0) bad_value(key, value, "must be >= 1");
  } else if (key == "lambda") {
    const double v = parse_double(key, value);
    if (v < 0) bad_value(key, value, "must be >= 0");
    solver.lambda_rel = v;
  } else if (key == "tol") {
    const double v = parse_double(key, value);
    if (!(v > 0)) bad_value(key, value, "must be > 0");
    solver.tol = v;
  } else if (key == "max_iter") {
    solver.max_iter = parse_unsigned<std::size_t>(key, value);
    if (solver.max_iter == 0) bad_value(key, value, "must be >= 1");
  } else if (key == "seed") {
    seed = parse_unsigned<std::uint64_t>(key, value);
  } else if (key == "train_per_class") {
    train_per_class = parse_unsigned<std::size_t>(key, value);
    if (train_per_class == 0) bad_value(key, value, "must be >= 1");
  } else if (key == "drop_ambiguous") {
    ambiguity = parse_bool(key, value) ? AmbiguityPolicy::Drop : AmbiguityPolicy::Strict;
  } else if (key == "pc_list") {
    pc_list = parse_pc_list(value);
  } else if (key == "sigma") {
    const double v = parse_double(key, value);
    if (v < 0) bad_value(key, value, "must be >= 0");
    sigma = v;
  } else if (key == "noise_target") {
    if (value == "projected") noise_target = NoiseTarget::Projected;
    else if (value == "raw") noise_target = NoiseTarget::Raw;
    else bad_value(key, value, "expected projected or raw");
  } else if (key == "noise_split") {
    noise_split = parse_bool(key, value);
  } else if (key == "threads") {
    threads = parse_unsigned<unsigned>(key, value);
  } else if (key == "afp") {
    afp_path = value;
  } else if (key == "non_afp") {
    non_afp_path = value;
  } else if (key == "model") {
    model_path = value;
  } else if (key == "input") {
    input_path = value;
  } else if (key == "output") {
    output_path = value;
  } else {
    throw Error(ErrorCode::InvalidArgument, "unknown configuration key \"" + key + "\"");
  }
}

std::string Config::get(std::string_view raw_key) const {
  const auto key = canonical_key(trim(raw_key));
  if (key == "encoding") return std::string(to_string(encoding));
  if (key == "pcs") return std::to_string(pcs);
  if (key == "lambda") return csv::format_double(solver.lambda_rel);
  if (key == "tol") return csv::format_double(solver.tol);
  if (key == "max_iter") return std::to_string(solver.max_iter);
  if (key == "seed") return std::to_string(seed);
  if (key == "train_per_class") return std::to_string(train_per_class);
  if (key == "drop_ambiguous") return ambiguity == AmbiguityPolicy::Drop ? "true" : "false";
  if (key == "pc_list") {
    std::string out;
    for (auto k : pc_list) out += (out.empty() ? "" : ",") + std::to_string(k);
    return out;
  }
  if (key == "sigma") return csv::format_double(sigma);
  if (key == "noise_target") return noise_target == NoiseTarget::Raw ? "raw" : "projected";
  if (key == "noise_split") return noise_split ? "true" : "false";
  if (key == "threads") return std::to_string(threads);
  if (key == "afp") return afp_path;
  if (key == "non_afp") return non_afp_path;
  if (key == "model") return model_path;
  if (key == "input") return input_path;
  if (key == "output") return output_path;
  throw Error(ErrorCode::InvalidArgument, "unknown configuration key \"" + key + "\"");
}

void Config::load_text(std::string_view text) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    auto line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::InvalidArgument,
                  "config line " + std::to_string(line_no) + ": expected key=value");
    }
    try {
      set(line.substr(0, eq), line.substr(eq + 1));
    } catch (const Error& e) {
      throw Error(e.code(), "config line " + std::to_string(line_no) + ": " + e.what());
    }
  }
}

void Config::load_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  load_text(buf.str());
}

std::string Config::to_text() const {
  std::string out;
  for (const auto& key : keys()) out += key + "=" + get(key) + "\n";
  return out;
}

}  // namespace afpsrc
