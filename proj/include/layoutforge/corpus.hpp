#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <future>
#include <iterator>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>
#include <unicode/normalizer2.h>
#include <unicode/unistr.h>

#include "error.hpp"
#include "unicode.hpp"

namespace layoutforge {

struct CodePointRange {
  CodePoint first = 0;
  CodePoint last = 0;
  bool contains(CodePoint cp) const { return cp >= first && cp <= last; }
  friend bool operator==(const CodePointRange&, const CodePointRange&) = default;
};

/// The set of code points treated as letters. Resolution: a code point is a
/// letter when it lies in a range or the include set and is not excluded.
/// Everything else is a boundary character.
struct AlphabetConfig {
  std::vector<CodePointRange> ranges;
  std::set<CodePoint> include;
  std::set<CodePoint> exclude;

  bool contains(CodePoint cp) const {
    if (exclude.contains(cp)) return false;
    if (include.contains(cp)) return true;
    return std::any_of(ranges.begin(), ranges.end(),
                       [cp](const CodePointRange& r) { return r.contains(cp); });
  }

  void validate() const {
    for (const auto& r : ranges) {
      if (r.first > r.last) {
        throw Error(ErrorKind::Config, "alphabet range " + code_point_label(r.first) + ".." +
                                           code_point_label(r.last) + " is reversed");
      }
    }
    for (CodePoint cp : include) {
      if (exclude.contains(cp)) {
        throw Error(ErrorKind::Config,
                    "code point " + code_point_label(cp) + " is both included and excluded");
      }
    }
  }

  /// Bengali block U+0980..U+09FF without the Bengali digits U+09E6..U+09EF.
  /// Virama (U+09CD) stays an ordinary letter; the danda U+0964 is outside
  /// the block and therefore a boundary unless included.
  static AlphabetConfig bangla() {
    AlphabetConfig config;
    config.ranges.push_back({0x0980, 0x09FF});
    for (CodePoint cp = 0x09E6; cp <= 0x09EF; ++cp) config.exclude.insert(cp);
    return config;
  }

  friend bool operator==(const AlphabetConfig&, const AlphabetConfig&) = default;
};

inline void to_json(nlohmann::json& j, const AlphabetConfig& config) {
  auto ranges = nlohmann::json::array();
  for (const auto& r : config.ranges) {
    ranges.push_back({code_point_label(r.first), code_point_label(r.last)});
  }
  auto labels = [](const std::set<CodePoint>& set) {
    auto out = nlohmann::json::array();
    for (CodePoint cp : set) out.push_back(code_point_label(cp));
    return out;
  };
  j = nlohmann::json{{"ranges", ranges}, {"include", labels(config.include)},
                     {"exclude", labels(config.exclude)}};
}

/// Reads {"ranges": [["U+0980","U+09FF"], ...], "include": [...], "exclude": [...]}.
/// Ranges may also be written as a single "U+0980..U+09FF" string.
inline void from_json(const nlohmann::json& j, AlphabetConfig& config) {
  if (!j.is_object()) throw Error(ErrorKind::Config, "alphabet config must be a JSON object");
  config = AlphabetConfig{};
  const auto label = [](const nlohmann::json& v) {
    if (!v.is_string()) throw Error(ErrorKind::Config, "code points must be \"U+XXXX\" strings");
    return parse_code_point_label(v.get<std::string>());
  };
  if (j.contains("ranges")) {
    for (const auto& r : j.at("ranges")) {
      if (r.is_array() && r.size() == 2) {
        config.ranges.push_back({label(r[0]), label(r[1])});
      } else if (r.is_string()) {
        const auto text = r.get<std::string>();
        const auto dots = text.find("..");
        if (dots == std::string::npos) {
          config.ranges.push_back({label(r), label(r)});
        } else {
          config.ranges.push_back({parse_code_point_label(text.substr(0, dots)),
                                   parse_code_point_label(text.substr(dots + 2))});
        }
      } else {
        throw Error(ErrorKind::Config, "alphabet range must be [\"U+XXXX\", \"U+YYYY\"]");
      }
    }
  }
  for (const char* key : {"include", "exclude"}) {
    if (!j.contains(key)) continue;
    auto& target = std::string_view(key) == "include" ? config.include : config.exclude;
    for (const auto& v : j.at(key)) target.insert(label(v));
  }
  config.validate();
}

/// One element of a letter stream: a letter code point or a word boundary.
class Token {
 public:
  static constexpr Token letter(CodePoint cp) { return Token(cp); }
  static constexpr Token boundary() { return Token(kBoundary); }

  constexpr bool is_boundary() const { return value_ == kBoundary; }
  constexpr bool is_letter() const { return value_ != kBoundary; }
  constexpr CodePoint code_point() const { return value_; }

  friend constexpr bool operator==(Token, Token) = default;

 private:
  static constexpr CodePoint kBoundary = 0xFFFFFFFF;
  constexpr explicit Token(CodePoint v) : value_(v) {}
  CodePoint value_;
};

/// Ordered letters with collapsed word boundaries. Never holds two
/// consecutive boundaries.
class LetterStream {
 public:
  void push_letter(CodePoint cp) {
    tokens_.push_back(Token::letter(cp));
    ++letter_count_;
  }

  void push_boundary() {
    if (tokens_.empty() || tokens_.back().is_letter()) tokens_.push_back(Token::boundary());
  }

  /// Appends `other` separated by a boundary (skipped when either side is empty).
  void append(const LetterStream& other) {
    if (other.tokens_.empty()) {
      source_bytes_ += other.source_bytes_;
      return;
    }
    if (!tokens_.empty()) push_boundary();
    for (Token t : other.tokens_) {
      if (t.is_boundary()) {
        push_boundary();
      } else {
        push_letter(t.code_point());
      }
    }
    source_bytes_ += other.source_bytes_;
  }

  const std::vector<Token>& tokens() const { return tokens_; }
  std::size_t letter_count() const { return letter_count_; }
  std::size_t source_bytes() const { return source_bytes_; }
  void set_source_bytes(std::size_t n) { source_bytes_ = n; }
  bool empty() const { return tokens_.empty(); }

  /// Number of maximal letter runs.
  std::size_t word_count() const {
    std::size_t words = 0;
    bool in_word = false;
    for (Token t : tokens_) {
      if (t.is_letter() && !in_word) ++words;
      in_word = t.is_letter();
    }
    return words;
  }

  /// Letters as text with each boundary rendered as a single space.
  std::string to_text() const {
    std::string out;
    for (Token t : tokens_) {
      if (t.is_boundary()) {
        out.push_back(' ');
      } else {
        utf8::append(out, t.code_point());
      }
    }
    return out;
  }

  friend bool operator==(const LetterStream&, const LetterStream&) = default;

 private:
  std::vector<Token> tokens_;
  std::size_t letter_count_ = 0;
  std::size_t source_bytes_ = 0;
};

/// Validates UTF-8 and converts to NFC.
inline std::string normalize_text(std::string_view raw) {
  utf8::decode(raw);  // throws InvalidEncoding with the byte position
  if (raw.empty()) return {};
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* nfc = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status)) {
    throw Error(ErrorKind::Io, std::string("ICU NFC normalizer unavailable: ") + u_errorName(status));
  }
  const auto source = icu::UnicodeString::fromUTF8(
      icu::StringPiece(raw.data(), static_cast<int32_t>(raw.size())));
  const icu::UnicodeString normalized = nfc->normalize(source, status);
  if (U_FAILURE(status)) {
    throw Error(ErrorKind::InvalidEncoding, std::string("normalization failed: ") + u_errorName(status));
  }
  std::string out;
  normalized.toUTF8String(out);
  return out;
}

/// Splits normalized text into letters and collapsed boundaries.
inline LetterStream tokenize(std::string_view text, const AlphabetConfig& config) {
  LetterStream stream;
  for (CodePoint cp : utf8::decode(text)) {
    if (config.contains(cp)) {
      stream.push_letter(cp);
    } else {
      stream.push_boundary();
    }
  }
  stream.set_source_bytes(text.size());
  return stream;
}

/// normalize_text followed by tokenize; source byte count is the raw size.
inline LetterStream ingest(std::string_view raw, const AlphabetConfig& config) {
  auto stream = tokenize(normalize_text(raw), config);
  stream.set_source_bytes(raw.size());
  return stream;
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw Error(ErrorKind::Io, "read failed for " + path.string());
  return std::move(buffer).str();
}

inline AlphabetConfig load_alphabet(const std::filesystem::path& path) {
  const auto text = read_file(path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::Config, path.string() + ": " + e.what(), e.byte);
  }
  return j.get<AlphabetConfig>();
}

/// Tokenizes each file (in parallel) and returns the per-file streams in the
/// given order.
inline std::vector<LetterStream> ingest_each(const std::vector<std::filesystem::path>& paths,
                                             const AlphabetConfig& config) {
  std::vector<std::future<LetterStream>> jobs;
  jobs.reserve(paths.size());
  for (const auto& path : paths) {
    jobs.push_back(std::async(std::launch::async, [&config, path] {
      try {
        return ingest(read_file(path), config);
      } catch (const Error& e) {
        if (e.kind() == ErrorKind::InvalidEncoding) {
          throw Error(e.kind(), path.string() + ": " + e.what(), e.position());
        }
        throw;
      }
    }));
  }
  std::vector<LetterStream> streams;
  streams.reserve(jobs.size());
  for (auto& job : jobs) streams.push_back(job.get());
  return streams;
}

/// Concatenation of several streams with an implicit boundary between them.
inline LetterStream concatenate(const std::vector<LetterStream>& parts) {
  LetterStream out;
  for (const auto& part : parts) out.append(part);
  return out;
}

}  // namespace layoutforge
