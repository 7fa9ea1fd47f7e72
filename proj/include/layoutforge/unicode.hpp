#pragma once

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <string>
#include <string_view>

#include "error.hpp"

namespace layoutforge {

using CodePoint = char32_t;

namespace utf8 {

/// Decodes UTF-8 into code points. Rejects overlongs, surrogates and
/// values above U+10FFFF; the error position is the offending lead byte.
inline std::u32string decode(std::string_view bytes) {
  std::u32string out;
  out.reserve(bytes.size());
  std::size_t i = 0;
  const auto fail = [&](std::size_t at) -> Error {
    return Error(ErrorKind::InvalidEncoding,
                 "invalid UTF-8 at byte " + std::to_string(at), at);
  };
  while (i < bytes.size()) {
    const auto lead = static_cast<unsigned char>(bytes[i]);
    std::size_t len = 0;
    char32_t cp = 0;
    char32_t min = 0;
    if (lead < 0x80) {
      out.push_back(lead);
      ++i;
      continue;
    } else if ((lead & 0xE0) == 0xC0) {
      len = 2; cp = lead & 0x1F; min = 0x80;
    } else if ((lead & 0xF0) == 0xE0) {
      len = 3; cp = lead & 0x0F; min = 0x800;
    } else if ((lead & 0xF8) == 0xF0) {
      len = 4; cp = lead & 0x07; min = 0x10000;
    } else {
      throw fail(i);
    }
    if (i + len > bytes.size()) throw fail(i);
    for (std::size_t k = 1; k < len; ++k) {
      const auto cont = static_cast<unsigned char>(bytes[i + k]);
      if ((cont & 0xC0) != 0x80) throw fail(i);
      cp = (cp << 6) | (cont & 0x3F);
    }
    if (cp < min || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) throw fail(i);
    out.push_back(cp);
    i += len;
  }
  return out;
}

inline void append(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

inline std::string encode(std::u32string_view text) {
  std::string out;
  out.reserve(text.size() * 3);
  for (char32_t cp : text) append(out, cp);
  return out;
}

inline std::string encode(char32_t cp) {
  std::string out;
  append(out, cp);
  return out;
}

}  // namespace utf8

/// "U+0995" style label, at least four hex digits.
inline std::string code_point_label(CodePoint cp) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "U+%04X", static_cast<unsigned>(cp));
  return buf;
}

inline CodePoint parse_code_point_label(std::string_view label) {
  if (label.size() < 3 || (label[0] != 'U' && label[0] != 'u') || label[1] != '+') {
    throw Error(ErrorKind::Config, "expected U+XXXX code point, got '" + std::string(label) + "'");
  }
  std::uint32_t value = 0;
  const auto* first = label.data() + 2;
  const auto* last = label.data() + label.size();
  auto [ptr, ec] = std::from_chars(first, last, value, 16);
  if (ec != std::errc{} || ptr != last || value > 0x10FFFF) {
    throw Error(ErrorKind::Config, "bad code point '" + std::string(label) + "'");
  }
  return static_cast<CodePoint>(value);
}

/// A single code point given as literal text.
inline CodePoint single_code_point(std::string_view text) {
  const auto decoded = utf8::decode(text);
  if (decoded.size() != 1) {
    throw Error(ErrorKind::InvalidArgument,
                "expected exactly one code point, got '" + std::string(text) + "'");
  }
  return decoded.front();
}

}  // namespace layoutforge
