// Copyright 2026 The phk Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// UTF-8 <-> codepoint conversion. All offsets in phk are codepoint offsets.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace phk {

struct Utf8Error {
  std::size_t byte_offset = 0;
  std::size_t codepoint_index = 0;  // index of the codepoint that failed
};

// Strict decoder: rejects overlong forms, surrogates and values > U+10FFFF.
inline bool DecodeUtf8(std::string_view in, std::u32string* out,
                       Utf8Error* error = nullptr) {
  out->clear();
  out->reserve(in.size());
  std::size_t i = 0;
  const auto fail = [&](std::size_t at) {
    if (error != nullptr) {
      error->byte_offset = at;
      error->codepoint_index = out->size();
    }
    return false;
  };
  while (i < in.size()) {
    const auto b0 = static_cast<unsigned char>(in[i]);
    if (b0 < 0x80) {
      out->push_back(b0);
      ++i;
      continue;
    }
    std::size_t len;
    char32_t cp;
    char32_t min;
    if ((b0 & 0xE0) == 0xC0) {
      len = 2, cp = b0 & 0x1F, min = 0x80;
    } else if ((b0 & 0xF0) == 0xE0) {
      len = 3, cp = b0 & 0x0F, min = 0x800;
    } else if ((b0 & 0xF8) == 0xF0) {
      len = 4, cp = b0 & 0x07, min = 0x10000;
    } else {
      return fail(i);
    }
    if (i + len > in.size()) return fail(i);
    for (std::size_t k = 1; k < len; ++k) {
      const auto b = static_cast<unsigned char>(in[i + k]);
      if ((b & 0xC0) != 0x80) return fail(i);
      cp = (cp << 6) | (b & 0x3F);
    }
    if (cp < min || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
      return fail(i);
    }
    out->push_back(cp);
    i += len;
  }
  return true;
}

inline std::optional<std::u32string> DecodeUtf8(std::string_view in) {
  std::u32string out;
  if (!DecodeUtf8(in, &out)) return std::nullopt;
  return out;
}

inline void AppendUtf8(char32_t cp, std::string* out) {
  if (cp < 0x80) {
    out->push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out->push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out->push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out->push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out->push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out->push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out->push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out->push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out->push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out->push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

inline std::string EncodeUtf8(std::u32string_view in) {
  std::string out;
  out.reserve(in.size() * 3);
  for (char32_t cp : in) AppendUtf8(cp, &out);
  return out;
}

// Convenience for literals in code and tests; input must be valid UTF-8.
inline std::u32string U32(std::string_view utf8) {
  std::u32string out;
  DecodeUtf8(utf8, &out);
  return out;
}

}  // namespace phk
