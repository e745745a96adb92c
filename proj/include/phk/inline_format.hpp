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

// Inline bracket notation.
//
// One labeling unit per line. Each element is written as
//
//   [TAG content]        e.g. [SUB-W 被告人(陈某某)]  [ADV-P 多次(向)-被告人]
//
// with exactly one ASCII space after the tag, at most one unescaped "-"
// separating trigger from body, and at most one "(...)" head group per
// segment. Text outside brackets is gap text and is kept verbatim.
// Reserved characters [ ] ( ) - \ are written with a backslash escape;
// "\#" protects a unit line that would otherwise start a comment.
//
// Lines starting with '#' are metadata; the first "#id:" line names the
// document. Empty lines are ignored.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "phk/expected.hpp"
#include "phk/model.hpp"
#include "phk/utf8.hpp"

namespace phk {

struct ParseDiagnostic {
  std::string code;  // P001..P010
  std::size_t line = 0;    // 1-based
  std::size_t column = 0;  // 1-based, in codepoints
  std::string message;

  friend bool operator==(const ParseDiagnostic&, const ParseDiagnostic&) = default;
};

using UnitParseResult = Expected<LabelingUnit, std::vector<ParseDiagnostic>>;

namespace inline_detail {

constexpr bool IsReserved(char32_t c) {
  return c == U'[' || c == U']' || c == U'(' || c == U')' || c == U'-' || c == U'\\';
}

constexpr bool IsTagChar(char32_t c) { return (c >= U'A' && c <= U'Z') || c == U'-'; }

class UnitParser {
 public:
  UnitParser(std::u32string_view line, std::size_t line_no)
      : line_(line), line_no_(line_no) {}

  UnitParseResult Run() {
    std::size_t i = 0;
    while (i < line_.size() && !failed_) {
      const char32_t c = line_[i];
      switch (c) {
        case U'\\':
          i = ReadEscape(i);
          break;
        case U'[':
          i = ReadElement(i);
          break;
        case U']':
          Fail("P007", i, "stray ']' outside an element");
          break;
        case U')':
          Fail("P007", i, "stray ')' outside an element");
          break;
        case U'(':
          Fail("P006", i, "head group '(' outside an element");
          break;
        default:
          unit_.text.push_back(c);
          ++i;
      }
    }
    if (failed_) return UnitParseResult::Failure(std::move(diagnostics_));
    return std::move(unit_);
  }

 private:
  void Fail(const char* code, std::size_t index, std::string message) {
    diagnostics_.push_back({code, line_no_, index + 1, std::move(message)});
    failed_ = true;
  }

  // Appends the escaped character; returns the index after the escape.
  std::size_t ReadEscape(std::size_t i) {
    if (i + 1 >= line_.size()) {
      Fail("P008", i, "dangling '\\' at end of line");
      return line_.size();
    }
    const char32_t next = line_[i + 1];
    if (!IsReserved(next) && next != U'#') {
      Fail("P008", i, "invalid escape sequence '\\" + EncodeUtf8(std::u32string(1, next)) + "'");
      return line_.size();
    }
    unit_.text.push_back(next);
    return i + 2;
  }

  std::size_t ReadElement(std::size_t open) {
    std::size_t i = open + 1;
    while (i < line_.size() && IsTagChar(line_[i])) ++i;
    const std::string tag_text = EncodeUtf8(line_.substr(open + 1, i - open - 1));
    if (tag_text.empty()) {
      if (i >= line_.size()) {
        Fail("P001", open, "unbalanced '['");
      } else {
        Fail("P002", open + 1, "empty element tag");
      }
      return line_.size();
    }
    if (i >= line_.size()) {
      Fail("P001", open, "unbalanced '['");
      return line_.size();
    }
    if (line_[i] != U' ') {
      Fail("P003", i, "expected a single space after tag '" + tag_text + "'");
      return line_.size();
    }
    const auto tag = ParseTag(tag_text);
    if (!tag) {
      Fail("P002", open + 1, "unknown tag or illegal tag combination '" + tag_text + "'");
      return line_.size();
    }
    ++i;  // the space

    Element element;
    element.set_tag(*tag);
    Segment current{{unit_.text.size(), unit_.text.size()}, std::nullopt};
    bool in_head = false;
    std::size_t head_open = 0;  // line index of the unclosed '('
    std::size_t head_start = 0;

    const auto finish_segment = [&](std::size_t at, const char* what) {
      current.span.end = unit_.text.size();
      if (current.span.empty()) {
        Fail("P009", at, std::string("empty ") + what + " content");
      }
    };

    while (!failed_) {
      if (i >= line_.size()) {
        Fail("P001", open, "unbalanced '[': element is not closed");
        break;
      }
      const char32_t c = line_[i];
      if (c == U'\\') {
        i = ReadEscape(i);
        continue;
      }
      if (c == U'[') {
        Fail("P001", i, "nested '[' inside an element");
        break;
      }
      if (c == U'(') {
        if (in_head) {
          Fail("P006", i, "nested '(' inside a head group");
        } else if (current.head) {
          Fail("P005", i, "more than one head group in one segment");
        } else {
          in_head = true;
          head_open = i;
          head_start = unit_.text.size();
        }
        ++i;
        continue;
      }
      if (c == U')') {
        if (!in_head) {
          Fail("P006", i, "unbalanced ')' inside an element");
        } else if (unit_.text.size() == head_start) {
          Fail("P009", i, "empty head group '()'");
        } else {
          current.head = Span{head_start, unit_.text.size()};
          in_head = false;
        }
        ++i;
        continue;
      }
      if (c == U'-') {
        if (in_head) {
          Fail("P006", head_open, "head group not closed before '-'");
        } else if (element.trigger) {
          Fail("P004", i, "more than one '-' separator in an element");
        } else {
          finish_segment(i, "trigger");
          element.trigger = current;
          element.separator = unit_.text.size();
          current = Segment{{unit_.text.size(), unit_.text.size()}, std::nullopt};
        }
        ++i;
        continue;
      }
      if (c == U']') {
        if (in_head) {
          Fail("P006", head_open, "head group not closed before ']'");
          break;
        }
        finish_segment(i, element.trigger ? "body" : "element");
        if (failed_) break;
        element.body = current;
        element.span = Span{element.trigger ? element.trigger->span.start : current.span.start,
                            current.span.end};
        unit_.elements.push_back(element);
        return i + 1;
      }
      unit_.text.push_back(c);
      ++i;
    }
    return line_.size();
  }

  std::u32string_view line_;
  std::size_t line_no_;
  LabelingUnit unit_;
  std::vector<ParseDiagnostic> diagnostics_;
  bool failed_ = false;
};

inline void AppendEscaped(std::u32string_view text, std::u32string* out) {
  for (char32_t c : text) {
    if (IsReserved(c)) out->push_back(U'\\');
    out->push_back(c);
  }
}

}  // namespace inline_detail

// Parses one unit line. Fails with diagnostics on malformed markup.
inline UnitParseResult ParseUnit(std::u32string_view line, std::size_t line_no = 1) {
  return inline_detail::UnitParser(line, line_no).Run();
}

inline UnitParseResult ParseUnit(std::string_view utf8_line, std::size_t line_no = 1) {
  std::u32string line;
  Utf8Error err;
  if (!DecodeUtf8(utf8_line, &line, &err)) {
    return UnitParseResult::Failure(
        {{"P010", line_no, err.codepoint_index + 1, "invalid UTF-8"}});
  }
  return ParseUnit(std::u32string_view(line), line_no);
}

// Canonical serialization of one unit (no trailing newline).
inline std::u32string EmitUnitU32(const LabelingUnit& unit) {
  using inline_detail::AppendEscaped;
  std::u32string out;
  out.reserve(unit.text.size() + unit.elements.size() * 10);
  const std::u32string_view text(unit.text);
  std::size_t pos = 0;

  const auto gap = [&](std::size_t end) {
    if (pos < end) {
      if (out.empty() && text[pos] == U'#') out.push_back(U'\\');
      AppendEscaped(text.substr(pos, end - pos), &out);
    }
    pos = end;
  };
  const auto segment = [&](const Segment& s) {
    if (!s.head) {
      AppendEscaped(text.substr(s.span.start, s.span.size()), &out);
      return;
    }
    AppendEscaped(text.substr(s.span.start, s.head->start - s.span.start), &out);
    out.push_back(U'(');
    AppendEscaped(text.substr(s.head->start, s.head->size()), &out);
    out.push_back(U')');
    AppendEscaped(text.substr(s.head->end, s.span.end - s.head->end), &out);
  };

  for (const Element& e : unit.elements) {
    gap(e.span.start);
    out.push_back(U'[');
    for (char c : e.tag().str()) out.push_back(static_cast<char32_t>(c));
    out.push_back(U' ');
    if (e.trigger) {
      segment(*e.trigger);
      out.push_back(U'-');
    }
    segment(e.body);
    out.push_back(U']');
    pos = e.span.end;
  }
  gap(text.size());
  return out;
}

inline std::string EmitUnit(const LabelingUnit& unit) { return EncodeUtf8(EmitUnitU32(unit)); }

struct ParsedDocument {
  Document document;
  std::vector<ParseDiagnostic> diagnostics;
  std::vector<std::size_t> unit_lines;  // 1-based source line of each unit
};

// Parses a whole inline file. Lines that fail are omitted from the document
// and reported; invalid UTF-8 yields a single fatal P010.
inline ParsedDocument ParseDocument(std::string_view source) {
  ParsedDocument result;
  std::u32string text;
  Utf8Error err;
  if (!DecodeUtf8(source, &text, &err)) {
    std::size_t line = 1, line_start = 0;
    for (std::size_t b = 0; b < err.byte_offset; ++b) {
      if (source[b] == '\n') ++line, line_start = b + 1;
    }
    std::u32string prefix;
    DecodeUtf8(source.substr(line_start, err.byte_offset - line_start), &prefix);
    result.diagnostics.push_back({"P010", line, prefix.size() + 1, "invalid UTF-8 input"});
    return result;
  }

  bool have_id = false;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  const std::u32string_view all(text);
  while (pos < all.size()) {
    std::size_t nl = all.find(U'\n', pos);
    if (nl == std::u32string_view::npos) nl = all.size();
    const std::u32string_view line = all.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (line.empty()) continue;
    if (line.front() == U'#') {
      std::string raw = EncodeUtf8(line);
      if (!have_id && raw.rfind("#id:", 0) == 0) {
        std::string_view id = std::string_view(raw).substr(4);
        while (!id.empty() && id.front() == ' ') id.remove_prefix(1);
        while (!id.empty() && id.back() == ' ') id.remove_suffix(1);
        result.document.id = std::string(id);
        have_id = true;
      } else {
        result.document.metadata.push_back(std::move(raw));
      }
      continue;
    }
    auto unit = ParseUnit(line, line_no);
    if (unit) {
      result.document.units.push_back(std::move(unit).value());
      result.unit_lines.push_back(line_no);
    } else {
      const auto& diags = unit.error();
      result.diagnostics.insert(result.diagnostics.end(), diags.begin(), diags.end());
    }
  }
  return result;
}

inline std::string EmitDocument(const Document& doc) {
  std::string out;
  if (!doc.id.empty()) out += "#id: " + doc.id + "\n";
  for (const auto& m : doc.metadata) out += m + "\n";
  for (const auto& unit : doc.units) out += EmitUnit(unit) + "\n";
  return out;
}

}  // namespace phk
