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

// Annotation model for predicate-head corpora.
//
// A LabelingUnit holds the plain natural-language text of one sentence or
// clause together with a flat, ordered list of annotated elements. Every
// offset is a codepoint offset into that plain text; brackets, tags, head
// parentheses and the trigger separator exist only in serialized forms.
//
//   [ADV-P 多次(向)-被告人]   text "多次向被告人"
//          ^^^^^^^^          trigger segment [0,3), head [2,3)
//                  ^         separator at offset 3 (zero width)
//                   ^^^^^    body segment [3,6)

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "phk/utf8.hpp"

namespace phk {

enum class ElementType : std::uint8_t { kPre, kSub, kTem, kLoc, kAdv, kCom, kUnc, kRai };
enum class PredicatePattern : std::uint8_t { kS, kR, kL, kM, kV };
enum class ElementForm : std::uint8_t { kW, kP, kC };

inline constexpr std::array<ElementType, 8> kAllElementTypes = {
    ElementType::kPre, ElementType::kSub, ElementType::kTem, ElementType::kLoc,
    ElementType::kAdv, ElementType::kCom, ElementType::kUnc, ElementType::kRai};
inline constexpr std::array<PredicatePattern, 5> kAllPatterns = {
    PredicatePattern::kS, PredicatePattern::kR, PredicatePattern::kL,
    PredicatePattern::kM, PredicatePattern::kV};
inline constexpr std::array<ElementForm, 3> kAllForms = {
    ElementForm::kW, ElementForm::kP, ElementForm::kC};

constexpr std::string_view Name(ElementType t) {
  switch (t) {
    case ElementType::kPre: return "PRE";
    case ElementType::kSub: return "SUB";
    case ElementType::kTem: return "TEM";
    case ElementType::kLoc: return "LOC";
    case ElementType::kAdv: return "ADV";
    case ElementType::kCom: return "COM";
    case ElementType::kUnc: return "UNC";
    case ElementType::kRai: return "RAI";
  }
  return "?";
}

constexpr std::string_view Name(PredicatePattern p) {
  switch (p) {
    case PredicatePattern::kS: return "S";
    case PredicatePattern::kR: return "R";
    case PredicatePattern::kL: return "L";
    case PredicatePattern::kM: return "M";
    case PredicatePattern::kV: return "V";
  }
  return "?";
}

constexpr std::string_view Name(ElementForm f) {
  switch (f) {
    case ElementForm::kW: return "W";
    case ElementForm::kP: return "P";
    case ElementForm::kC: return "C";
  }
  return "?";
}

inline std::optional<ElementType> ElementTypeFromName(std::string_view s) {
  for (auto t : kAllElementTypes) {
    if (Name(t) == s) return t;
  }
  return std::nullopt;
}

inline std::optional<PredicatePattern> PatternFromName(std::string_view s) {
  for (auto p : kAllPatterns) {
    if (Name(p) == s) return p;
  }
  return std::nullopt;
}

inline std::optional<ElementForm> FormFromName(std::string_view s) {
  for (auto f : kAllForms) {
    if (Name(f) == s) return f;
  }
  return std::nullopt;
}

// Half-open codepoint range [start, end).
struct Span {
  std::size_t start = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - start; }
  bool empty() const { return end <= start; }
  bool Contains(const Span& o) const { return start <= o.start && o.end <= end; }
  bool Contains(std::size_t pos) const { return start <= pos && pos < end; }
  bool Overlaps(const Span& o) const { return start < o.end && o.start < end; }

  friend bool operator==(const Span&, const Span&) = default;
};

struct Segment {
  Span span;
  std::optional<Span> head;

  friend bool operator==(const Segment&, const Segment&) = default;
};

// The kind/subtag triple written as e.g. "PRE-S", "ADV-P", "UNC".
struct Tag {
  ElementType kind = ElementType::kUnc;
  std::optional<PredicatePattern> pattern;
  std::optional<ElementForm> form;

  // kind/pattern/form compatibility.
  bool valid() const {
    switch (kind) {
      case ElementType::kPre:
        return pattern.has_value() && !form.has_value();
      case ElementType::kUnc:
        return !pattern.has_value() && !form.has_value();
      default:
        return form.has_value() && !pattern.has_value();
    }
  }

  std::string subtag() const {
    if (pattern) return std::string(Name(*pattern));
    if (form) return std::string(Name(*form));
    return {};
  }

  std::string str() const {
    std::string out(Name(kind));
    if (auto sub = subtag(); !sub.empty()) out += "-" + sub;
    return out;
  }

  friend bool operator==(const Tag&, const Tag&) = default;
};

// Parses "KIND" or "KIND-SUB"; nullopt for unknown names or illegal
// combinations such as PRE-W or SUB-S.
inline std::optional<Tag> ParseTag(std::string_view kind, std::string_view sub) {
  auto k = ElementTypeFromName(kind);
  if (!k) return std::nullopt;
  Tag tag{*k, std::nullopt, std::nullopt};
  if (!sub.empty()) {
    if (*k == ElementType::kPre) {
      tag.pattern = PatternFromName(sub);
      if (!tag.pattern) return std::nullopt;
    } else {
      tag.form = FormFromName(sub);
      if (!tag.form) return std::nullopt;
    }
  }
  if (!tag.valid()) return std::nullopt;
  return tag;
}

inline std::optional<Tag> ParseTag(std::string_view full) {
  auto dash = full.find('-');
  if (dash == std::string_view::npos) return ParseTag(full, {});
  if (dash + 1 == full.size()) return std::nullopt;
  return ParseTag(full.substr(0, dash), full.substr(dash + 1));
}

struct Element {
  ElementType kind = ElementType::kUnc;
  std::optional<PredicatePattern> pattern;
  std::optional<ElementForm> form;
  Span span;
  std::optional<Segment> trigger;
  Segment body;
  // Zero-width position of the "-" marker; present iff trigger is present.
  std::optional<std::size_t> separator;

  Tag tag() const { return Tag{kind, pattern, form}; }
  void set_tag(const Tag& t) {
    kind = t.kind;
    pattern = t.pattern;
    form = t.form;
  }

  friend bool operator==(const Element&, const Element&) = default;
};

// Builds a well-formed element from its tag and segment layout.
inline Element MakeElement(const Tag& tag, Segment body,
                           std::optional<Segment> trigger = std::nullopt) {
  Element e;
  e.set_tag(tag);
  e.body = body;
  e.span = body.span;
  if (trigger) {
    e.trigger = trigger;
    e.separator = trigger->span.end;
    e.span.start = trigger->span.start;
  }
  return e;
}

// Returns a description of the first violated element invariant, or nullopt.
inline std::optional<std::string> CheckElement(const Element& e,
                                               std::size_t text_length) {
  if (!e.tag().valid()) return "illegal tag combination " + e.tag().str();
  if (e.span.start >= e.span.end) return std::string("empty element span");
  if (e.span.end > text_length) return std::string("element span out of bounds");
  const auto check_segment = [](const Segment& s) -> std::optional<std::string> {
    if (s.span.empty()) return std::string("empty segment");
    if (s.head) {
      if (s.head->empty()) return std::string("empty head");
      if (!s.span.Contains(*s.head)) return std::string("head outside its segment");
    }
    return std::nullopt;
  };
  if (auto err = check_segment(e.body)) return err;
  if (e.trigger.has_value() != e.separator.has_value()) {
    return std::string("trigger and separator must appear together");
  }
  if (e.trigger) {
    if (auto err = check_segment(*e.trigger)) return err;
    if (e.trigger->span.start != e.span.start || e.trigger->span.end != *e.separator ||
        e.body.span.start != *e.separator || e.body.span.end != e.span.end) {
      return std::string("trigger, separator and body do not tile the element");
    }
  } else if (e.body.span != e.span) {
    return std::string("body does not cover the element");
  }
  return std::nullopt;
}

struct LabelingUnit {
  std::u32string text;
  std::vector<Element> elements;

  friend bool operator==(const LabelingUnit&, const LabelingUnit&) = default;
};

inline std::optional<std::string> CheckUnit(const LabelingUnit& unit) {
  const std::size_t n = unit.text.size();
  for (std::size_t i = 0; i < unit.elements.size(); ++i) {
    if (auto err = CheckElement(unit.elements[i], n)) {
      return "element " + std::to_string(i) + ": " + *err;
    }
    if (i > 0 && unit.elements[i].span.start < unit.elements[i - 1].span.end) {
      return "element " + std::to_string(i) + " overlaps or precedes element " +
             std::to_string(i - 1);
    }
  }
  return std::nullopt;
}

struct Document {
  std::string id;
  std::vector<std::string> metadata;  // raw comment lines, without '\n'
  std::vector<LabelingUnit> units;

  friend bool operator==(const Document&, const Document&) = default;
};

inline const std::u32string& UnitSurface(const LabelingUnit& unit) { return unit.text; }

inline std::u32string ElementSurface(const LabelingUnit& unit, const Element& element) {
  if (element.span.start > element.span.end || element.span.end > unit.text.size()) {
    throw std::logic_error("element span outside unit text: corrupted model");
  }
  return unit.text.substr(element.span.start, element.span.size());
}

inline std::u32string SpanText(const LabelingUnit& unit, const Span& span) {
  if (span.start > span.end || span.end > unit.text.size()) {
    throw std::logic_error("span outside unit text: corrupted model");
  }
  return unit.text.substr(span.start, span.size());
}

// Body head if present, otherwise the whole element span.
inline Span HeadOrSpan(const Element& e) { return e.body.head.value_or(e.span); }

inline std::size_t CountKind(const LabelingUnit& unit, ElementType kind) {
  return static_cast<std::size_t>(std::count_if(
      unit.elements.begin(), unit.elements.end(),
      [kind](const Element& e) { return e.kind == kind; }));
}

}  // namespace phk
