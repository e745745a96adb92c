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

// Guideline conformance checks over parsed units.
//
//   E001 error    non-UNC unit without exactly one PRE element
//   E003 error    PRE-M whose body has no head group
//   E005 error    UNC element that is not the sole, whole-unit element
//   W010 warning  form-P element without a trigger separator
//   W011 warning  PRE element with a trigger separator
//   W020 warning  legacy RAI element (use COM)
//   I040 info     non-ADV element introduced by a 把/被 trigger
//   I041 info     SUB element after the PRE element
//
// Severity is a function of the code alone.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "phk/model.hpp"
#include "phk/utf8.hpp"

namespace phk {

enum class Severity { kError, kWarning, kInfo };

constexpr std::string_view Name(Severity s) {
  switch (s) {
    case Severity::kError: return "error";
    case Severity::kWarning: return "warning";
    case Severity::kInfo: return "info";
  }
  return "?";
}

constexpr Severity SeverityOf(std::string_view code) {
  if (!code.empty() && code.front() == 'W') return Severity::kWarning;
  if (!code.empty() && code.front() == 'I') return Severity::kInfo;
  return Severity::kError;
}

struct Diagnostic {
  std::string code;
  std::size_t unit_index = 0;
  std::optional<Span> span;
  std::string message;

  Severity severity() const { return SeverityOf(code); }

  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

// Unit index, then span start (unit-level findings first), then code.
inline bool DiagnosticOrder(const Diagnostic& a, const Diagnostic& b) {
  const auto key = [](const Diagnostic& d) {
    return std::make_tuple(d.unit_index, d.span.has_value(),
                           d.span ? d.span->start : std::size_t{0}, std::string_view(d.code));
  };
  return key(a) < key(b);
}

inline std::vector<Diagnostic> ValidateUnit(const LabelingUnit& unit, std::size_t unit_index) {
  std::vector<Diagnostic> out;
  const auto add = [&](const char* code, std::optional<Span> span, std::string message) {
    out.push_back({code, unit_index, span, std::move(message)});
  };
  const auto quoted = [&](const Element& e) {
    return e.tag().str() + " '" + EncodeUtf8(ElementSurface(unit, e)) + "'";
  };

  const std::size_t pre_count = CountKind(unit, ElementType::kPre);
  const std::size_t unc_count = CountKind(unit, ElementType::kUnc);
  if (unc_count == 0 && pre_count != 1) {
    add("E001", std::nullopt,
        "labeling unit must contain exactly one predicate head, found " +
            std::to_string(pre_count));
  }

  const Span whole{0, unit.text.size()};
  std::optional<std::size_t> first_pre;
  for (const Element& e : unit.elements) {
    if (e.kind == ElementType::kPre && !first_pre) first_pre = e.span.start;
  }

  for (const Element& e : unit.elements) {
    switch (e.kind) {
      case ElementType::kPre:
        if (e.pattern == PredicatePattern::kM && !e.body.head) {
          add("E003", e.span, quoted(e) + ": modified predicate head needs a (head) verb");
        }
        if (e.trigger) {
          add("W011", e.span, quoted(e) + ": predicate head carries a trigger separator");
        }
        break;
      case ElementType::kUnc:
        if (unit.elements.size() != 1 || e.span != whole) {
          add("E005", e.span, "UNC must be the only element and cover the whole unit");
        }
        break;
      case ElementType::kRai:
        add("W020", e.span, quoted(e) + ": RAI is not a defined role; consider COM");
        break;
      default:
        break;
    }
    if (e.form == ElementForm::kP && !e.trigger) {
      add("W010", e.span, quoted(e) + ": prepositional/verb-object element has no '-' trigger");
    }
    if (e.kind != ElementType::kAdv && e.trigger) {
      const char32_t lead = unit.text[e.trigger->span.start];
      if (lead == U'把' || lead == U'被') {
        add("I040", e.span, quoted(e) + ": Ba/Bei phrase is usually an adverbial element");
      }
    }
    if (e.kind == ElementType::kSub && first_pre && e.span.start > *first_pre) {
      add("I041", e.span, quoted(e) + ": subject follows the predicate head");
    }
  }
  std::stable_sort(out.begin(), out.end(), DiagnosticOrder);
  return out;
}

inline std::vector<Diagnostic> ValidateDocument(const Document& doc) {
  std::vector<Diagnostic> out;
  for (std::size_t i = 0; i < doc.units.size(); ++i) {
    auto unit_diags = ValidateUnit(doc.units[i], i);
    out.insert(out.end(), std::make_move_iterator(unit_diags.begin()),
               std::make_move_iterator(unit_diags.end()));
  }
  return out;
}

inline bool HasErrors(const std::vector<Diagnostic>& diags, bool strict = false) {
  return std::any_of(diags.begin(), diags.end(), [strict](const Diagnostic& d) {
    return d.severity() == Severity::kError || (strict && d.severity() == Severity::kWarning);
  });
}

}  // namespace phk
