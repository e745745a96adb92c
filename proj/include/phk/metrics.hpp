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

// Corpus statistics and two-annotator agreement.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "phk/expected.hpp"
#include "phk/model.hpp"

namespace phk {

// ---------------------------------------------------------------------------
// Statistics

struct StatsReport {
  std::size_t units = 0;
  std::size_t elements = 0;
  std::size_t unc_units = 0;
  std::array<std::size_t, kAllElementTypes.size()> by_kind{};
  std::array<std::size_t, kAllPatterns.size()> by_pattern{};
  std::array<std::size_t, kAllForms.size()> by_form{};
  std::map<std::string, std::size_t> by_tag;               // "SUB-W" -> n
  std::map<std::size_t, std::size_t> unit_length;          // codepoints -> units
  std::map<std::size_t, std::size_t> elements_per_unit;    // elements -> units

  std::size_t kind(ElementType t) const { return by_kind[static_cast<std::size_t>(t)]; }
  std::size_t pattern(PredicatePattern p) const { return by_pattern[static_cast<std::size_t>(p)]; }
  std::size_t form(ElementForm f) const { return by_form[static_cast<std::size_t>(f)]; }
  std::size_t tag(std::string_view t) const {
    auto it = by_tag.find(std::string(t));
    return it == by_tag.end() ? 0 : it->second;
  }

  StatsReport& operator+=(const StatsReport& o) {
    units += o.units;
    elements += o.elements;
    unc_units += o.unc_units;
    for (std::size_t i = 0; i < by_kind.size(); ++i) by_kind[i] += o.by_kind[i];
    for (std::size_t i = 0; i < by_pattern.size(); ++i) by_pattern[i] += o.by_pattern[i];
    for (std::size_t i = 0; i < by_form.size(); ++i) by_form[i] += o.by_form[i];
    for (const auto& [k, v] : o.by_tag) by_tag[k] += v;
    for (const auto& [k, v] : o.unit_length) unit_length[k] += v;
    for (const auto& [k, v] : o.elements_per_unit) elements_per_unit[k] += v;
    return *this;
  }
  friend StatsReport operator+(StatsReport a, const StatsReport& b) { return a += b; }
  friend bool operator==(const StatsReport&, const StatsReport&) = default;
};

inline void AccumulateStats(const Document& doc, StatsReport* report) {
  for (const auto& unit : doc.units) {
    ++report->units;
    ++report->unit_length[unit.text.size()];
    ++report->elements_per_unit[unit.elements.size()];
    if (CountKind(unit, ElementType::kUnc) > 0) ++report->unc_units;
    for (const auto& e : unit.elements) {
      ++report->elements;
      ++report->by_kind[static_cast<std::size_t>(e.kind)];
      if (e.pattern) ++report->by_pattern[static_cast<std::size_t>(*e.pattern)];
      if (e.form) ++report->by_form[static_cast<std::size_t>(*e.form)];
      ++report->by_tag[e.tag().str()];
    }
  }
}

inline StatsReport CorpusStats(std::span<const Document> docs) {
  StatsReport report;
  for (const auto& doc : docs) AccumulateStats(doc, &report);
  return report;
}

// ---------------------------------------------------------------------------
// Agreement

enum class MatchCriterion { kExact, kTypeOnly, kHeadOverlap };

constexpr std::string_view Name(MatchCriterion c) {
  switch (c) {
    case MatchCriterion::kExact: return "exact";
    case MatchCriterion::kTypeOnly: return "type_only";
    case MatchCriterion::kHeadOverlap: return "head_overlap";
  }
  return "?";
}

struct AgreementConfig {
  MatchCriterion criterion = MatchCriterion::kExact;
  bool normalize_rai = false;  // compare RAI as COM
};

struct AgreementError {
  std::string code;  // AGR001 text mismatch, AGR002 unit count mismatch
  std::string message;
};

struct SpanCounts {
  std::size_t matched = 0;
  std::size_t only_a = 0;  // reference elements without a counterpart
  std::size_t only_b = 0;  // predicted elements without a counterpart

  // b is the prediction, a the reference. An empty scope on both sides
  // agrees vacuously.
  double precision() const {
    if (matched + only_a + only_b == 0) return 1.0;
    return matched + only_b == 0 ? 0.0 : double(matched) / double(matched + only_b);
  }
  double recall() const {
    if (matched + only_a + only_b == 0) return 1.0;
    return matched + only_a == 0 ? 0.0 : double(matched) / double(matched + only_a);
  }
  double f1() const {
    const double p = precision(), r = recall();
    return p + r == 0.0 ? 0.0 : 2.0 * p * r / (p + r);
  }

  SpanCounts& operator+=(const SpanCounts& o) {
    matched += o.matched;
    only_a += o.only_a;
    only_b += o.only_b;
    return *this;
  }
  friend bool operator==(const SpanCounts&, const SpanCounts&) = default;
};

struct SpanAgreement {
  MatchCriterion criterion = MatchCriterion::kExact;
  SpanCounts micro;
  std::map<ElementType, SpanCounts> per_kind;  // only kinds seen on either side
};

struct AgreementReport {
  AgreementConfig config;
  SpanAgreement spans;
  // nullopt when chance agreement is 1 (degenerate marginals) or no text.
  std::optional<double> kappa;
};

namespace metrics_detail {

inline bool Matches(const Element& a, const Element& b, MatchCriterion criterion) {
  if (a.kind != b.kind) return false;
  switch (criterion) {
    case MatchCriterion::kExact:
      return a.span == b.span && a.pattern == b.pattern && a.form == b.form;
    case MatchCriterion::kTypeOnly:
      return a.span == b.span;
    case MatchCriterion::kHeadOverlap:
      return HeadOrSpan(a).Overlaps(HeadOrSpan(b));
  }
  return false;
}

inline std::optional<AgreementError> CheckAligned(const Document& a, const Document& b) {
  if (a.units.size() != b.units.size()) {
    return AgreementError{"AGR002", "unit count mismatch: " + std::to_string(a.units.size()) +
                                        " vs " + std::to_string(b.units.size())};
  }
  for (std::size_t i = 0; i < a.units.size(); ++i) {
    if (a.units[i].text != b.units[i].text) {
      return AgreementError{"AGR001", "unit text mismatch at index " + std::to_string(i)};
    }
  }
  return std::nullopt;
}

inline Document NormalizeRai(Document doc) {
  for (auto& unit : doc.units) {
    for (auto& e : unit.elements) {
      if (e.kind == ElementType::kRai) e.kind = ElementType::kCom;
    }
  }
  return doc;
}

}  // namespace metrics_detail

// Greedy one-to-one matching of the elements of two aligned units. Candidate
// pairs are visited left to right by (min start, max start, min end,
// max end); the order is symmetric in a and b, so swapping the inputs
// yields the mirrored matching. Returns matched (index in a, index in b).
inline std::vector<std::pair<std::size_t, std::size_t>> MatchElements(
    const LabelingUnit& a, const LabelingUnit& b, MatchCriterion criterion) {
  struct Candidate {
    std::tuple<std::size_t, std::size_t, std::size_t, std::size_t, std::size_t> key;
    std::size_t ia, ib;
  };
  std::vector<Candidate> candidates;
  for (std::size_t i = 0; i < a.elements.size(); ++i) {
    for (std::size_t j = 0; j < b.elements.size(); ++j) {
      if (!metrics_detail::Matches(a.elements[i], b.elements[j], criterion)) continue;
      const Span& sa = a.elements[i].span;
      const Span& sb = b.elements[j].span;
      candidates.push_back({{std::min(sa.start, sb.start), std::max(sa.start, sb.start),
                             std::min(sa.end, sb.end), std::max(sa.end, sb.end), sa.start},
                            i, j});
    }
  }
  std::sort(candidates.begin(), candidates.end(),
            [](const Candidate& x, const Candidate& y) { return x.key < y.key; });
  std::vector<bool> used_a(a.elements.size()), used_b(b.elements.size());
  std::vector<std::pair<std::size_t, std::size_t>> matches;
  for (const auto& c : candidates) {
    if (used_a[c.ia] || used_b[c.ib]) continue;
    used_a[c.ia] = used_b[c.ib] = true;
    matches.emplace_back(c.ia, c.ib);
  }
  std::sort(matches.begin(), matches.end());
  return matches;
}

inline Expected<SpanAgreement, AgreementError> ComputeSpanAgreement(
    const Document& a, const Document& b, MatchCriterion criterion) {
  if (auto err = metrics_detail::CheckAligned(a, b)) {
    return Expected<SpanAgreement, AgreementError>::Failure(*err);
  }
  SpanAgreement out;
  out.criterion = criterion;
  for (std::size_t u = 0; u < a.units.size(); ++u) {
    const auto& ua = a.units[u];
    const auto& ub = b.units[u];
    const auto matches = MatchElements(ua, ub, criterion);
    std::vector<bool> hit_a(ua.elements.size()), hit_b(ub.elements.size());
    for (auto [i, j] : matches) {
      hit_a[i] = hit_b[j] = true;
      ++out.per_kind[ua.elements[i].kind].matched;
    }
    for (std::size_t i = 0; i < ua.elements.size(); ++i) {
      if (!hit_a[i]) ++out.per_kind[ua.elements[i].kind].only_a;
    }
    for (std::size_t j = 0; j < ub.elements.size(); ++j) {
      if (!hit_b[j]) ++out.per_kind[ub.elements[j].kind].only_b;
    }
  }
  for (const auto& [kind, counts] : out.per_kind) out.micro += counts;
  return out;
}

// Per-character Cohen's kappa over element kinds (O outside elements).
inline Expected<std::optional<double>, AgreementError> CharKappa(const Document& a,
                                                                 const Document& b) {
  if (auto err = metrics_detail::CheckAligned(a, b)) {
    return Expected<std::optional<double>, AgreementError>::Failure(*err);
  }
  static constexpr std::size_t kOutside = kAllElementTypes.size();
  std::array<std::int64_t, kOutside + 1> count_a{}, count_b{};
  std::int64_t total = 0, agree = 0;
  std::vector<std::size_t> la, lb;
  const auto label = [](const LabelingUnit& unit, std::vector<std::size_t>* out) {
    out->assign(unit.text.size(), kOutside);
    for (const auto& e : unit.elements) {
      for (std::size_t i = e.span.start; i < e.span.end; ++i) {
        (*out)[i] = static_cast<std::size_t>(e.kind);
      }
    }
  };
  for (std::size_t u = 0; u < a.units.size(); ++u) {
    label(a.units[u], &la);
    label(b.units[u], &lb);
    for (std::size_t i = 0; i < la.size(); ++i) {
      ++count_a[la[i]];
      ++count_b[lb[i]];
      ++total;
      if (la[i] == lb[i]) ++agree;
    }
  }
  std::int64_t chance = 0;  // N^2 * p_e
  for (std::size_t k = 0; k <= kOutside; ++k) chance += count_a[k] * count_b[k];
  const std::int64_t n2 = total * total;
  if (total == 0 || chance == n2) return std::optional<double>{};
  if (agree == total) return std::optional<double>{1.0};
  return std::optional<double>{double(total * agree - chance) / double(n2 - chance)};
}

inline Expected<AgreementReport, AgreementError> Agree(const Document& a, const Document& b,
                                                       const AgreementConfig& config = {}) {
  const Document* pa = &a;
  const Document* pb = &b;
  Document na, nb;
  if (config.normalize_rai) {
    na = metrics_detail::NormalizeRai(a);
    nb = metrics_detail::NormalizeRai(b);
    pa = &na;
    pb = &nb;
  }
  auto spans = ComputeSpanAgreement(*pa, *pb, config.criterion);
  if (!spans) return Expected<AgreementReport, AgreementError>::Failure(spans.error());
  auto kappa = CharKappa(*pa, *pb);
  return AgreementReport{config, std::move(spans).value(), *kappa};
}

}  // namespace phk
