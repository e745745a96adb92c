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

// Proposes labeling-unit boundaries in raw text.
//
// End marks (。；！？, plus any directly following closing quote) give hard
// boundaries. Commas (，、) and clause-linking conjunctions only give
// candidate boundaries by default: whether a comma clause has its own
// predicate head is left to the annotator. A comma that closes a bare time
// expression such as "2015年6月29日凌晨，" is not a clause boundary.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "phk/utf8.hpp"

namespace phk {

enum class BoundaryKind { kHard, kCandidate };
enum class BoundaryCause { kEndMark, kComma, kConjunction };
enum class CommaPolicy { kCandidate, kHard, kIgnore };
enum class SplitPolicy { kHardOnly, kAll };

constexpr std::string_view Name(BoundaryKind k) {
  return k == BoundaryKind::kHard ? "hard" : "candidate";
}

constexpr std::string_view Name(BoundaryCause c) {
  switch (c) {
    case BoundaryCause::kEndMark: return "end_mark";
    case BoundaryCause::kComma: return "comma";
    case BoundaryCause::kConjunction: return "conjunction";
  }
  return "?";
}

inline std::optional<CommaPolicy> CommaPolicyFromName(std::string_view s) {
  if (s == "candidate") return CommaPolicy::kCandidate;
  if (s == "hard") return CommaPolicy::kHard;
  if (s == "ignore") return CommaPolicy::kIgnore;
  return std::nullopt;
}

struct SegmentBoundary {
  std::size_t position = 0;  // the boundary falls after this codepoint
  BoundaryKind kind = BoundaryKind::kCandidate;
  BoundaryCause cause = BoundaryCause::kComma;

  friend bool operator==(const SegmentBoundary&, const SegmentBoundary&) = default;
};

inline std::vector<std::u32string> DefaultConjunctions() {
  return {U"并", U"并且", U"且", U"和", U"而且", U"但是", U"然后"};
}

inline std::vector<std::u32string> DefaultTimeWords() {
  return {U"凌晨", U"早上", U"早晨", U"上午", U"中午", U"下午", U"傍晚", U"晚上",
          U"晚间", U"夜间", U"深夜", U"半夜", U"当天", U"当日", U"当晚", U"次日",
          U"许", U"左右", U"前后", U"期间", U"年", U"月", U"日", U"号", U"时",
          U"点", U"分", U"秒"};
}

class SegmenterConfig {
 public:
  SegmenterConfig() : SegmenterConfig(DefaultConjunctions()) {}
  explicit SegmenterConfig(std::vector<std::u32string> conjunctions,
                           CommaPolicy commas = CommaPolicy::kCandidate)
      : commas_(commas), time_words_(DefaultTimeWords()) {
    set_conjunctions(std::move(conjunctions));
  }

  // Drops empty entries and duplicates; longest entries are tried first.
  void set_conjunctions(std::vector<std::u32string> lexicon) {
    std::erase_if(lexicon, [](const std::u32string& s) { return s.empty(); });
    std::sort(lexicon.begin(), lexicon.end(), [](const auto& a, const auto& b) {
      return a.size() != b.size() ? a.size() > b.size() : a < b;
    });
    lexicon.erase(std::unique(lexicon.begin(), lexicon.end()), lexicon.end());
    conjunctions_ = std::move(lexicon);
  }
  const std::vector<std::u32string>& conjunctions() const { return conjunctions_; }

  CommaPolicy commas() const { return commas_; }
  void set_commas(CommaPolicy p) { commas_ = p; }

  // When set, a comma after a pure time expression proposes no boundary.
  bool skip_time_lead() const { return skip_time_lead_; }
  void set_skip_time_lead(bool v) { skip_time_lead_ = v; }
  const std::vector<std::u32string>& time_words() const { return time_words_; }

 private:
  std::vector<std::u32string> conjunctions_;
  CommaPolicy commas_ = CommaPolicy::kCandidate;
  bool skip_time_lead_ = true;
  std::vector<std::u32string> time_words_;
};

namespace segmenter_detail {

constexpr bool IsEndMark(char32_t c) {
  return c == U'。' || c == U'；' || c == U'！' || c == U'？';
}
constexpr bool IsClosingQuote(char32_t c) { return c == U'”' || c == U'』' || c == U'」'; }
constexpr bool IsComma(char32_t c) { return c == U'，' || c == U'、'; }

constexpr bool IsNumeral(char32_t c) {
  return (c >= U'0' && c <= U'9') || (c >= U'０' && c <= U'９') || c == U'〇' ||
         c == U'零' || c == U'一' || c == U'二' || c == U'两' || c == U'三' ||
         c == U'四' || c == U'五' || c == U'六' || c == U'七' || c == U'八' ||
         c == U'九' || c == U'十' || c == U'半';
}

inline bool IsTimeExpression(std::u32string_view s, const std::vector<std::u32string>& words) {
  if (s.empty()) return false;
  std::size_t i = 0;
  bool saw_word = false;
  while (i < s.size()) {
    if (IsNumeral(s[i])) {
      ++i;
      continue;
    }
    bool matched = false;
    for (const auto& w : words) {
      if (s.substr(i, w.size()) == w) {
        i += w.size();
        matched = saw_word = true;
        break;
      }
    }
    if (!matched) return false;
  }
  return saw_word;
}

}  // namespace segmenter_detail

inline std::vector<SegmentBoundary> ProposeBoundaries(std::u32string_view text,
                                                      const SegmenterConfig& config) {
  using namespace segmenter_detail;
  std::map<std::size_t, SegmentBoundary> found;
  const auto add = [&](std::size_t pos, BoundaryKind kind, BoundaryCause cause) {
    auto [it, inserted] = found.try_emplace(pos, SegmentBoundary{pos, kind, cause});
    if (!inserted && kind == BoundaryKind::kHard && it->second.kind != BoundaryKind::kHard) {
      it->second = SegmentBoundary{pos, kind, cause};
    }
  };
  const auto last_boundary_end = [&]() -> std::size_t {
    return found.empty() ? 0 : found.rbegin()->first + 1;
  };

  std::size_t i = 0;
  while (i < text.size()) {
    const char32_t c = text[i];
    if (IsEndMark(c)) {
      std::size_t j = i;
      while (j + 1 < text.size() && IsClosingQuote(text[j + 1])) ++j;
      add(j, BoundaryKind::kHard, BoundaryCause::kEndMark);
      i = j + 1;
      continue;
    }
    if (IsComma(c) && config.commas() != CommaPolicy::kIgnore) {
      const std::size_t from = last_boundary_end();
      const bool time_lead = config.skip_time_lead() && from <= i &&
                             IsTimeExpression(text.substr(from, i - from), config.time_words());
      if (!time_lead) {
        add(i, config.commas() == CommaPolicy::kHard ? BoundaryKind::kHard
                                                     : BoundaryKind::kCandidate,
            BoundaryCause::kComma);
      }
      ++i;
      continue;
    }
    std::size_t matched = 0;
    for (const auto& conj : config.conjunctions()) {
      if (text.substr(i, conj.size()) == conj) {
        matched = conj.size();
        break;
      }
    }
    if (matched > 0) {
      if (i > 0) add(i - 1, BoundaryKind::kCandidate, BoundaryCause::kConjunction);
      i += matched;
      continue;
    }
    ++i;
  }

  std::vector<SegmentBoundary> out;
  out.reserve(found.size());
  for (const auto& [pos, b] : found) {
    if (pos + 1 < text.size()) out.push_back(b);
  }
  return out;
}

inline std::vector<std::u32string> Split(std::u32string_view text, const SegmenterConfig& config,
                                         SplitPolicy policy) {
  std::vector<std::u32string> pieces;
  std::size_t start = 0;
  for (const auto& b : ProposeBoundaries(text, config)) {
    if (policy == SplitPolicy::kHardOnly && b.kind != BoundaryKind::kHard) continue;
    if (b.position + 1 > start) {
      pieces.emplace_back(text.substr(start, b.position + 1 - start));
    }
    start = b.position + 1;
  }
  if (start < text.size()) pieces.emplace_back(text.substr(start));
  return pieces;
}

}  // namespace phk
