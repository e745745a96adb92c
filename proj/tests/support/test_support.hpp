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

// Shared fixtures, random generators and independent oracles for tests.

#include <cstddef>
#include <fstream>
#include <map>
#include <utility>
#include <iterator>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "phk/model.hpp"
#include "phk/utf8.hpp"

namespace phk::testing {

inline std::string ReadTestData(const std::string& name) {
  std::ifstream in(std::string(PHK_TESTDATA_DIR) + "/" + name, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

inline std::vector<std::string> Lines(std::string_view text) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    out.emplace_back(text.substr(pos, nl - pos));
    pos = nl + 1;
  }
  return out;
}

// Strips inline markup with a character scan that shares no code with the
// parser: tags up to the first space after '[', brackets, parens and
// unescaped '-' inside brackets are dropped, escapes resolved.
inline std::u32string StripMarkup(std::u32string_view line) {
  std::u32string out;
  bool in_element = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char32_t c = line[i];
    if (c == U'\\' && i + 1 < line.size()) {
      out.push_back(line[++i]);
    } else if (c == U'[') {
      in_element = true;
      while (i < line.size() && line[i] != U' ') ++i;
    } else if (c == U']') {
      in_element = false;
    } else if (c == U'(' || c == U')') {
      // head markers
    } else if (c == U'-' && in_element) {
      // separator
    } else {
      out.push_back(c);
    }
  }
  return out;
}

class CorpusGenerator {
 public:
  explicit CorpusGenerator(std::uint32_t seed) : rng_(seed) {}

  std::size_t Uniform(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
  }
  bool Coin(double p) { return std::bernoulli_distribution(p)(rng_); }
  std::mt19937& rng() { return rng_; }

  char32_t Char() {
    static const std::u32string kPool =
        U"的一是在不了有和人这中大为上个国我以要他时来用们生到作地于出就分对成会可主发年动"
        U"被把陈某滕刀砖头并且但然后，。；！？、”」』"
        U"abcXYZ019 \t[]()-\\#";
    return kPool[Uniform(0, kPool.size() - 1)];
  }

  Tag RandomTag() {
    const auto kind = kAllElementTypes[Uniform(0, kAllElementTypes.size() - 1)];
    Tag t{kind, std::nullopt, std::nullopt};
    if (kind == ElementType::kPre) {
      t.pattern = kAllPatterns[Uniform(0, kAllPatterns.size() - 1)];
    } else if (kind != ElementType::kUnc) {
      t.form = kAllForms[Uniform(0, kAllForms.size() - 1)];
    }
    return t;
  }

  std::optional<Span> RandomHead(const Span& s) {
    if (!Coin(0.4)) return std::nullopt;
    const std::size_t a = Uniform(s.start, s.end - 1);
    const std::size_t b = Uniform(a + 1, s.end);
    return Span{a, b};
  }

  LabelingUnit Unit() {
    std::u32string text;
    for (std::size_t i = Uniform(1, 24); i > 0; --i) text.push_back(Char());
    return Annotate(std::move(text));
  }

  // Random flat annotation over the given text.
  LabelingUnit Annotate(std::u32string text) {
    LabelingUnit unit;
    unit.text = std::move(text);
    const std::size_t n = unit.text.size();
    std::size_t pos = 0;
    while (pos < n) {
      if (!Coin(0.35)) {
        ++pos;
        continue;
      }
      const std::size_t len = Uniform(1, std::min<std::size_t>(8, n - pos));
      const Span span{pos, pos + len};
      std::optional<Segment> trigger;
      Segment body{span, std::nullopt};
      if (len >= 2 && Coin(0.4)) {
        const std::size_t cut = Uniform(pos + 1, pos + len - 1);
        trigger = Segment{{pos, cut}, std::nullopt};
        trigger->head = RandomHead(trigger->span);
        body.span = Span{cut, pos + len};
      }
      body.head = RandomHead(body.span);
      unit.elements.push_back(MakeElement(RandomTag(), body, trigger));
      pos += len + Uniform(0, 2);
    }
    return unit;
  }

  Document Doc(bool with_metadata = true) {
    Document doc;
    if (Coin(0.7)) doc.id = "doc" + std::to_string(Uniform(0, 99999));
    if (with_metadata) {
      for (std::size_t i = Uniform(0, 2); i > 0; --i) {
        doc.metadata.push_back("# note " + std::to_string(Uniform(0, 999)));
      }
    }
    for (std::size_t i = Uniform(0, 8); i > 0; --i) doc.units.push_back(Unit());
    return doc;
  }

 private:
  std::mt19937 rng_;
};

// Independent kappa: explicit confusion matrix over string labels.
inline double BruteForceKappa(const Document& a, const Document& b) {
  std::map<std::pair<std::string, std::string>, double> confusion;
  double n = 0;
  const auto labels = [](const LabelingUnit& u) {
    std::vector<std::string> out(u.text.size(), "O");
    for (const auto& e : u.elements) {
      for (std::size_t i = e.span.start; i < e.span.end; ++i) out[i] = std::string(Name(e.kind));
    }
    return out;
  };
  for (std::size_t u = 0; u < a.units.size(); ++u) {
    const auto la = labels(a.units[u]), lb = labels(b.units[u]);
    for (std::size_t i = 0; i < la.size(); ++i) confusion[{la[i], lb[i]}] += 1, n += 1;
  }
  std::map<std::string, double> row, col;
  double diag = 0;
  for (const auto& [k, v] : confusion) {
    row[k.first] += v / n;
    col[k.second] += v / n;
    if (k.first == k.second) diag += v / n;
  }
  double pe = 0;
  for (const auto& [k, v] : row) pe += v * (col.count(k) ? col[k] : 0.0);
  return (diag - pe) / (1 - pe);
}


inline std::pair<Document, Document> RandomPair(testing::CorpusGenerator& gen) {
  Document a = gen.Doc(false);
  if (a.units.empty()) a.units.push_back(gen.Unit());
  Document b;
  for (const auto& u : a.units) {
    if (gen.Coin(0.5)) {
      b.units.push_back(gen.Annotate(u.text));
    } else {
      LabelingUnit copy = u;
      if (!copy.elements.empty() && gen.Coin(0.5)) {
        copy.elements.erase(copy.elements.begin() + gen.Uniform(0, copy.elements.size() - 1));
      }
      for (auto& e : copy.elements) {
        if (gen.Coin(0.2)) e.set_tag(gen.RandomTag());
      }
      b.units.push_back(std::move(copy));
    }
  }
  return {std::move(a), std::move(b)};
}

}  // namespace phk::testing
