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

// Standoff records and per-character column files.
//
// Standoff: one JSON object per document per line,
//   {"id":..,"units":[{"text":..,"elements":[{"kind":"ADV","sub":"P",
//    "start":0,"end":6,"trig_start":0,"trig_end":3,"trig_head_start":2,
//    "trig_head_end":3,"head_start":..,"head_end":..}]}]}
// Absent optionals are omitted. The separator is trig_end. Comment lines of
// the inline source travel in an optional "meta" array.
//
// Columns: "# doc <id>" header, then one "char<TAB>tag<TAB>role" row per
// codepoint, a blank line after every unit. Tags are O or B-/I- plus the
// full element tag; roles are T (trigger), TH (trigger head), B (body),
// H (body head) and O.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "phk/expected.hpp"
#include "phk/model.hpp"
#include "phk/utf8.hpp"

namespace phk {

struct ConvertError {
  std::string code;  // C001..C012
  std::size_t line = 0;  // 1-based input line, 0 when not applicable
  std::string message;
};

using ConvertErrors = std::vector<ConvertError>;

// ---------------------------------------------------------------------------
// Standoff

inline nlohmann::ordered_json ToStandoff(const Document& doc) {
  using nlohmann::ordered_json;
  ordered_json record;
  record["id"] = doc.id;
  if (!doc.metadata.empty()) record["meta"] = doc.metadata;
  ordered_json units = ordered_json::array();
  for (const auto& unit : doc.units) {
    ordered_json u;
    u["text"] = EncodeUtf8(unit.text);
    ordered_json elements = ordered_json::array();
    for (const auto& e : unit.elements) {
      ordered_json el;
      el["kind"] = std::string(Name(e.kind));
      if (auto sub = e.tag().subtag(); !sub.empty()) el["sub"] = sub;
      el["start"] = e.span.start;
      el["end"] = e.span.end;
      if (e.trigger) {
        el["trig_start"] = e.trigger->span.start;
        el["trig_end"] = e.trigger->span.end;
        if (e.trigger->head) {
          el["trig_head_start"] = e.trigger->head->start;
          el["trig_head_end"] = e.trigger->head->end;
        }
      }
      if (e.body.head) {
        el["head_start"] = e.body.head->start;
        el["head_end"] = e.body.head->end;
      }
      elements.push_back(std::move(el));
    }
    u["elements"] = std::move(elements);
    units.push_back(std::move(u));
  }
  record["units"] = std::move(units);
  return record;
}

inline std::string ToStandoffLine(const Document& doc) {
  return ToStandoff(doc).dump(-1, ' ', false, nlohmann::json::error_handler_t::strict) + "\n";
}

namespace convert_detail {

template <typename Json>
std::optional<std::size_t> OptIndex(const Json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) return std::nullopt;
  if (!it->is_number_unsigned()) throw std::invalid_argument(std::string(key) + " must be a non-negative integer");
  return it->template get<std::size_t>();
}

template <typename Json>
std::optional<Span> OptSpan(const Json& obj, const char* start_key, const char* end_key) {
  auto s = OptIndex(obj, start_key);
  auto e = OptIndex(obj, end_key);
  if (s.has_value() != e.has_value()) {
    throw std::invalid_argument(std::string(start_key) + "/" + end_key + " must appear together");
  }
  if (!s) return std::nullopt;
  return Span{*s, *e};
}

}  // namespace convert_detail

// Rebuilds a Document, rejecting records that violate model invariants.
template <typename Json>
Expected<Document, ConvertErrors> FromStandoff(const Json& record, std::size_t line = 0) {
  using convert_detail::OptIndex;
  using convert_detail::OptSpan;
  const auto fail = [line](const char* code, std::string msg) {
    return Expected<Document, ConvertErrors>::Failure({{code, line, std::move(msg)}});
  };
  Document doc;
  try {
    if (!record.is_object()) return fail("C004", "record is not an object");
    doc.id = record.at("id").template get<std::string>();
    if (auto it = record.find("meta"); it != record.end()) {
      doc.metadata = it->template get<std::vector<std::string>>();
    }
    const auto& units = record.at("units");
    if (!units.is_array()) return fail("C004", "units must be an array");
    for (std::size_t ui = 0; ui < units.size(); ++ui) {
      const auto& u = units[ui];
      LabelingUnit unit;
      auto text = DecodeUtf8(u.at("text").template get<std::string>());
      if (!text) return fail("C004", "unit " + std::to_string(ui) + ": invalid UTF-8 text");
      unit.text = std::move(*text);
      const std::string where = "unit " + std::to_string(ui);
      const auto& elements = u.at("elements");
      if (!elements.is_array()) return fail("C004", where + ": elements must be an array");
      for (std::size_t ei = 0; ei < elements.size(); ++ei) {
        const auto& el = elements[ei];
        const std::string ewhere = where + " element " + std::to_string(ei);
        const auto kind = el.at("kind").template get<std::string>();
        std::string sub;
        if (auto it = el.find("sub"); it != el.end()) sub = it->template get<std::string>();
        if (el.contains("sub") && sub.empty()) return fail("C003", ewhere + ": empty subtag");
        auto tag = ParseTag(kind, sub);
        if (!tag) return fail("C003", ewhere + ": illegal tag " + kind + (sub.empty() ? "" : "-" + sub));

        const auto start = OptIndex(el, "start");
        const auto end = OptIndex(el, "end");
        if (!start || !end) return fail("C004", ewhere + ": missing start/end");
        const Span span{*start, *end};
        if (span.start >= span.end || span.end > unit.text.size()) {
          return fail("C001", ewhere + ": span [" + std::to_string(span.start) + "," +
                                  std::to_string(span.end) + ") out of bounds");
        }
        auto trig = OptSpan(el, "trig_start", "trig_end");
        auto trig_head = OptSpan(el, "trig_head_start", "trig_head_end");
        auto head = OptSpan(el, "head_start", "head_end");
        if (trig_head && !trig) return fail("C001", ewhere + ": trigger head without trigger");

        Element e;
        e.set_tag(*tag);
        e.span = span;
        if (trig) {
          e.trigger = Segment{*trig, trig_head};
          e.separator = trig->end;
          e.body = Segment{{trig->end, span.end}, head};
        } else {
          e.body = Segment{span, head};
        }
        if (auto err = CheckElement(e, unit.text.size())) {
          return fail("C001", ewhere + ": " + *err);
        }
        if (!unit.elements.empty() && unit.elements.back().span.end > span.start) {
          return fail("C002", ewhere + ": overlaps or precedes the previous element");
        }
        unit.elements.push_back(std::move(e));
      }
      doc.units.push_back(std::move(unit));
    }
  } catch (const std::exception& ex) {
    return fail("C004", std::string("malformed record: ") + ex.what());
  }
  return doc;
}

struct DocumentStream {
  std::vector<Document> documents;
  ConvertErrors errors;
};

// One record per non-empty line.
inline DocumentStream ParseStandoffStream(std::string_view text) {
  DocumentStream out;
  std::size_t line_no = 0, pos = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    const std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (line.empty()) continue;
    auto json = nlohmann::ordered_json::parse(line, nullptr, false);
    if (json.is_discarded()) {
      out.errors.push_back({"C004", line_no, "line is not a JSON record"});
      continue;
    }
    auto doc = FromStandoff(json, line_no);
    if (doc) {
      out.documents.push_back(std::move(doc).value());
    } else {
      const auto& errs = doc.error();
      out.errors.insert(out.errors.end(), errs.begin(), errs.end());
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Columns

inline std::string ToColumns(const Document& doc) {
  std::string out = "# doc " + doc.id + "\n";
  for (const auto& unit : doc.units) {
    std::vector<std::string> tags(unit.text.size(), "O");
    std::vector<const char*> roles(unit.text.size(), "O");
    for (const auto& e : unit.elements) {
      const std::string tag = e.tag().str();
      for (std::size_t i = e.span.start; i < e.span.end; ++i) {
        tags[i] = (i == e.span.start ? "B-" : "I-") + tag;
        roles[i] = "B";
      }
      if (e.body.head) {
        for (std::size_t i = e.body.head->start; i < e.body.head->end; ++i) roles[i] = "H";
      }
      if (e.trigger) {
        for (std::size_t i = e.trigger->span.start; i < e.trigger->span.end; ++i) {
          roles[i] = e.trigger->head && e.trigger->head->Contains(i) ? "TH" : "T";
        }
      }
    }
    for (std::size_t i = 0; i < unit.text.size(); ++i) {
      AppendUtf8(unit.text[i], &out);
      out += '\t';
      out += tags[i];
      out += '\t';
      out += roles[i];
      out += '\n';
    }
    out += '\n';
  }
  return out;
}

namespace convert_detail {

enum class Role { kO, kT, kTH, kB, kH };

inline std::optional<Role> RoleFromName(std::string_view s) {
  if (s == "O") return Role::kO;
  if (s == "T") return Role::kT;
  if (s == "TH") return Role::kTH;
  if (s == "B") return Role::kB;
  if (s == "H") return Role::kH;
  return std::nullopt;
}

struct Row {
  char32_t character;
  bool begin = false;  // B- tag
  std::string tag;     // empty for O
  Role role = Role::kO;
  std::size_t line = 0;
};

// Derives a segment from per-character roles; head = the single run of
// head_role characters.
inline std::optional<Segment> SegmentFromRoles(const std::vector<Row>& rows, std::size_t from,
                                               std::size_t to, std::size_t offset, Role head_role) {
  Segment seg{{offset + from, offset + to}, std::nullopt};
  std::size_t i = from;
  while (i < to && rows[i].role != head_role) ++i;
  if (i == to) return seg;
  std::size_t j = i;
  while (j < to && rows[j].role == head_role) ++j;
  for (std::size_t k = j; k < to; ++k) {
    if (rows[k].role == head_role) return std::nullopt;  // second head run
  }
  seg.head = Span{offset + i, offset + j};
  return seg;
}

}  // namespace convert_detail

// Reads one or more documents from column text.
inline Expected<std::vector<Document>, ConvertErrors> FromColumns(std::string_view text) {
  using namespace convert_detail;
  using Result = Expected<std::vector<Document>, ConvertErrors>;
  const auto fail = [](const char* code, std::size_t line, std::string msg) {
    return Result::Failure({{code, line, std::move(msg)}});
  };

  std::vector<Document> docs;
  std::vector<Row> rows;

  // Builds a unit from the buffered rows.
  const auto flush = [&]() -> std::optional<ConvertError> {
    if (rows.empty()) return std::nullopt;
    if (docs.empty()) docs.emplace_back();
    LabelingUnit unit;
    for (const auto& r : rows) unit.text.push_back(r.character);
    std::size_t i = 0;
    while (i < rows.size()) {
      if (rows[i].tag.empty()) {
        ++i;
        continue;
      }
      std::size_t j = i + 1;
      while (j < rows.size() && !rows[j].begin && rows[j].tag == rows[i].tag) ++j;
      // rows [i, j) form one element; trigger roles must precede body roles
      std::size_t split = i;
      while (split < j && (rows[split].role == Role::kT || rows[split].role == Role::kTH)) ++split;
      for (std::size_t k = split; k < j; ++k) {
        if (rows[k].role != Role::kB && rows[k].role != Role::kH) {
          return ConvertError{"C011", rows[k].line, "role flag out of order inside element"};
        }
      }
      if (split == j) {
        return ConvertError{"C011", rows[i].line, "element has trigger roles but no body"};
      }
      auto tag = ParseTag(rows[i].tag);
      Element e;
      e.set_tag(*tag);
      e.span = Span{i, j};
      auto body = SegmentFromRoles(rows, split, j, 0, Role::kH);
      if (!body) return ConvertError{"C011", rows[i].line, "more than one head run in body"};
      e.body = *body;
      if (split > i) {
        auto trig = SegmentFromRoles(rows, i, split, 0, Role::kTH);
        if (!trig) return ConvertError{"C011", rows[i].line, "more than one head run in trigger"};
        e.trigger = *trig;
        e.separator = split;
      }
      unit.elements.push_back(std::move(e));
      i = j;
    }
    docs.back().units.push_back(std::move(unit));
    rows.clear();
    return std::nullopt;
  };

  std::size_t line_no = 0, pos = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    const std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (line.empty()) {
      if (auto err = flush()) return Result::Failure({*err});
      continue;
    }
    if (rows.empty() && line.rfind("# doc", 0) == 0 &&
        (line.size() == 5 || line[5] == ' ')) {
      if (auto err = flush()) return Result::Failure({*err});
      docs.emplace_back();
      docs.back().id = std::string(line.size() > 6 ? line.substr(6) : std::string_view{});
      continue;
    }
    const std::size_t t2 = line.rfind('\t');
    const std::size_t t1 = t2 == std::string_view::npos || t2 == 0
                               ? std::string_view::npos
                               : line.rfind('\t', t2 - 1);
    if (t1 == std::string_view::npos) {
      return fail("C012", line_no, "expected three tab-separated columns");
    }
    auto ch = DecodeUtf8(line.substr(0, t1));
    if (!ch || ch->size() != 1) {
      return fail("C012", line_no, "first column must be exactly one character");
    }
    const std::string_view tag_field = line.substr(t1 + 1, t2 - t1 - 1);
    auto role = RoleFromName(line.substr(t2 + 1));
    if (!role) return fail("C012", line_no, "unknown role flag");

    Row row{(*ch)[0], false, {}, *role, line_no};
    if (tag_field != "O") {
      if (tag_field.size() < 3 || tag_field[1] != '-' ||
          (tag_field[0] != 'B' && tag_field[0] != 'I')) {
        return fail("C012", line_no, "malformed boundary tag '" + std::string(tag_field) + "'");
      }
      row.begin = tag_field[0] == 'B';
      row.tag = std::string(tag_field.substr(2));
      if (!ParseTag(row.tag)) {
        return fail("C003", line_no, "illegal tag '" + row.tag + "'");
      }
      if (!row.begin && (rows.empty() || rows.back().tag != row.tag)) {
        return fail("C010", line_no, "I-" + row.tag + " without a preceding B-" + row.tag);
      }
    }
    if (row.tag.empty() != (row.role == Role::kO)) {
      return fail("C011", line_no, "role flag inconsistent with boundary tag");
    }
    rows.push_back(std::move(row));
  }
  if (auto err = flush()) return Result::Failure({*err});
  return docs;
}

}  // namespace phk
