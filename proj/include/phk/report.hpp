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

// Text and record (JSON lines) rendering for diagnostics and reports.

#include <cstdio>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "phk/convert.hpp"
#include "phk/inline_format.hpp"
#include "phk/metrics.hpp"
#include "phk/segmenter.hpp"
#include "phk/validator.hpp"

namespace phk {

namespace report_detail {

inline std::string Dump(const nlohmann::ordered_json& j) {
  return j.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace) + "\n";
}

inline std::string Fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

}  // namespace report_detail

// file:line: CODE severity message
inline std::string RenderText(std::string_view file, const ParseDiagnostic& d) {
  return std::string(file) + ":" + std::to_string(d.line) + ": " + d.code + " error " +
         d.message + " (column " + std::to_string(d.column) + ")\n";
}

inline std::string RenderText(std::string_view file, std::size_t line, const Diagnostic& d,
                              bool strict = false) {
  Severity sev = d.severity();
  if (strict && sev == Severity::kWarning) sev = Severity::kError;
  return std::string(file) + ":" + std::to_string(line) + ": " + d.code + " " +
         std::string(Name(sev)) + " " + d.message + "\n";
}

inline std::string RenderRecord(std::string_view file, const ParseDiagnostic& d) {
  nlohmann::ordered_json j;
  j["file"] = file;
  j["line"] = d.line;
  j["column"] = d.column;
  j["code"] = d.code;
  j["severity"] = "error";
  j["message"] = d.message;
  return report_detail::Dump(j);
}

inline std::string RenderRecord(std::string_view file, std::size_t line, const Diagnostic& d,
                                bool strict = false) {
  Severity sev = d.severity();
  if (strict && sev == Severity::kWarning) sev = Severity::kError;
  nlohmann::ordered_json j;
  j["file"] = file;
  j["line"] = line;
  j["unit"] = d.unit_index;
  j["code"] = d.code;
  j["severity"] = Name(sev);
  if (d.span) {
    j["start"] = d.span->start;
    j["end"] = d.span->end;
  }
  j["message"] = d.message;
  return report_detail::Dump(j);
}

inline std::string RenderRecord(std::size_t line, const SegmentBoundary& b) {
  nlohmann::ordered_json j;
  j["line"] = line;
  j["position"] = b.position;
  j["kind"] = Name(b.kind);
  j["cause"] = Name(b.cause);
  return report_detail::Dump(j);
}

inline nlohmann::ordered_json ToJson(const StatsReport& s) {
  nlohmann::ordered_json j;
  j["units"] = s.units;
  j["elements"] = s.elements;
  j["unc_units"] = s.unc_units;
  nlohmann::ordered_json kinds, patterns, forms, tags, lengths, per_unit;
  for (auto k : kAllElementTypes) kinds[std::string(Name(k))] = s.kind(k);
  for (auto p : kAllPatterns) patterns[std::string(Name(p))] = s.pattern(p);
  for (auto f : kAllForms) forms[std::string(Name(f))] = s.form(f);
  tags = nlohmann::ordered_json::object();
  for (const auto& [t, n] : s.by_tag) tags[t] = n;
  lengths = nlohmann::ordered_json::object();
  for (const auto& [len, n] : s.unit_length) lengths[std::to_string(len)] = n;
  per_unit = nlohmann::ordered_json::object();
  for (const auto& [len, n] : s.elements_per_unit) per_unit[std::to_string(len)] = n;
  j["by_kind"] = kinds;
  j["by_pattern"] = patterns;
  j["by_form"] = forms;
  j["by_tag"] = tags;
  j["unit_length"] = lengths;
  j["elements_per_unit"] = per_unit;
  return j;
}

inline std::string RenderRecord(const StatsReport& s) { return report_detail::Dump(ToJson(s)); }

inline std::string RenderTable(const StatsReport& s) {
  std::string out;
  const auto row = [&out](std::string_view label, std::size_t n) {
    std::string l(label);
    l.resize(std::max<std::size_t>(l.size(), 16), ' ');
    out += "  " + l + std::to_string(n) + "\n";
  };
  out += "units            " + std::to_string(s.units) + "\n";
  out += "elements         " + std::to_string(s.elements) + "\n";
  out += "unc units        " + std::to_string(s.unc_units) + "\n";
  out += "by kind\n";
  for (auto k : kAllElementTypes) row(Name(k), s.kind(k));
  out += "by pattern (PRE)\n";
  for (auto p : kAllPatterns) row(Name(p), s.pattern(p));
  out += "by form\n";
  for (auto f : kAllForms) row(Name(f), s.form(f));
  out += "by tag\n";
  for (const auto& [t, n] : s.by_tag) row(t, n);
  out += "unit length (codepoints)\n";
  for (const auto& [len, n] : s.unit_length) row(std::to_string(len), n);
  out += "elements per unit\n";
  for (const auto& [len, n] : s.elements_per_unit) row(std::to_string(len), n);
  return out;
}

inline std::string RenderRecord(const AgreementReport& r) {
  const auto counts = [](const SpanCounts& c) {
    nlohmann::ordered_json j;
    j["matched"] = c.matched;
    j["only_a"] = c.only_a;
    j["only_b"] = c.only_b;
    j["precision"] = c.precision();
    j["recall"] = c.recall();
    j["f1"] = c.f1();
    return j;
  };
  nlohmann::ordered_json j;
  j["criterion"] = Name(r.config.criterion);
  j["normalize_rai"] = r.config.normalize_rai;
  j["micro"] = counts(r.spans.micro);
  nlohmann::ordered_json kinds = nlohmann::ordered_json::object();
  for (const auto& [k, c] : r.spans.per_kind) kinds[std::string(Name(k))] = counts(c);
  j["per_kind"] = kinds;
  j["kappa"] = r.kappa ? nlohmann::ordered_json(*r.kappa) : nlohmann::ordered_json(nullptr);
  return report_detail::Dump(j);
}

inline std::string RenderTable(const AgreementReport& r) {
  using report_detail::Fixed;
  std::string out = "criterion: " + std::string(Name(r.config.criterion)) +
                    (r.config.normalize_rai ? " (RAI as COM)" : "") + "\n";
  out += "kind   matched  only_a  only_b  precision  recall  f1\n";
  const auto row = [&out](std::string label, const SpanCounts& c) {
    label.resize(7, ' ');
    char buf[128];
    std::snprintf(buf, sizeof buf, "%-7zu  %-6zu  %-6zu  ", c.matched, c.only_a, c.only_b);
    out += label + buf + Fixed(c.precision()) + "     " + Fixed(c.recall()) + "  " +
           Fixed(c.f1()) + "\n";
  };
  for (const auto& [k, c] : r.spans.per_kind) row(std::string(Name(k)), c);
  row("micro", r.spans.micro);
  out += "char kappa: " + (r.kappa ? Fixed(*r.kappa) : std::string("undefined")) + "\n";
  return out;
}

}  // namespace phk
