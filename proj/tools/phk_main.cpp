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

// phk: command-line front end for predicate-head annotation corpora.
//
//   phk parse <files...> [--check]
//   phk validate <files...> [--strict] [--format text|records]
//   phk segment <rawfile> [--commas candidate|hard|ignore] [--conj <lexicon>]
//                         [--boundaries <records-file>]
//   phk convert --to inline|standoff|columns [--from auto|...] <files...>
//   phk stats <files...> [--format table|records]
//   phk agree <fileA> <fileB> [--match exact|type|head] [--normalize-rai]
//
// Exit status: 0 ok, 1 validation errors, 2 usage or I/O error, 3 parse
// failure. "-" reads standard input.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "phk/phk.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitParse = 3;

std::optional<std::string> ReadFile(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

enum class Format { kAuto, kInline, kStandoff, kColumns };

const std::map<std::string, Format> kFormatNames = {{"auto", Format::kAuto},
                                                    {"inline", Format::kInline},
                                                    {"standoff", Format::kStandoff},
                                                    {"columns", Format::kColumns}};

Format Detect(std::string_view text) {
  std::size_t pos = 0;
  while (pos < text.size() && text[pos] == '\n') ++pos;
  const std::string_view first = text.substr(pos, text.find('\n', pos) - pos);
  if (!first.empty() && first.front() == '{') return Format::kStandoff;
  if (first.rfind("# doc", 0) == 0) return Format::kColumns;
  return Format::kInline;
}

struct Loaded {
  std::vector<phk::Document> documents;
  std::vector<std::vector<std::size_t>> unit_lines;  // per document
  bool io_error = false;
  bool parse_error = false;
};

// Loads one input file in any supported format, reporting problems on stderr.
Loaded Load(const std::string& path, Format format) {
  Loaded out;
  auto text = ReadFile(path);
  if (!text) {
    std::cerr << path << ": cannot read file\n";
    out.io_error = true;
    return out;
  }
  if (format == Format::kAuto) format = Detect(*text);
  const auto index_lines = [](const phk::Document& d) {
    std::vector<std::size_t> lines(d.units.size());
    for (std::size_t i = 0; i < lines.size(); ++i) lines[i] = i + 1;
    return lines;
  };
  switch (format) {
    case Format::kStandoff: {
      auto stream = phk::ParseStandoffStream(*text);
      for (const auto& e : stream.errors) {
        std::cerr << path << ":" << e.line << ": " << e.code << " error " << e.message << "\n";
      }
      out.parse_error = !stream.errors.empty();
      for (auto& d : stream.documents) {
        out.unit_lines.push_back(index_lines(d));
        out.documents.push_back(std::move(d));
      }
      break;
    }
    case Format::kColumns: {
      auto docs = phk::FromColumns(*text);
      if (!docs) {
        for (const auto& e : docs.error()) {
          std::cerr << path << ":" << e.line << ": " << e.code << " error " << e.message << "\n";
        }
        out.parse_error = true;
        break;
      }
      for (auto& d : std::move(docs).value()) {
        out.unit_lines.push_back(index_lines(d));
        out.documents.push_back(std::move(d));
      }
      break;
    }
    default: {
      auto parsed = phk::ParseDocument(*text);
      for (const auto& d : parsed.diagnostics) std::cerr << phk::RenderText(path, d);
      out.parse_error = !parsed.diagnostics.empty();
      out.unit_lines.push_back(std::move(parsed.unit_lines));
      out.documents.push_back(std::move(parsed.document));
    }
  }
  return out;
}

phk::Document MergeUnits(std::vector<phk::Document> docs) {
  if (docs.empty()) return {};
  phk::Document merged = std::move(docs.front());
  for (std::size_t i = 1; i < docs.size(); ++i) {
    for (auto& u : docs[i].units) merged.units.push_back(std::move(u));
  }
  return merged;
}

std::optional<std::vector<std::u32string>> ReadLexicon(const std::string& path) {
  auto text = ReadFile(path);
  if (!text) return std::nullopt;
  std::vector<std::u32string> entries;
  std::istringstream in(*text);
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto decoded = phk::DecodeUtf8(line);
    if (!decoded) return std::nullopt;
    if (!decoded->empty()) entries.push_back(std::move(*decoded));
  }
  return entries;
}

int Combine(bool io, bool parse, bool validation) {
  if (io) return kExitUsage;
  if (parse) return kExitParse;
  if (validation) return kExitValidation;
  return kExitOk;
}

int RunParse(const std::vector<std::string>& files, bool check) {
  bool io = false, parse = false;
  for (const auto& f : files) {
    auto loaded = Load(f, Format::kInline);
    io |= loaded.io_error;
    parse |= loaded.parse_error;
    if (check || loaded.io_error) continue;
    for (const auto& d : loaded.documents) std::cout << phk::ToStandoffLine(d);
  }
  return Combine(io, parse, false);
}

int RunValidate(const std::vector<std::string>& files, bool strict, const std::string& format) {
  bool io = false, parse = false, errors = false;
  for (const auto& f : files) {
    auto loaded = Load(f, Format::kAuto);
    io |= loaded.io_error;
    parse |= loaded.parse_error;
    for (std::size_t d = 0; d < loaded.documents.size(); ++d) {
      const auto diags = phk::ValidateDocument(loaded.documents[d]);
      errors |= phk::HasErrors(diags, strict);
      for (const auto& diag : diags) {
        const std::size_t line = loaded.unit_lines[d][diag.unit_index];
        std::cout << (format == "records" ? phk::RenderRecord(f, line, diag, strict)
                                          : phk::RenderText(f, line, diag, strict));
      }
    }
  }
  return Combine(io, parse, errors);
}

int RunSegment(const std::string& file, const std::string& commas,
               const std::optional<std::string>& conj_file,
               const std::optional<std::string>& boundaries_file) {
  phk::SegmenterConfig config;
  config.set_commas(*phk::CommaPolicyFromName(commas));
  std::optional<std::string> lexicon_path = conj_file;
  if (!lexicon_path) {
    if (const char* env = std::getenv("PHK_CONJ_LEXICON"); env != nullptr && *env != '\0') {
      lexicon_path = env;
    }
  }
  if (lexicon_path) {
    auto lexicon = ReadLexicon(*lexicon_path);
    if (!lexicon) {
      std::cerr << *lexicon_path << ": cannot read conjunction lexicon\n";
      return kExitUsage;
    }
    config.set_conjunctions(std::move(*lexicon));
  }
  auto text = ReadFile(file);
  if (!text) {
    std::cerr << file << ": cannot read file\n";
    return kExitUsage;
  }
  std::u32string raw;
  phk::Utf8Error err;
  if (!phk::DecodeUtf8(*text, &raw, &err)) {
    std::cerr << file << ": invalid UTF-8 at byte " << err.byte_offset << "\n";
    return kExitParse;
  }
  std::ofstream sidecar;
  if (boundaries_file) {
    sidecar.open(*boundaries_file, std::ios::binary);
    if (!sidecar) {
      std::cerr << *boundaries_file << ": cannot write file\n";
      return kExitUsage;
    }
  }
  std::size_t line_no = 0, pos = 0;
  const std::u32string_view all(raw);
  while (pos < all.size()) {
    std::size_t nl = all.find(U'\n', pos);
    if (nl == std::u32string_view::npos) nl = all.size();
    const auto line = all.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (sidecar.is_open()) {
      for (const auto& b : phk::ProposeBoundaries(line, config)) {
        sidecar << phk::RenderRecord(line_no, b);
      }
    }
    for (const auto& piece : phk::Split(line, config, phk::SplitPolicy::kAll)) {
      std::cout << phk::EncodeUtf8(piece) << "\n";
    }
  }
  return kExitOk;
}

int RunConvert(const std::vector<std::string>& files, const std::string& to,
               const std::string& from) {
  bool io = false, parse = false;
  for (const auto& f : files) {
    auto loaded = Load(f, kFormatNames.at(from));
    io |= loaded.io_error;
    parse |= loaded.parse_error;
    for (const auto& d : loaded.documents) {
      if (to == "inline") {
        std::cout << phk::EmitDocument(d);
      } else if (to == "standoff") {
        std::cout << phk::ToStandoffLine(d);
      } else {
        std::cout << phk::ToColumns(d);
      }
    }
  }
  return Combine(io, parse, false);
}

int RunStats(const std::vector<std::string>& files, const std::string& format) {
  bool io = false, parse = false;
  phk::StatsReport total;
  for (const auto& f : files) {
    auto loaded = Load(f, Format::kAuto);
    io |= loaded.io_error;
    parse |= loaded.parse_error;
    total += phk::CorpusStats(loaded.documents);
  }
  if (io) return kExitUsage;
  std::cout << (format == "records" ? phk::RenderRecord(total) : phk::RenderTable(total));
  return Combine(false, parse, false);
}

int RunAgree(const std::string& file_a, const std::string& file_b, const std::string& match,
             bool normalize_rai, const std::string& format) {
  auto a = Load(file_a, Format::kAuto);
  auto b = Load(file_b, Format::kAuto);
  if (a.io_error || b.io_error) return kExitUsage;
  if (a.parse_error || b.parse_error) return kExitParse;
  phk::AgreementConfig config;
  config.normalize_rai = normalize_rai;
  config.criterion = match == "type"   ? phk::MatchCriterion::kTypeOnly
                     : match == "head" ? phk::MatchCriterion::kHeadOverlap
                                       : phk::MatchCriterion::kExact;
  auto report = phk::Agree(MergeUnits(std::move(a.documents)),
                           MergeUnits(std::move(b.documents)), config);
  if (!report) {
    std::cerr << report.error().code << " error " << report.error().message << "\n";
    return kExitUsage;
  }
  std::cout << (format == "records" ? phk::RenderRecord(*report) : phk::RenderTable(*report));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Predicate-head annotation toolkit"};
  app.require_subcommand(1);

  std::vector<std::string> files;
  bool check = false;
  auto* parse = app.add_subcommand("parse", "Parse inline files into standoff records");
  parse->add_option("files", files, "Inline annotation files")->required();
  parse->add_flag("--check", check, "Only check syntax; no output");

  bool strict = false;
  std::string validate_format = "text";
  auto* validate = app.add_subcommand("validate", "Check annotations against the guideline");
  validate->add_option("files", files, "Annotation files")->required();
  validate->add_flag("--strict", strict, "Treat warnings as errors");
  validate->add_option("--format", validate_format, "Report format")
      ->check(CLI::IsMember({"text", "records"}));

  std::string raw_file;
  std::string commas = "candidate";
  std::optional<std::string> conj_file, boundaries_file;
  auto* segment = app.add_subcommand("segment", "Propose labeling units in raw text");
  segment->add_option("rawfile", raw_file, "UTF-8 plain text")->required();
  segment->add_option("--commas", commas, "Comma policy")
      ->check(CLI::IsMember({"candidate", "hard", "ignore"}));
  segment->add_option("--conj", conj_file, "Conjunction lexicon, one entry per line");
  segment->add_option("--boundaries", boundaries_file, "Write boundary records to this file");

  std::string to, from = "auto";
  auto* convert = app.add_subcommand("convert", "Convert between inline, standoff and columns");
  convert->add_option("--to", to, "Output format")
      ->required()
      ->check(CLI::IsMember({"inline", "standoff", "columns"}));
  convert->add_option("--from", from, "Input format")
      ->check(CLI::IsMember({"auto", "inline", "standoff", "columns"}));
  convert->add_option("files", files, "Input files")->required();

  std::string stats_format = "table";
  auto* stats = app.add_subcommand("stats", "Corpus statistics");
  stats->add_option("files", files, "Annotation files")->required();
  stats->add_option("--format", stats_format, "Report format")
      ->check(CLI::IsMember({"table", "records"}));

  std::string file_a, file_b, match = "exact", agree_format = "table";
  bool normalize_rai = false;
  auto* agree = app.add_subcommand("agree", "Inter-annotator agreement");
  agree->add_option("fileA", file_a, "Reference annotation")->required();
  agree->add_option("fileB", file_b, "Second annotation")->required();
  agree->add_option("--match", match, "Span match criterion")
      ->check(CLI::IsMember({"exact", "type", "head"}));
  agree->add_flag("--normalize-rai", normalize_rai, "Compare RAI as COM");
  agree->add_option("--format", agree_format, "Report format")
      ->check(CLI::IsMember({"table", "records"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (*parse) return RunParse(files, check);
  if (*validate) return RunValidate(files, strict, validate_format);
  if (*segment) return RunSegment(raw_file, commas, conj_file, boundaries_file);
  if (*convert) return RunConvert(files, to, from);
  if (*stats) return RunStats(files, stats_format);
  if (*agree) return RunAgree(file_a, file_b, match, normalize_rai, agree_format);
  return kExitUsage;
}
