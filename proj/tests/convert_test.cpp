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

#include "phk/convert.hpp"

#include <gtest/gtest.h>

#include "phk/inline_format.hpp"
#include "test_support.hpp"

namespace phk {
namespace {

Document Golden() { return ParseDocument(testing::ReadTestData("golden.ann")).document; }

std::string FromStandoffCode(std::string_view json) {
  auto doc = FromStandoff(nlohmann::ordered_json::parse(json));
  return doc.ok() ? "ok" : doc.error().front().code;
}

std::string FromColumnsCode(std::string_view text) {
  auto docs = FromColumns(text);
  return docs.ok() ? "ok" : docs.error().front().code;
}

TEST(StandoffTest, GoldenRecord) {
  const auto record = ToStandoff(Golden());
  EXPECT_EQ(record["id"], "example1");
  ASSERT_EQ(record["units"].size(), 10u);
  const auto& loc = record["units"][2]["elements"][2];
  EXPECT_EQ(loc["kind"], "LOC");
  EXPECT_EQ(loc["sub"], "W");
  const std::u32string text = U32(record["units"][2]["text"].get<std::string>());
  EXPECT_EQ(text.substr(loc["head_start"].get<std::size_t>(),
                        loc["head_end"].get<std::size_t>() - loc["head_start"].get<std::size_t>()),
            U"桥上");
}

TEST(StandoffTest, ExactSerialization) {
  auto unit = ParseUnit("[ADV-P 多次(向)-被告人][PRE-M (提)出]。");
  Document doc{"d1", {}, {*unit}};
  EXPECT_EQ(ToStandoffLine(doc),
            "{\"id\":\"d1\",\"units\":[{\"text\":\"多次向被告人提出。\",\"elements\":["
            "{\"kind\":\"ADV\",\"sub\":\"P\",\"start\":0,\"end\":6,\"trig_start\":0,"
            "\"trig_end\":3,\"trig_head_start\":2,\"trig_head_end\":3},"
            "{\"kind\":\"PRE\",\"sub\":\"M\",\"start\":6,\"end\":8,\"head_start\":6,"
            "\"head_end\":7}]}]}\n");
}

TEST(StandoffTest, EmptyDocument) {
  EXPECT_EQ(ToStandoffLine(Document{}), "{\"id\":\"\",\"units\":[]}\n");
  auto back = FromStandoff(ToStandoff(Document{}));
  ASSERT_TRUE(back.ok());
  EXPECT_EQ(*back, Document{});
}

TEST(StandoffTest, GoldenRoundTrip) {
  const Document golden = Golden();
  auto back = FromStandoff(ToStandoff(golden));
  ASSERT_TRUE(back.ok());
  EXPECT_EQ(*back, golden);
  EXPECT_EQ(EmitDocument(*back), testing::ReadTestData("golden.ann"));
}

TEST(StandoffTest, Rejections) {
  EXPECT_EQ(FromStandoffCode(R"({"id":"x","units":[{"text":"abcdef","elements":[
      {"kind":"COM","sub":"W","start":0,"end":0}]}]})"), "C001");
  EXPECT_EQ(FromStandoffCode(R"({"id":"x","units":[{"text":"abc","elements":[
      {"kind":"COM","sub":"W","start":1,"end":9}]}]})"), "C001");
  EXPECT_EQ(FromStandoffCode(R"({"id":"x","units":[{"text":"abcdef","elements":[
      {"kind":"COM","sub":"W","start":0,"end":4},
      {"kind":"COM","sub":"W","start":2,"end":6}]}]})"), "C002");
  EXPECT_EQ(FromStandoffCode(R"({"id":"x","units":[{"text":"abc","elements":[
      {"kind":"PRE","sub":"W","start":0,"end":1}]}]})"), "C003");
  EXPECT_EQ(FromStandoffCode(R"({"id":"x","units":[{"text":"abc","elements":[
      {"kind":"SUB","start":0,"end":1}]}]})"), "C003");
  EXPECT_EQ(FromStandoffCode(R"({"id":"x","units":[{"text":"abcd","elements":[
      {"kind":"SUB","sub":"W","start":0,"end":3,"head_start":2,"head_end":4}]}]})"), "C001");
  EXPECT_EQ(FromStandoffCode(R"({"id":"x","units":[{"text":"abcd","elements":[
      {"kind":"ADV","sub":"P","start":0,"end":3,"trig_start":1,"trig_end":2}]}]})"), "C001");
  EXPECT_EQ(FromStandoffCode(R"({"units":[]})"), "C004");
  EXPECT_EQ(FromStandoffCode(R"({"id":"x","units":[{"text":"a","elements":[
      {"kind":"SUB","sub":"W","start":-1,"end":1}]}]})"), "C004");
}

TEST(StandoffTest, StreamReportsBadLines) {
  const std::string text = ToStandoffLine(Golden()) + "not json\n" + ToStandoffLine(Document{});
  const auto stream = ParseStandoffStream(text);
  EXPECT_EQ(stream.documents.size(), 2u);
  ASSERT_EQ(stream.errors.size(), 1u);
  EXPECT_EQ(stream.errors[0].line, 2u);
}

TEST(StandoffPropertyTest, RandomRoundTrip) {
  testing::CorpusGenerator gen(31);
  for (int round = 0; round < 1000; ++round) {
    const Document doc = gen.Doc();
    const auto stream = ParseStandoffStream(ToStandoffLine(doc));
    ASSERT_TRUE(stream.errors.empty());
    ASSERT_EQ(stream.documents.size(), 1u);
    ASSERT_EQ(stream.documents[0], doc);
  }
}

TEST(ColumnsTest, UnitNine) {
  Document doc{"d", {}, {*ParseUnit("[PRE-S 致][COM-C 其死亡]。")}};
  EXPECT_EQ(ToColumns(doc),
            "# doc d\n"
            "致\tB-PRE-S\tB\n"
            "其\tB-COM-C\tB\n"
            "死\tI-COM-C\tB\n"
            "亡\tI-COM-C\tB\n"
            "。\tO\tO\n"
            "\n");
}

TEST(ColumnsTest, RoleFlags) {
  Document doc{"d", {}, {*ParseUnit("[ADV-P 多次(用)-砖(头)]")}};
  EXPECT_EQ(ToColumns(doc),
            "# doc d\n"
            "多\tB-ADV-P\tT\n"
            "次\tI-ADV-P\tT\n"
            "用\tI-ADV-P\tTH\n"
            "砖\tI-ADV-P\tB\n"
            "头\tI-ADV-P\tH\n"
            "\n");
}

TEST(ColumnsTest, NoElements) {
  Document doc{"", {}, {LabelingUnit{U"请开门", {}}}};
  EXPECT_EQ(ToColumns(doc), "# doc \n请\tO\tO\n开\tO\tO\n门\tO\tO\n\n");
}

TEST(ColumnsTest, GoldenRoundTrip) {
  const Document golden = Golden();
  auto back = FromColumns(ToColumns(golden));
  ASSERT_TRUE(back.ok());
  ASSERT_EQ(back->size(), 1u);
  EXPECT_EQ(back->front(), golden);
  EXPECT_EQ(EmitDocument(back->front()), testing::ReadTestData("golden.ann"));
}

TEST(ColumnsTest, RowCountEqualsUnitLength) {
  const Document golden = Golden();
  std::size_t expected = 0;
  for (const auto& u : golden.units) expected += u.text.size();
  std::size_t rows = 0;
  for (const auto& line : testing::Lines(ToColumns(golden))) {
    rows += !line.empty() && line.rfind("# doc", 0) != 0;
  }
  EXPECT_EQ(rows, expected);
}

TEST(ColumnsTest, Rejections) {
  EXPECT_EQ(FromColumnsCode("# doc d\n其\tB-COM-C\tB\n死\tI-COM-C\tB\n亡\tI-COM-C\tO\n"), "C011");
  EXPECT_EQ(FromColumnsCode("# doc d\n死\tI-COM-C\tB\n"), "C010");
  EXPECT_EQ(FromColumnsCode("# doc d\n其\tB-COM-C\tB\n死\tI-COM-W\tB\n"), "C010");
  EXPECT_EQ(FromColumnsCode("# doc d\n其\tO\tB\n"), "C011");
  EXPECT_EQ(FromColumnsCode("# doc d\n其\tB-COM-C\tB\n死\tI-COM-C\tT\n"), "C011");
  EXPECT_EQ(FromColumnsCode("# doc d\n其\tB-COM-C\tT\n"), "C011");
  EXPECT_EQ(FromColumnsCode("# doc d\n其\tB-COM-C\tH\n死\tI-COM-C\tB\n亡\tI-COM-C\tH\n"), "C011");
  EXPECT_EQ(FromColumnsCode("# doc d\n其\tB-PRE-W\tB\n"), "C003");
  EXPECT_EQ(FromColumnsCode("# doc d\n其死\tO\tO\n"), "C012");
  EXPECT_EQ(FromColumnsCode("# doc d\n其 O O\n"), "C012");
}

TEST(ColumnsTest, MultipleDocuments) {
  const Document golden = Golden();
  Document other{"x", {}, {LabelingUnit{U"跑", {}}}};
  auto back = FromColumns(ToColumns(golden) + ToColumns(other));
  ASSERT_TRUE(back.ok());
  ASSERT_EQ(back->size(), 2u);
  EXPECT_EQ((*back)[1], other);
}

TEST(ColumnsPropertyTest, RandomRoundTrip) {
  testing::CorpusGenerator gen(32);
  for (int round = 0; round < 1000; ++round) {
    const Document doc = gen.Doc(/*with_metadata=*/false);
    auto back = FromColumns(ToColumns(doc));
    ASSERT_TRUE(back.ok()) << back.error().front().message;
    ASSERT_EQ(back->size(), 1u);
    ASSERT_EQ(back->front(), doc);
  }
}

// Random column files either load into valid documents or fail with a C0xx
// code; nothing crashes.
TEST(ColumnsPropertyTest, FuzzNeverCrashes) {
  testing::CorpusGenerator gen(33);
  const std::vector<std::string> tags = {"O", "B-PRE-S", "I-PRE-S", "B-COM-W", "I-COM-W",
                                         "B-UNC", "I-UNC", "B-PRE-W", "X-ADV-P", "I-"};
  const std::vector<std::string> roles = {"O", "T", "TH", "B", "H", "Q"};
  int ok = 0;
  for (int round = 0; round < 3000; ++round) {
    std::string text = gen.Coin(0.8) ? "# doc f\n" : "";
    for (std::size_t n = gen.Uniform(0, 12); n > 0; --n) {
      if (gen.Coin(0.1)) {
        text += "\n";
        continue;
      }
      text += gen.Coin(0.95) ? "字" : "字字";
      text += "\t" + tags[gen.Uniform(0, tags.size() - 1)];
      text += "\t" + roles[gen.Uniform(0, roles.size() - 1)] + "\n";
    }
    auto docs = FromColumns(text);
    if (docs.ok()) {
      ++ok;
      for (const auto& d : *docs) {
        for (const auto& u : d.units) EXPECT_FALSE(CheckUnit(u).has_value());
      }
    } else {
      EXPECT_EQ(docs.error().front().code.substr(0, 2), "C0");
    }
  }
  EXPECT_GT(ok, 0);
}

}  // namespace
}  // namespace phk
