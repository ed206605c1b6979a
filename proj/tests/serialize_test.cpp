#include "aah/error.hpp"
#include "aah/serialize.hpp"

#include "generators.hpp"

#include <gtest/gtest.h>

namespace aah {
namespace {

PaperRecord tricky() {
  PaperRecord p;
  p.anthology_id = "2021.acl-long.41";
  p.title = "Commas, \"Quotes\" & 50% {braces}_x";
  p.authors = {normalize_author("Amélie Dubois"), normalize_author("Kwame Okafor")};
  p.venue_key = "acl";
  p.year = 2021;
  p.page_url = "https://aclanthology.org/2021.acl-long.41/";
  p.abstract = "line one\nline two";
  return p;
}

TEST(Jsonl, RoundTripsRandomLists) {
  testing::Rng rng(7);
  const PaperList list(testing::random_papers(rng, 60));
  const auto text = serialize::to_jsonl(list);
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 60);
  EXPECT_EQ(serialize::from_jsonl(text), list);
}

TEST(Jsonl, NullsForAbsentOptionals) {
  const auto line = serialize::to_json_line(tricky());
  EXPECT_NE(line.find("\"pdf_url\":null"), std::string::npos);
  EXPECT_NE(line.find("\"authors\":[\"Amélie Dubois\",\"Kwame Okafor\"]"), std::string::npos);
  EXPECT_EQ(line.find('\n'), std::string::npos);
  EXPECT_EQ(serialize::paper_from_json(line), tricky());
}

TEST(Jsonl, MalformedInputThrows) {
  EXPECT_THROW(serialize::paper_from_json("{\"title\":1}"), Error);
  EXPECT_THROW(serialize::from_jsonl("not json\n"), Error);
  EXPECT_TRUE(serialize::from_jsonl("\n  \n").empty());
}

TEST(Csv, QuotesOnlyWhenNeeded) {
  EXPECT_EQ(serialize::csv_field("plain"), "plain");
  EXPECT_EQ(serialize::csv_field("a,b"), "\"a,b\"");
  EXPECT_EQ(serialize::csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
  EXPECT_EQ(serialize::csv_field("a\nb"), "\"a\nb\"");
}

TEST(Csv, HeaderAndCrlfRows) {
  const auto csv = serialize::to_csv(PaperList({tricky()}));
  EXPECT_EQ(csv,
            "anthology_id,title,authors,venue_key,year,page_url,pdf_url,abstract,bibkey\r\n"
            "2021.acl-long.41,\"Commas, \"\"Quotes\"\" & 50% {braces}_x\",Amélie Dubois; Kwame Okafor,acl,2021,"
            "https://aclanthology.org/2021.acl-long.41/,,\"line one\nline two\",\r\n");
}

TEST(Bibtex, EscapesAndDerivesKeys) {
  const auto bib = serialize::to_bibtex(PaperList({tricky()}));
  EXPECT_EQ(bib,
            "@inproceedings{dubois2021commas,\n"
            "  author = {Amélie Dubois and Kwame Okafor},\n"
            "  title = {Commas, \"Quotes\" \\& 50\\% \\{braces\\}\\_x},\n"
            "  year = {2021},\n"
            "  booktitle = {ACL},\n"
            "  url = {https://aclanthology.org/2021.acl-long.41/}\n"
            "}\n");
}

TEST(Bibtex, KeyRules) {
  auto p = tricky();
  p.authors = {normalize_author("Søren Schröder")};
  p.title = "Über Parsing";
  EXPECT_EQ(serialize::bibtex_key(p), "schroder2021uber");
  p.authors.clear();
  EXPECT_EQ(serialize::bibtex_key(p), "anon2021uber");
  p.bibkey = "custom-key";
  EXPECT_EQ(serialize::bibtex_key(p), "custom-key");
}

TEST(Table, AlignsColumns) {
  auto a = tricky();
  a.title = "Short";
  auto b = a;
  b.anthology_id = "x";
  b.venue_key = "emnlp";
  const auto table = serialize::to_table(PaperList({a, b}));
  EXPECT_EQ(table,
            "anthology_id      year  venue_key  title\n"
            "2021.acl-long.41  2021  acl        Short\n"
            "x                 2021  emnlp      Short\n");
}

TEST(StatsOutput, JsonAndTable) {
  auto a = tricky();
  auto b = a;
  b.anthology_id = "b";
  b.year = 2022;
  auto c = b;
  c.anthology_id = "c";
  c.venue_key = "emnlp";
  const PaperList list({a, b, c});
  const std::vector dims{StatsDim::venue_key, StatsDim::year};
  const auto root = stats(list, dims);
  EXPECT_EQ(serialize::stats_to_json(root), R"({"acl":{"2021":1,"2022":1},"emnlp":{"2022":1}})");
  EXPECT_EQ(serialize::stats_to_table(root, dims),
            "venue_key  year  count\n"
            "acl        2021  1\n"
            "acl        2022  1\n"
            "emnlp      2022  1\n");
  EXPECT_EQ(serialize::stats_to_json(stats(PaperList{}, dims)), "{}");
}

}  // namespace
}  // namespace aah
