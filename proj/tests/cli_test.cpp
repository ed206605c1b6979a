#include "cli.hpp"

#include "corpus.hpp"
#include "mock_server.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <sstream>

namespace aah {
namespace {

using testing::TempDir;

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  Run r;
  r.code = cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

class HarvestedStore : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    dir_ = new TempDir();
    const auto r = cli({"--db", db(), "harvest", "--source", "fixture:" + testing::fixture_dir().string(), "--workers",
                        "2"});
    ASSERT_EQ(r.code, cli::kOk) << r.err;
    ASSERT_NE(r.out.find("25 tasks, 25 stored, 0 failed"), std::string::npos) << r.out;
  }
  static void TearDownTestSuite() {
    delete dir_;
    dir_ = nullptr;
  }
  static std::string db() { return (*dir_ / "cli.db").string(); }

  static TempDir* dir_;
};

TempDir* HarvestedStore::dir_ = nullptr;

std::vector<std::string> ids_of(const std::string& jsonl) {
  std::vector<std::string> ids;
  std::istringstream in(jsonl);
  for (std::string line; std::getline(in, line);) {
    if (!line.empty()) ids.push_back(nlohmann::json::parse(line).at("anthology_id"));
  }
  return ids;
}

TEST_F(HarvestedStore, TargetFilterFindsFourPapers) {
  const auto r = cli({"--db", db(), "filter", "--years", "2021..2023", "--venues", "acl,emnlp,naacl", "--keyword-all",
                      "story generation", "--keyword-any", "event", "persona", "coherence", "metrics"});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  EXPECT_EQ(ids_of(r.out), (std::vector<std::string>{"2021.acl-long.41", "2021.acl-long.49", "2022.emnlp-main.30",
                                                     "2022.naacl-main.14"}));
}

TEST_F(HarvestedStore, FilterFormats) {
  const auto csv = cli({"--db", db(), "filter", "--venues", "naacl", "--years", "2022", "--format", "csv"});
  ASSERT_EQ(csv.code, cli::kOk);
  EXPECT_EQ(csv.out.rfind("anthology_id,title,", 0), 0u);
  const auto bib = cli({"--db", db(), "filter", "--author", "Ha Nguyen", "--any", "--keyword-any", "persona",
                        "--format", "bibtex"});
  ASSERT_EQ(bib.code, cli::kOk);
  EXPECT_NE(bib.out.find("@inproceedings{"), std::string::npos);
}

TEST_F(HarvestedStore, QueryWithWhereOrderLimit) {
  const auto r = cli({"--db", db(), "query", "--where", "venue_key:eq:acl", "--where", "year:gte:2022", "--order",
                      "year:desc", "--limit", "3", "--format", "table"});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  std::istringstream lines(r.out);
  std::string header, row;
  std::getline(lines, header);
  EXPECT_EQ(header.rfind("anthology_id", 0), 0u);
  int rows = 0;
  while (std::getline(lines, row)) {
    ++rows;
    EXPECT_NE(row.find("2023.acl-long."), std::string::npos) << row;
  }
  EXPECT_EQ(rows, 3);
}

TEST_F(HarvestedStore, QueryErrorsAreUsage) {
  const auto r = cli({"--db", db(), "query", "--where", "colour:eq:red"});
  EXPECT_EQ(r.code, cli::kUsage);
  EXPECT_NE(r.err.find("error:"), std::string::npos);
  EXPECT_EQ(cli({"--db", db(), "query", "--offset", "3"}).code, cli::kUsage);
}

TEST_F(HarvestedStore, StatsJsonAndTable) {
  const auto j = cli({"--db", db(), "stats", "--by", "venue", "--by", "year"});
  ASSERT_EQ(j.code, cli::kOk) << j.err;
  const auto parsed = nlohmann::json::parse(j.out);
  EXPECT_EQ(parsed.size(), 5u);
  EXPECT_TRUE(parsed.at("acl").contains("2019"));
  const auto t = cli({"--db", db(), "stats", "--by", "year", "--format", "table"});
  EXPECT_EQ(t.out.rfind("year  count\n", 0), 0u);
  EXPECT_EQ(cli({"--db", db(), "stats", "--by", "colour"}).code, cli::kUsage);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(cli({}).code, cli::kUsage);
  EXPECT_EQ(cli({"frobnicate"}).code, cli::kUsage);
  EXPECT_EQ(cli({"stats"}).code, cli::kUsage);
  EXPECT_EQ(cli({"harvest", "--workers", "0"}).code, cli::kUsage);
  const auto help = cli({"--help"});
  EXPECT_EQ(help.code, cli::kOk);
  EXPECT_NE(help.out.find("harvest"), std::string::npos);
}

TEST(Cli, PartialHarvestExitsTwo) {
  testing::MockServer server(testing::fixture_dir());
  server.fail_always("/proceedings/lrec-2021.html", 500);
  TempDir dir;
  const auto r = cli({"--db", (dir / "p.db").string(), "harvest", "--source", "mock:" + server.endpoint(), "--venues",
                      "lrec", "--max-attempts", "2", "--backoff-ms", "1", "--min-interval-ms", "1", "--report-json"});
  EXPECT_EQ(r.code, cli::kPartial) << r.err;
  EXPECT_NE(r.out.find("5 tasks, 4 stored, 1 failed"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("\"tasks_failed\":1"), std::string::npos);
  EXPECT_NE(r.err.find("lrec-2021 failed"), std::string::npos);
}

TEST(Cli, EmptyPlanIsNotAnError) {
  TempDir dir;
  const auto r = cli({"--db", (dir / "e.db").string(), "harvest", "--source",
                      "fixture:" + testing::fixture_dir().string(), "--years", "2050"});
  EXPECT_EQ(r.code, cli::kOk);
  EXPECT_NE(r.out.find("0 tasks"), std::string::npos);
}

}  // namespace
}  // namespace aah
