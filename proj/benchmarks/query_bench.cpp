#include "aah/query.hpp"
#include "aah/store.hpp"

#include <benchmark/benchmark.h>

#include <filesystem>

namespace {

using namespace aah;

void BM_RenderSql(benchmark::State& state) {
  const auto ast = query::table(query::Table::paper)
                       .where(query::in("year", {2021, 2022, 2023}))
                       .where(query::in("venue_key", {"acl", "emnlp", "naacl"}))
                       .order("year", query::Direction::desc)
                       .build();
  for (auto _ : state) benchmark::DoNotOptimize(query::render_sql(ast));
}
BENCHMARK(BM_RenderSql);

void BM_ExecuteGrouped(benchmark::State& state) {
  const auto dir = std::filesystem::temp_directory_path() / "aah-query-bench";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  StoreConfig cfg;
  cfg.location = dir / "bench.db";
  const auto store = init_schema(cfg);
  std::vector<PaperRecord> papers;
  for (int i = 0; i < state.range(0); ++i) {
    PaperRecord p;
    p.anthology_id = "2022.emnlp-main." + std::to_string(i + 1);
    p.title = "Paper " + std::to_string(i);
    p.venue_key = i % 3 == 0 ? "acl" : "emnlp";
    p.year = 2019 + i % 5;
    p.page_url = "https://aclanthology.org/" + p.anthology_id + "/";
    papers.push_back(std::move(p));
  }
  store.upsert_papers(papers);
  const auto ast = query::table(query::Table::paper).group({"venue_key", "year"}).order("count", query::Direction::desc).build();
  for (auto _ : state) benchmark::DoNotOptimize(query::execute(store, ast));
  std::filesystem::remove_all(dir);
}
BENCHMARK(BM_ExecuteGrouped)->Arg(100)->Arg(2000);

}  // namespace

BENCHMARK_MAIN();
