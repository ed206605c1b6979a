#include "aah/paperlist.hpp"

#include <benchmark/benchmark.h>

#include <random>

namespace {

std::vector<aah::PaperRecord> make(int n, int offset) {
  std::vector<aah::PaperRecord> out;
  for (int i = 0; i < n; ++i) {
    aah::PaperRecord p;
    p.anthology_id = "2021.acl-long." + std::to_string(i + offset);
    p.title = "Story generation with plan " + std::to_string(i);
    p.authors = {aah::normalize_author("Jian Guan"), aah::normalize_author("Amélie Dubois")};
    p.venue_key = i % 2 == 0 ? "acl" : "emnlp";
    p.year = 2019 + i % 5;
    p.page_url = "https://aclanthology.org/" + p.anthology_id + "/";
    out.push_back(std::move(p));
  }
  return out;
}

void BM_Unite(benchmark::State& state) {
  const auto n = static_cast<int>(state.range(0));
  const aah::PaperList a(make(n, 0)), b(make(n, n / 2));
  for (auto _ : state) benchmark::DoNotOptimize(aah::unite(a, b));
}
BENCHMARK(BM_Unite)->Range(64, 8192);

void BM_FilterKeywords(benchmark::State& state) {
  const aah::PaperList a(make(static_cast<int>(state.range(0)), 0));
  const std::vector rules{aah::FilterRule::keyword_all({"story generation"}), aah::FilterRule::year_between(2021, 2023)};
  for (auto _ : state) benchmark::DoNotOptimize(aah::filter(a, rules));
}
BENCHMARK(BM_FilterKeywords)->Range(64, 8192);

void BM_Stats(benchmark::State& state) {
  const aah::PaperList a(make(static_cast<int>(state.range(0)), 0));
  const std::vector dims{aah::StatsDim::venue_key, aah::StatsDim::year};
  for (auto _ : state) benchmark::DoNotOptimize(aah::stats(a, dims));
}
BENCHMARK(BM_Stats)->Range(64, 8192);

}  // namespace

BENCHMARK_MAIN();
