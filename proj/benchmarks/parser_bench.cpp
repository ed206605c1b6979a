#include "aah/parser.hpp"

#include <benchmark/benchmark.h>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

const std::filesystem::path kRoot = AAH_FIXTURE_DIR;

void BM_ParseProceedings(benchmark::State& state) {
  const auto html = slurp(kRoot / "proceedings/acl-2021.html");
  const auto conf = aah::make_conference("acl", 2021, "ACL 2021", "fixture://corpus/proceedings/acl-2021.html",
                                         aah::Category::acl_event);
  for (auto _ : state) benchmark::DoNotOptimize(aah::parser::parse_proceedings(html, conf));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * html.size()));
}
BENCHMARK(BM_ParseProceedings);

void BM_ParseIndex(benchmark::State& state) {
  const auto html = slurp(kRoot / "index.html");
  for (auto _ : state) benchmark::DoNotOptimize(aah::parser::parse_index(html, "fixture://corpus/index.html"));
}
BENCHMARK(BM_ParseIndex);

}  // namespace

BENCHMARK_MAIN();
