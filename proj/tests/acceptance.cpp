// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any failure.
#include "aah/query.hpp"
#include "aah/serialize.hpp"
#include "aah/store.hpp"

#include "algebra.hpp"
#include "cli.hpp"
#include "corpus.hpp"
#include "crawl.hpp"
#include "generators.hpp"
#include "goldens.hpp"
#include "mock_server.hpp"
#include "oracle.hpp"

#include <json.hpp>

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

namespace {

using namespace aah;
using testing::TempDir;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool ok = true;
  std::string detail;

  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt_seconds(double s) {
  std::ostringstream o;
  o.precision(3);
  o << std::fixed << s << " s";
  return o.str();
}

int cli_run(const std::vector<std::string>& args, std::string& out) {
  std::ostringstream o, e;
  const int code = cli::run(args, o, e);
  out = o.str();
  return code;
}

Store open(const std::filesystem::path& path) {
  StoreConfig cfg;
  cfg.location = path;
  return init_schema(cfg);
}

Outcome retrieval() {
  Outcome r;
  TempDir dir;
  const auto db = (dir / "a.db").string();
  std::string out;
  if (cli_run({"--db", db, "harvest", "--source", "fixture:" + testing::fixture_dir().string()}, out) != cli::kOk) {
    r.fail("harvest failed: " + out);
    return r;
  }
  const auto t0 = Clock::now();
  const int code = cli_run({"--db", db, "filter", "--years", "2021..2023", "--venues", "acl,emnlp,naacl", "--keyword-all",
                            "story generation", "--keyword-any", "event", "persona", "coherence", "metrics"},
                           out);
  const double elapsed = seconds_since(t0);
  std::vector<std::string> ids;
  std::istringstream lines(out);
  for (std::string line; std::getline(lines, line);) {
    if (!line.empty()) ids.push_back(nlohmann::json::parse(line).at("anthology_id"));
  }
  const std::vector<std::string> expected{"2021.acl-long.41", "2021.acl-long.49", "2022.emnlp-main.30",
                                          "2022.naacl-main.14"};
  if (code != cli::kOk) r.fail("filter exit " + std::to_string(code));
  if (ids != expected) r.fail("got " + std::to_string(ids.size()) + " ids, not the expected four");
  if (elapsed >= 1.0) r.fail("filter took " + fmt_seconds(elapsed));
  r.detail = r.ok ? "4 ids in " + fmt_seconds(elapsed) : r.detail;
  return r;
}

Outcome golden_suite() {
  Outcome r;
  const auto t0 = Clock::now();
  const auto g = testing::run_golden_suite(testing::fixture_dir());
  const double elapsed = seconds_since(t0);
  if (!g.failures.empty()) r.fail(std::to_string(g.failures.size()) + " mismatches, first: " + g.failures.front());
  if (g.pages < 25) r.fail("only " + std::to_string(g.pages) + " pages");
  if (elapsed >= 5.0) r.fail("took " + fmt_seconds(elapsed));
  if (r.ok) r.detail = std::to_string(g.pages) + " pages, " + std::to_string(g.checks) + " spot checks in " + fmt_seconds(elapsed);
  return r;
}

Outcome concurrent_crawl() {
  Outcome r;
  const auto t0 = Clock::now();
  testing::MockServer server(testing::fixture_dir());
  FetchPolicy policy;
  policy.max_attempts = 3;
  policy.base_backoff_ms = 10;
  policy.min_interval_ms = 20;
  policy.timeout_ms = 5000;
  std::optional<std::set<std::string>> first;
  long long tightest = -1;
  for (const int workers : {1, 2, 8}) {
    TempDir dir;
    const auto c = testing::run_scripted_crawl(server, workers, policy, dir / "c.db");
    const auto tag = "workers=" + std::to_string(workers) + ": ";
    if (c.report.tasks_total < 25) r.fail(tag + "only " + std::to_string(c.report.tasks_total) + " tasks");
    if (!first) {
      first = c.ids;
    } else if (*first != c.ids) {
      r.fail(tag + "stored id set differs");
    }
    if (c.report.tasks_failed != 1) r.fail(tag + "tasks_failed=" + std::to_string(c.report.tasks_failed));
    for (const auto& [path, n] : c.hits) {
      if (n > policy.max_attempts) r.fail(tag + path + " requested " + std::to_string(n) + " times");
    }
    const auto gap = testing::min_gap_us(c.log);
    if (gap < policy.min_interval_ms * 1000LL) r.fail(tag + "request gap " + std::to_string(gap) + " us");
    if (tightest < 0 || gap < tightest) tightest = gap;
  }
  const double elapsed = seconds_since(t0);
  if (elapsed >= 30.0) r.fail("took " + fmt_seconds(elapsed));
  if (r.ok) {
    r.detail = std::to_string(first->size()) + " papers per run, min gap " + std::to_string(tightest) + " us, " +
               fmt_seconds(elapsed);
  }
  return r;
}

Outcome query_oracle() {
  Outcome r;
  int goldens = 0;
  for (const auto& g : testing::sql_goldens()) {
    const auto ast = g.chain.build();
    const auto sql = query::render_sql(ast);
    if (sql != g.sql || query::bound_params(ast) != g.params) r.fail("golden '" + g.name + "' renders " + sql);
    ++goldens;
  }
  if (goldens != 20) r.fail("expected 20 goldens");

  testing::Rng rng(20240501);
  int chains = 0;
  for (int s = 0; s < 5 && r.ok; ++s) {
    TempDir dir;
    const auto store = open(dir / "q.db");
    const auto papers = testing::random_papers(rng, std::uniform_int_distribution<int>(40, 170)(rng));
    const auto confs = testing::random_conferences(rng, std::uniform_int_distribution<int>(5, 30)(rng));
    store.upsert_papers(papers);
    for (const auto& c : confs) store.upsert_conference(c);
    const auto data = testing::make_table_data(papers, confs);
    int done = 0;
    while (done < 100 && r.ok) {
      query::QueryAst ast;
      try {
        ast = testing::random_chain(rng, data).build();
      } catch (const std::exception&) {
        continue;
      }
      ++done;
      ++chains;
      if (query::execute(store, ast) != testing::evaluate(data, ast)) {
        r.fail("chain mismatch: " + query::compile(ast).text);
      }
    }
  }
  if (r.ok) r.detail = std::to_string(chains) + " random chains and " + std::to_string(goldens) + " SQL goldens";
  return r;
}

Outcome set_algebra() {
  Outcome r;
  const auto t0 = Clock::now();
  testing::Rng rng(777);
  for (int i = 0; i < 1000 && r.ok; ++i) {
    const auto failures = testing::check_set_algebra(testing::random_triple(rng));
    if (!failures.empty()) r.fail("triple " + std::to_string(i) + ": " + failures.front());
  }
  const double elapsed = seconds_since(t0);
  if (elapsed >= 5.0) r.fail("took " + fmt_seconds(elapsed));
  if (r.ok) r.detail = "1000 triples in " + fmt_seconds(elapsed);
  return r;
}

Outcome round_trip() {
  Outcome r;
  testing::Rng rng(99);
  TempDir dir;
  const auto store = open(dir / "r.db");
  const auto papers = testing::random_papers(rng, 200);
  store.upsert_papers(papers);
  const auto loaded = store.load_all_papers();
  if (loaded.size() != papers.size()) r.fail("loaded " + std::to_string(loaded.size()) + " rows");
  for (const auto& p : papers) {
    const auto* back = loaded.find(p.anthology_id);
    if (back == nullptr || *back != p) {
      r.fail("store changed " + p.anthology_id);
      continue;
    }
    if (serialize::paper_from_json(serialize::to_json_line(*back)) != p) r.fail("JSON changed " + p.anthology_id);
  }

  const auto conf = make_conference("acl", 2030, "Proceedings", "https://example.org/acl-2030", Category::acl_event);
  const auto before_papers = store.load_all_papers();
  const auto before_confs = store.load_all_conferences();
  auto batch = testing::random_papers(rng, 12);
  for (std::size_t i = 0; i < batch.size(); ++i) batch[i].anthology_id = "2030.acl-main." + std::to_string(i + 1);
  batch[3] = papers[0];
  store.set_fault_injector([](std::size_t i) {
    if (i == 7) throw std::runtime_error("injected");
  });
  bool threw = false;
  try {
    store.persist_batch(conf, batch);
  } catch (const std::exception&) {
    threw = true;
  }
  store.set_fault_injector(nullptr);
  if (!threw) r.fail("injected failure did not surface");
  if (store.load_all_papers() != before_papers || store.load_all_conferences() != before_confs) {
    r.fail("store changed after a failed batch");
  }
  if (r.ok) r.detail = "200 records exact; failed batch left the store unchanged";
  return r;
}

Outcome idempotence() {
  Outcome r;
  TempDir dir;
  const auto db = (dir / "i.db").string();
  const auto src = "fixture:" + testing::fixture_dir().string();
  std::string out, stats1, stats2;
  if (cli_run({"--db", db, "harvest", "--source", src}, out) != cli::kOk) r.fail("first harvest failed");
  cli_run({"--db", db, "stats", "--by", "venue", "--by", "year"}, stats1);
  const auto store = open(db);
  const auto papers = store.count(query::Table::paper);
  const auto confs = store.count(query::Table::conference);
  if (cli_run({"--db", db, "harvest", "--source", src}, out) != cli::kOk) r.fail("second harvest failed");
  cli_run({"--db", db, "stats", "--by", "venue", "--by", "year"}, stats2);
  if (stats1.empty() || stats1 != stats2) r.fail("stats output differs between harvests");
  if (store.count(query::Table::paper) != papers || store.count(query::Table::conference) != confs) {
    r.fail("row counts changed");
  }
  if (r.ok) r.detail = std::to_string(papers) + " papers, " + std::to_string(confs) + " conferences, stats byte-equal";
  return r;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"fixture retrieval returns the four target papers", retrieval},
      {"parser golden suite", golden_suite},
      {"crawl correctness under concurrency", concurrent_crawl},
      {"query execution matches the oracle", query_oracle},
      {"set-algebra properties", set_algebra},
      {"round-trip fidelity and batch atomicity", round_trip},
      {"end-to-end harvest idempotence", idempotence},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    std::cout << (o.ok ? "PASS " : "FAIL ") << (i + 1) << ' ' << criteria[i].first << " (" << o.detail << ")"
              << std::endl;
    if (!o.ok) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
