#include "cli.hpp"

#include "aah/error.hpp"
#include "aah/fetcher.hpp"
#include "aah/paperlist.hpp"
#include "aah/query.hpp"
#include "aah/scheduler.hpp"
#include "aah/serialize.hpp"
#include "aah/store.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdint>

namespace aah::cli {
namespace {

struct Options {
  std::string db;
  std::string database_name = "aclanthology";
  std::string fixture_root;

  std::vector<std::string> venues;
  std::string years;
  int workers = 8;
  std::string source = "live";
  FetchPolicy policy;
  bool enrich = false;
  bool report_json = false;

  std::vector<std::string> where;
  std::vector<std::string> order;
  std::int64_t limit = 0;
  std::int64_t offset = 0;
  std::string format = "json";

  std::vector<std::string> keyword_all;
  std::vector<std::string> keyword_any;
  std::vector<std::string> authors;
  bool has_abstract = false;
  bool any = false;

  std::vector<std::string> by;
  std::string stats_format = "json";
};

Store open_store(const Options& o) {
  StoreConfig cfg;
  cfg.database_name = o.database_name;
  cfg.location = o.db;
  return init_schema(cfg);
}

std::string render_papers(const PaperList& papers, const std::string& format) {
  if (format == "csv") return serialize::to_csv(papers);
  if (format == "bibtex") return serialize::to_bibtex(papers);
  if (format == "table") return serialize::to_table(papers);
  return serialize::to_jsonl(papers);
}

Source resolve_source(const Options& o) {
  if (o.source == "fixture") {
    if (o.fixture_root.empty()) throw Error(Errc::invalid_argument, "--source fixture needs fixture_root in the config");
    return FixtureSource{o.fixture_root};
  }
  return parse_source(o.source);
}

int cmd_harvest(const Options& o, std::ostream& out, std::ostream& err) {
  CrawlConfig cfg;
  cfg.venues = o.venues;
  if (!o.years.empty()) cfg.year_range = parse_year_range(o.years);
  cfg.workers = o.workers;
  cfg.policy = o.policy;
  cfg.source = resolve_source(o);
  cfg.enrich_papers = o.enrich;
  cfg.progress = &err;
  const Store store = open_store(o);
  const CrawlReport report = run_crawl(cfg, store);
  for (const auto& w : report.warnings) err << "warning: " << w << '\n';
  if (report.tasks_total == 0) {
    out << "0 tasks: no conference matches the selected venues and years\n";
  } else {
    out << report.tasks_total << " tasks, " << report.tasks_succeeded << " stored, " << report.tasks_failed
        << " failed, " << report.papers_stored << " papers stored in " << report.wall_ms << " ms\n";
  }
  if (o.report_json) out << to_json(report) << '\n';
  return report.tasks_failed > 0 ? kPartial : kOk;
}

int cmd_query(const Options& o, const CLI::App& sub, std::ostream& out) {
  auto builder = query::table(query::Table::paper);
  for (const auto& w : o.where) builder = builder.where(query::parse_condition(query::Table::paper, w));
  for (const auto& spec : o.order) {
    const auto colon = spec.rfind(':');
    if (colon == std::string::npos) {
      builder = builder.order(spec);
    } else {
      builder = builder.order(spec.substr(0, colon), query::direction_from_string(spec.substr(colon + 1)));
    }
  }
  if (sub.count("--limit") > 0) builder = builder.limit(o.limit);
  if (sub.count("--offset") > 0) builder = builder.offset(o.offset);
  const auto ast = builder.build();
  const Store store = open_store(o);
  const auto result = query::execute(store, ast);
  out << render_papers(query::hydrate_papers(std::get<query::ResultSet>(result)), o.format);
  return kOk;
}

int cmd_filter(const Options& o, const CLI::App& sub, std::ostream& out) {
  std::vector<FilterRule> rules;
  if (!o.years.empty()) {
    const auto range = parse_year_range(o.years);
    rules.push_back(FilterRule::year_between(range.start, range.end));
  }
  if (!o.venues.empty()) rules.push_back(FilterRule::venue_in(o.venues));
  if (!o.keyword_all.empty()) rules.push_back(FilterRule::keyword_all(o.keyword_all));
  if (!o.keyword_any.empty()) rules.push_back(FilterRule::keyword_any(o.keyword_any));
  if (!o.authors.empty()) rules.push_back(FilterRule::author(o.authors));
  if (sub.count("--has-abstract") > 0) rules.push_back(FilterRule::has_abstract());
  const Store store = open_store(o);
  const auto papers = filter(store.load_all_papers(), rules, o.any ? Combine::any : Combine::all);
  out << render_papers(papers, o.format);
  return kOk;
}

int cmd_stats(const Options& o, std::ostream& out) {
  std::vector<StatsDim> dims;
  for (const auto& b : o.by) {
    if (b == "year") {
      dims.push_back(StatsDim::year);
    } else if (b == "venue" || b == "venue_key") {
      dims.push_back(StatsDim::venue_key);
    } else if (b == "author") {
      dims.push_back(StatsDim::author);
    } else {
      throw Error(Errc::bad_dims, "unknown dimension '" + b + "' (expected year, venue or author)");
    }
  }
  const Store store = open_store(o);
  const auto node = stats(store.load_all_papers(), dims);
  if (o.stats_format == "table") {
    out << serialize::stats_to_table(node, dims);
  } else {
    out << serialize::stats_to_json(node) << '\n';
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Harvest, store and search anthology proceedings", "aah"};
  app.require_subcommand(1);
  app.set_config("--config", "aah.toml", "TOML configuration file");
  app.add_option("--db", o.db, "Database file or directory")->envname("AAH_DB");
  app.add_option("--database-name", o.database_name, "Database name used inside a directory location");
  app.add_option("--fixture-root", o.fixture_root, "Corpus directory used by --source fixture");

  const std::vector<std::string> formats{"json", "csv", "bibtex", "table"};

  auto* harvest = app.add_subcommand("harvest", "Crawl proceedings into the store");
  harvest->add_option("--venues", o.venues, "Venue keys, comma separated (default: all)")->delimiter(',');
  harvest->add_option("--years", o.years, "Inclusive year range A..B");
  harvest->add_option("--workers", o.workers, "Worker threads")->check(CLI::PositiveNumber);
  harvest->add_option("--source", o.source, "live | fixture[:<dir>] | mock:<url>");
  harvest->add_option("--max-attempts", o.policy.max_attempts, "Attempts per page");
  harvest->add_option("--backoff-ms", o.policy.base_backoff_ms, "Initial retry backoff");
  harvest->add_option("--timeout-ms", o.policy.timeout_ms, "Per-request timeout");
  harvest->add_option("--min-interval-ms", o.policy.min_interval_ms, "Minimum spacing between request starts");
  harvest->add_flag("--enrich", o.enrich, "Fetch paper pages to fill missing fields");
  harvest->add_flag("--report-json", o.report_json, "Print the crawl report as JSON");

  auto* query_cmd = app.add_subcommand("query", "Select papers with a chained query");
  query_cmd->add_option("--where", o.where, "col:op:value, repeatable")->allow_extra_args(false);
  query_cmd->add_option("--order", o.order, "col[:asc|desc], repeatable")->allow_extra_args(false);
  query_cmd->add_option("--limit", o.limit, "Row limit")->check(CLI::NonNegativeNumber);
  query_cmd->add_option("--offset", o.offset, "Rows to skip (needs --limit)")->check(CLI::NonNegativeNumber);
  query_cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember(formats));

  auto* filter_cmd = app.add_subcommand("filter", "Rule-based filtering over every stored paper");
  filter_cmd->add_option("--keyword-all", o.keyword_all, "Every keyword must occur in title or abstract");
  filter_cmd->add_option("--keyword-any", o.keyword_any, "At least one keyword must occur");
  filter_cmd->add_option("--author", o.authors, "Author name, repeatable")->allow_extra_args(false);
  filter_cmd->add_option("--venues", o.venues, "Venue keys, comma separated")->delimiter(',');
  filter_cmd->add_option("--years", o.years, "Inclusive year range A..B");
  filter_cmd->add_flag("--has-abstract", o.has_abstract, "Keep papers with an abstract");
  filter_cmd->add_flag("--any", o.any, "Keep papers matching any rule instead of all");
  filter_cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember(formats));

  auto* stats_cmd = app.add_subcommand("stats", "Nested paper counts");
  stats_cmd->add_option("--by", o.by, "year | venue | author, repeatable")->allow_extra_args(false)->required();
  stats_cmd->add_option("--format", o.stats_format, "Output format")->check(CLI::IsMember({"json", "table"}));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsage;
  }

  try {
    if (harvest->parsed()) return cmd_harvest(o, out, err);
    if (query_cmd->parsed()) return cmd_query(o, *query_cmd, out);
    if (filter_cmd->parsed()) return cmd_filter(o, *filter_cmd, out);
    return cmd_stats(o, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    if (e.code() == Errc::invalid_argument || e.code() == Errc::unknown_column || e.code() == Errc::bad_arity ||
        e.code() == Errc::invalid_chain) {
      err << "run 'aah --help' for usage\n";
    }
    return kUsage;
  }
}

}  // namespace aah::cli
