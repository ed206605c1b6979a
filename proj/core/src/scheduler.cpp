#include "aah/scheduler.hpp"

#include "aah/error.hpp"
#include "aah/url.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <set>

namespace aah {
namespace {

using Clock = std::chrono::steady_clock;

std::int64_t elapsed_ms(Clock::time_point since) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - since).count();
}

Timestamp now_utc() { return std::chrono::floor<std::chrono::seconds>(std::chrono::system_clock::now()); }

int parse_year(std::string_view s) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
    throw Error(Errc::invalid_argument, "not a year: '" + std::string(s) + "'");
  }
  return v;
}

std::set<std::string> selected_venues(const CrawlConfig& config) {
  std::set<std::string> out;
  for (const auto& v : config.venues) out.insert(canonical_venue(v));
  return out;
}

nlohmann::ordered_json log_json(const CrawlLog& log) {
  nlohmann::ordered_json j;
  j["status"] = to_string(log.status);
  j["attempts"] = log.attempts;
  j["last_error"] = log.last_error ? nlohmann::ordered_json(*log.last_error) : nlohmann::ordered_json(nullptr);
  j["fetched_at"] =
      log.fetched_at ? nlohmann::ordered_json(format_timestamp(*log.fetched_at)) : nlohmann::ordered_json(nullptr);
  j["paper_count"] = log.paper_count ? nlohmann::ordered_json(*log.paper_count) : nlohmann::ordered_json(nullptr);
  return j;
}

}  // namespace

YearRange parse_year_range(std::string_view text) {
  const auto dots = text.find("..");
  YearRange r;
  if (dots == std::string_view::npos) {
    r.start = r.end = parse_year(text);
  } else {
    r.start = parse_year(text.substr(0, dots));
    r.end = parse_year(text.substr(dots + 2));
  }
  if (r.start > r.end) throw Error(Errc::invalid_argument, "year range start is after its end");
  return r;
}

void CrawlConfig::validate() const {
  if (year_range.start > year_range.end) throw Error(Errc::invalid_argument, "year range start is after its end");
  if (workers < 1) throw Error(Errc::invalid_argument, "workers must be >= 1");
  if (max_pages_per_task < 1) throw Error(Errc::invalid_argument, "max_pages_per_task must be >= 1");
  policy.validate();
}

std::string to_json(const CrawlReport& report) {
  nlohmann::ordered_json j;
  j["tasks_total"] = report.tasks_total;
  j["tasks_succeeded"] = report.tasks_succeeded;
  j["tasks_failed"] = report.tasks_failed;
  j["papers_stored"] = report.papers_stored;
  j["wall_ms"] = report.wall_ms;
  auto per = nlohmann::ordered_json::object();
  for (const auto& [conf_id, log] : report.per_conference) per[conf_id] = log_json(log);
  j["per_conference"] = std::move(per);
  j["warnings"] = report.warnings;
  return j.dump();
}

Discovery discover(const CrawlConfig& config, const Fetcher& fetcher) {
  Discovery out;
  const std::string index = index_url(config.source);
  out.index = parser::parse_index(fetcher.fetch(index).body, index);
  out.warnings = out.index.warnings;
  const auto wanted = selected_venues(config);
  std::set<std::string> found;
  for (const auto& link : out.index.venues) {
    std::string key;
    try {
      key = canonical_venue(url::last_segment(link.venue_url));
    } catch (const Error&) {
      out.warnings.push_back("venue link without a usable key: " + link.venue_url);
      continue;
    }
    if (!wanted.empty() && wanted.count(key) == 0) continue;
    if (!found.insert(key).second) continue;
    try {
      const auto page = fetcher.fetch(link.venue_url);
      out.venue_pages[key] = parser::parse_venue_page(page.body, link.category, key, link.venue_url);
    } catch (const Error& e) {
      out.warnings.push_back("venue " + key + " skipped: " + e.what());
    }
  }
  for (const auto& key : wanted) {
    if (found.count(key) == 0) out.warnings.push_back("venue " + key + " is not listed on the index page");
  }
  return out;
}

std::vector<ConferenceRecord> plan_tasks(const CrawlConfig& config, const parser::IndexParse& /*index*/,
                                         const std::map<std::string, std::vector<ConferenceRecord>>& venue_pages) {
  const auto wanted = selected_venues(config);
  std::vector<ConferenceRecord> tasks;
  std::set<std::string> seen;
  for (const auto& [key, records] : venue_pages) {
    for (const auto& rec : records) {
      if (!wanted.empty() && wanted.count(rec.venue_key) == 0) continue;
      if (!config.year_range.contains(rec.year)) continue;
      if (seen.insert(rec.conf_id).second) tasks.push_back(rec);
    }
  }
  if (tasks.empty()) throw Error(Errc::empty_plan, "no conference matches the selected venues and years");
  std::stable_sort(tasks.begin(), tasks.end(), [](const ConferenceRecord& a, const ConferenceRecord& b) {
    return std::tie(a.venue_key, a.year) < std::tie(b.venue_key, b.year);
  });
  return tasks;
}

CrawlRun::CrawlRun(CrawlConfig config, Store store, std::vector<ConferenceRecord> tasks)
    : CrawlRun(config, std::move(store), std::move(tasks), Fetcher(config.policy, config.source)) {}

CrawlRun::CrawlRun(CrawlConfig config, Store store, std::vector<ConferenceRecord> tasks, Fetcher fetcher)
    : config_(std::move(config)), store_(std::move(store)), fetcher_(std::move(fetcher)), tasks_(std::move(tasks)) {
  config_.validate();
  progress_.total = static_cast<int>(tasks_.size());
  progress_.pending = progress_.total;
}

CrawlRun::~CrawlRun() {
  cancel();
  threads_.clear();
}

void CrawlRun::start() {
  std::lock_guard lock(mu_);
  if (started_) return;
  started_ = true;
  started_at_ = Clock::now();
  const auto n = std::min<std::size_t>(static_cast<std::size_t>(config_.workers), tasks_.size());
  for (std::size_t i = 0; i < n; ++i) threads_.emplace_back([this] { worker(); });
}

ProgressSnapshot CrawlRun::snapshot() const {
  std::lock_guard lock(mu_);
  return progress_;
}

void CrawlRun::cancel() { cancelled_ = true; }

CrawlReport CrawlRun::wait() {
  start();
  for (auto& t : threads_) {
    if (t.joinable()) t.join();
  }
  std::lock_guard lock(mu_);
  if (fatal_) std::rethrow_exception(fatal_);
  CrawlReport report;
  report.tasks_total = progress_.total;
  report.tasks_succeeded = progress_.done;
  report.tasks_failed = progress_.failed;
  report.papers_stored = papers_stored_;
  report.per_conference = logs_;
  report.wall_ms = elapsed_ms(started_at_);
  report.warnings = warnings_;
  return report;
}

void CrawlRun::worker() {
  while (true) {
    const std::size_t index = cursor_.fetch_add(1);
    if (index >= tasks_.size()) return;
    {
      std::lock_guard lock(mu_);
      --progress_.pending;
      ++progress_.in_flight;
    }
    if (cancelled_) {
      auto record = tasks_[index];
      record.crawl_log = failure_log(1, "cancelled");
      finish_task(index, record, 0);
      continue;
    }
    run_task(index);
  }
}

CrawlLog CrawlRun::failure_log(int attempts, const std::string& message) const {
  CrawlLog log;
  log.status = CrawlStatus::failed;
  log.attempts = std::max(attempts, 1);
  log.last_error = message;
  log.fetched_at = now_utc();
  return log;
}

void CrawlRun::run_task(std::size_t index) {
  const auto t0 = Clock::now();
  ConferenceRecord record = tasks_[index];
  int attempts = 0;
  try {
    try {
      std::vector<PaperRecord> papers;
      std::set<std::string> ids;
      std::vector<std::string> queue{record.url};
      std::set<std::string> visited;
      std::vector<std::string> paper_links;
      for (std::size_t q = 0; q < queue.size() && static_cast<int>(visited.size()) < config_.max_pages_per_task; ++q) {
        if (!visited.insert(queue[q]).second) continue;
        const auto page = fetcher_.fetch(queue[q]);
        attempts += page.attempts_used;
        auto parsed = parser::parse_proceedings(page.body, record);
        for (auto& paper : parsed.papers) {
          if (ids.insert(paper.anthology_id).second) papers.push_back(std::move(paper));
        }
        for (auto& link : parsed.content.next_page_links) queue.push_back(std::move(link));
      }
      if (config_.enrich_papers) {
        for (auto& paper : papers) {
          try {
            const auto page = fetcher_.fetch(paper.page_url);
            attempts += page.attempts_used;
            parser::enrich(paper, parser::parse_paper_page(page.body, paper.page_url));
          } catch (const Error& e) {
            std::lock_guard lock(mu_);
            warnings_.push_back(record.conf_id + ": paper page " + paper.page_url + " not enriched: " + e.what());
          }
        }
      }
      record.crawl_log.status = CrawlStatus::stored;
      record.crawl_log.attempts = std::max(attempts, 1);
      record.crawl_log.last_error.reset();
      record.crawl_log.fetched_at = now_utc();
      record.crawl_log.paper_count = static_cast<int>(papers.size());
      store_.persist_batch(record, papers);
    } catch (const FetchError& e) {
      record.crawl_log = failure_log(attempts + e.attempts_used(), e.what());
      store_.upsert_conference(record);
    } catch (const Error& e) {
      if (e.code() == Errc::store_unavailable) throw;
      record.crawl_log = failure_log(attempts, e.what());
      store_.upsert_conference(record);
    } catch (const std::exception& e) {
      record.crawl_log = failure_log(attempts, e.what());
      store_.upsert_conference(record);
    }
  } catch (...) {
    {
      std::lock_guard lock(mu_);
      if (!fatal_) fatal_ = std::current_exception();
    }
    cancel();
    record.crawl_log = failure_log(attempts, "store unavailable");
  }
  finish_task(index, record, elapsed_ms(t0));
}

void CrawlRun::finish_task(std::size_t /*index*/, const ConferenceRecord& record, std::int64_t ms) {
  std::lock_guard lock(mu_);
  --progress_.in_flight;
  const auto& log = record.crawl_log;
  if (log.status == CrawlStatus::stored) {
    ++progress_.done;
    papers_stored_ += log.paper_count.value_or(0);
  } else {
    ++progress_.failed;
  }
  logs_[record.conf_id] = log;
  if (config_.progress != nullptr) {
    *config_.progress << record.conf_id << ' ' << to_string(log.status) << ' ' << log.paper_count.value_or(0) << ' '
                      << ms << '\n';
  }
}

CrawlReport run_crawl(const CrawlConfig& config, const Store& store) {
  config.validate();
  const auto t0 = Clock::now();
  Fetcher fetcher(config.policy, config.source);
  auto discovery = discover(config, fetcher);
  std::vector<ConferenceRecord> tasks;
  try {
    tasks = plan_tasks(config, discovery.index, discovery.venue_pages);
  } catch (const Error& e) {
    if (e.code() != Errc::empty_plan) throw;
    CrawlReport empty;
    empty.warnings = std::move(discovery.warnings);
    empty.warnings.emplace_back(e.what());
    empty.wall_ms = elapsed_ms(t0);
    return empty;
  }
  CrawlRun run(config, store, std::move(tasks), fetcher);
  auto report = run.wait();
  report.warnings.insert(report.warnings.begin(), discovery.warnings.begin(), discovery.warnings.end());
  report.wall_ms = elapsed_ms(t0);
  return report;
}

}  // namespace aah
