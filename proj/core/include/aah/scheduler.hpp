#pragma once

#include "aah/fetcher.hpp"
#include "aah/model.hpp"
#include "aah/parser.hpp"
#include "aah/store.hpp"

#include <atomic>
#include <chrono>
#include <cstdint>
#include <exception>
#include <iostream>
#include <map>
#include <mutex>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

namespace aah {

struct YearRange {
  int start = kMinYear;
  int end = kMaxYear;

  bool contains(int year) const { return year >= start && year <= end; }
};

// "2021..2023" or a single "2021". Throws Error(invalid_argument).
YearRange parse_year_range(std::string_view text);

struct CrawlConfig {
  std::vector<std::string> venues;  // empty = every discovered venue
  YearRange year_range;
  int workers = 8;
  FetchPolicy policy;
  Source source = LiveSource{};
  bool enrich_papers = false;     // fetch each paper page to fill absent fields
  int max_pages_per_task = 16;    // proceedings page plus followed pagination links
  std::ostream* progress = &std::cerr;  // per-task lines; null silences them

  void validate() const;
};

struct CrawlReport {
  int tasks_total = 0;
  int tasks_succeeded = 0;
  int tasks_failed = 0;
  std::int64_t papers_stored = 0;
  std::map<std::string, CrawlLog> per_conference;
  std::int64_t wall_ms = 0;
  std::vector<std::string> warnings;
};

std::string to_json(const CrawlReport& report);

struct Discovery {
  parser::IndexParse index;
  std::map<std::string, std::vector<ConferenceRecord>> venue_pages;  // by venue_key
  std::vector<std::string> warnings;
};

// Fetches the index and the venue pages of the selected venues.
Discovery discover(const CrawlConfig& config, const Fetcher& fetcher);

// Records matching the venue and year selection, unique by conf_id, ordered by
// (venue_key, year). Throws Error(empty_plan) when nothing matches.
std::vector<ConferenceRecord> plan_tasks(const CrawlConfig& config, const parser::IndexParse& index,
                                         const std::map<std::string, std::vector<ConferenceRecord>>& venue_pages);

struct ProgressSnapshot {
  int done = 0;  // tasks stored
  int total = 0;
  int failed = 0;
  int pending = 0;
  int in_flight = 0;

  friend bool operator==(const ProgressSnapshot&, const ProgressSnapshot&) = default;
};

// One crawl over a fixed task list. done + failed + pending + in_flight == total.
class CrawlRun {
 public:
  CrawlRun(CrawlConfig config, Store store, std::vector<ConferenceRecord> tasks);
  // Shares `fetcher`'s rate gate with earlier requests.
  CrawlRun(CrawlConfig config, Store store, std::vector<ConferenceRecord> tasks, Fetcher fetcher);
  ~CrawlRun();
  CrawlRun(const CrawlRun&) = delete;
  CrawlRun& operator=(const CrawlRun&) = delete;

  void start();
  ProgressSnapshot snapshot() const;
  // Unclaimed tasks are marked failed("cancelled"); running tasks finish.
  void cancel();
  // Joins the workers. Rethrows Error(store_unavailable) if the store failed.
  CrawlReport wait();

 private:
  void worker();
  void run_task(std::size_t index);
  void finish_task(std::size_t index, const ConferenceRecord& record, std::int64_t ms);
  CrawlLog failure_log(int attempts, const std::string& message) const;

  CrawlConfig config_;
  Store store_;
  Fetcher fetcher_;
  std::vector<ConferenceRecord> tasks_;

  mutable std::mutex mu_;
  ProgressSnapshot progress_;
  std::int64_t papers_stored_ = 0;
  std::map<std::string, CrawlLog> logs_;
  std::vector<std::string> warnings_;
  std::exception_ptr fatal_;

  std::atomic<std::size_t> cursor_{0};
  std::atomic<bool> cancelled_{false};
  std::chrono::steady_clock::time_point started_at_;
  bool started_ = false;
  std::vector<std::jthread> threads_;
};

// discover + plan_tasks + CrawlRun. An empty plan yields an all-zero report.
CrawlReport run_crawl(const CrawlConfig& config, const Store& store);

}  // namespace aah
