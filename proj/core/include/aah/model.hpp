#pragma once

#include <chrono>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace aah {

inline constexpr int kMinYear = 1950;
inline constexpr int kMaxYear = 2100;

using Timestamp = std::chrono::sys_seconds;

// UTC ISO-8601, second precision: "2023-05-01T12:00:00Z".
std::string format_timestamp(Timestamp ts);
std::optional<Timestamp> parse_timestamp(std::string_view text);

struct AuthorName {
  std::string full;
  std::string normalized;

  friend bool operator==(const AuthorName&, const AuthorName&) = default;
};

struct PaperRecord {
  std::string anthology_id;
  std::string title;
  std::vector<AuthorName> authors;
  std::string venue_key;
  int year = 0;
  std::string page_url;
  std::optional<std::string> pdf_url;
  std::optional<std::string> abstract;
  std::optional<std::string> bibkey;

  // Field-wise equality; set identity is anthology_id only (see PaperList).
  friend bool operator==(const PaperRecord&, const PaperRecord&) = default;
};

enum class Category { acl_event, non_acl_event };
enum class EventKind { conference };
enum class CrawlStatus { pending, fetching, parsed, stored, failed };

std::string_view to_string(Category c);
std::string_view to_string(EventKind k);
std::string_view to_string(CrawlStatus s);
Category category_from_string(std::string_view s);
EventKind event_kind_from_string(std::string_view s);
CrawlStatus crawl_status_from_string(std::string_view s);

struct CrawlLog {
  CrawlStatus status = CrawlStatus::pending;
  int attempts = 0;
  std::optional<std::string> last_error;
  std::optional<Timestamp> fetched_at;
  std::optional<int> paper_count;

  friend bool operator==(const CrawlLog&, const CrawlLog&) = default;
};

struct ConferenceRecord {
  std::string conf_id;
  std::string venue_key;
  int year = 0;
  std::string title;
  std::optional<std::string> desc;
  std::string url;
  Category category = Category::acl_event;
  EventKind kind = EventKind::conference;
  CrawlLog crawl_log;

  friend bool operator==(const ConferenceRecord&, const ConferenceRecord&) = default;
};

// Crawl-hop payload. Deliberately has no persistence path.
struct ConContent {
  ConferenceRecord conference;
  std::vector<std::string> paper_page_links;
  std::vector<std::string> next_page_links;
};

// Casefolded venue token: whitespace and punctuation runs become "-".
// Throws Error(empty_input) when nothing canonical remains.
std::string canonical_venue(std::string_view raw);

AuthorName normalize_author(std::string_view full);

std::string make_conf_id(std::string_view venue_key, int year);
// Inverse of make_conf_id; splits at the last '-'.
std::optional<std::pair<std::string, int>> parse_conf_id(std::string_view conf_id);

// Builds a pending ConferenceRecord with conf_id derived from venue and year.
ConferenceRecord make_conference(std::string venue_key, int year, std::string title,
                                 std::string url, Category category,
                                 std::optional<std::string> desc = std::nullopt);

bool is_valid_venue_key(std::string_view key);
bool is_valid_year(int year);

// Throw Error(invalid_argument) describing the first violated invariant.
void validate(const PaperRecord& paper);
void validate(const ConferenceRecord& conference);
void validate(const CrawlLog& log);

}  // namespace aah
