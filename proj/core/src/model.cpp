#include "aah/model.hpp"

#include "aah/error.hpp"
#include "aah/text.hpp"
#include "aah/url.hpp"

#include <charconv>
#include <cstdio>

namespace aah {

std::string format_timestamp(Timestamp ts) {
  using namespace std::chrono;
  const auto day = floor<days>(ts);
  const year_month_day ymd{day};
  const hh_mm_ss hms{ts - day};
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02dZ", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                static_cast<int>(hms.hours().count()), static_cast<int>(hms.minutes().count()),
                static_cast<int>(hms.seconds().count()));
  return buf;
}

std::optional<Timestamp> parse_timestamp(std::string_view text) {
  using namespace std::chrono;
  if (text.size() != 20 || text[4] != '-' || text[7] != '-' || text[10] != 'T' || text[13] != ':' ||
      text[16] != ':' || text[19] != 'Z') {
    return std::nullopt;
  }
  auto field = [&](std::size_t pos, std::size_t len) -> std::optional<int> {
    int v = 0;
    const auto* first = text.data() + pos;
    const auto [ptr, ec] = std::from_chars(first, first + len, v);
    if (ec != std::errc() || ptr != first + len) return std::nullopt;
    return v;
  };
  const auto y = field(0, 4), mo = field(5, 2), d = field(8, 2);
  const auto h = field(11, 2), mi = field(14, 2), s = field(17, 2);
  if (!y || !mo || !d || !h || !mi || !s) return std::nullopt;
  const year_month_day ymd{year{*y}, month{static_cast<unsigned>(*mo)}, day{static_cast<unsigned>(*d)}};
  if (!ymd.ok() || *h > 23 || *mi > 59 || *s > 60) return std::nullopt;
  return sys_days{ymd} + hours{*h} + minutes{*mi} + seconds{*s};
}

std::string_view to_string(Category c) {
  return c == Category::acl_event ? "acl_event" : "non_acl_event";
}

std::string_view to_string(EventKind) { return "conference"; }

std::string_view to_string(CrawlStatus s) {
  switch (s) {
    case CrawlStatus::pending: return "pending";
    case CrawlStatus::fetching: return "fetching";
    case CrawlStatus::parsed: return "parsed";
    case CrawlStatus::stored: return "stored";
    case CrawlStatus::failed: return "failed";
  }
  return "pending";
}

Category category_from_string(std::string_view s) {
  if (s == "acl_event") return Category::acl_event;
  if (s == "non_acl_event") return Category::non_acl_event;
  throw Error(Errc::invalid_argument, "unknown category '" + std::string(s) + "'");
}

EventKind event_kind_from_string(std::string_view s) {
  if (s == "conference") return EventKind::conference;
  throw Error(Errc::invalid_argument, "unknown event kind '" + std::string(s) + "'");
}

CrawlStatus crawl_status_from_string(std::string_view s) {
  for (auto status : {CrawlStatus::pending, CrawlStatus::fetching, CrawlStatus::parsed,
                      CrawlStatus::stored, CrawlStatus::failed}) {
    if (to_string(status) == s) return status;
  }
  throw Error(Errc::invalid_argument, "unknown crawl status '" + std::string(s) + "'");
}

std::string canonical_venue(std::string_view raw) {
  const std::string folded = text::casefold(text::strip_diacritics(raw));
  std::string out;
  bool pending_dash = false;
  for (const char ch : folded) {
    const bool keep = (ch >= 'a' && ch <= 'z') || (ch >= '0' && ch <= '9') || ch == '_';
    if (!keep) {
      pending_dash = !out.empty();
      continue;
    }
    if (pending_dash) out += '-';
    pending_dash = false;
    out += ch;
  }
  if (out.empty()) {
    throw Error(Errc::empty_input, "venue name has no canonical characters: '" + std::string(raw) + "'");
  }
  return out;
}

AuthorName normalize_author(std::string_view full) {
  std::string display = text::collapse_whitespace(full);
  if (display.empty()) throw Error(Errc::empty_input, "author name is empty");
  // NFKD can turn compatibility characters into spaces, so collapse again afterwards.
  std::string normalized = text::collapse_whitespace(text::casefold(text::strip_diacritics(display)));
  return AuthorName{std::move(display), std::move(normalized)};
}

std::string make_conf_id(std::string_view venue_key, int year) {
  return std::string(venue_key) + "-" + std::to_string(year);
}

std::optional<std::pair<std::string, int>> parse_conf_id(std::string_view conf_id) {
  const auto dash = conf_id.rfind('-');
  if (dash == std::string_view::npos || dash == 0) return std::nullopt;
  const auto year_text = conf_id.substr(dash + 1);
  int year = 0;
  const auto [ptr, ec] = std::from_chars(year_text.data(), year_text.data() + year_text.size(), year);
  if (ec != std::errc() || ptr != year_text.data() + year_text.size() || year_text.empty()) return std::nullopt;
  if (std::to_string(year) != year_text) return std::nullopt;
  auto venue = std::string(conf_id.substr(0, dash));
  if (!is_valid_venue_key(venue)) return std::nullopt;
  return std::pair{std::move(venue), year};
}

ConferenceRecord make_conference(std::string venue_key, int year, std::string title, std::string url,
                                 Category category, std::optional<std::string> desc) {
  ConferenceRecord rec;
  rec.conf_id = make_conf_id(venue_key, year);
  rec.venue_key = std::move(venue_key);
  rec.year = year;
  rec.title = std::move(title);
  rec.desc = std::move(desc);
  rec.url = std::move(url);
  rec.category = category;
  rec.kind = EventKind::conference;
  return rec;
}

bool is_valid_venue_key(std::string_view key) {
  if (key.empty()) return false;
  for (const char ch : key) {
    const bool ok = (ch >= 'a' && ch <= 'z') || (ch >= '0' && ch <= '9') || ch == '_' || ch == '-';
    if (!ok) return false;
  }
  return true;
}

bool is_valid_year(int year) { return year >= kMinYear && year <= kMaxYear; }

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(Errc::invalid_argument, what);
}

}  // namespace

void validate(const PaperRecord& paper) {
  require(!paper.anthology_id.empty(), "paper has empty anthology_id");
  const std::string ctx = " (" + paper.anthology_id + ")";
  require(!paper.title.empty(), "paper has empty title" + ctx);
  require(is_valid_venue_key(paper.venue_key), "invalid venue_key '" + paper.venue_key + "'" + ctx);
  require(is_valid_year(paper.year), "year out of range" + ctx);
  require(url::is_absolute(paper.page_url), "page_url is not absolute" + ctx);
  require(!paper.pdf_url || url::is_absolute(*paper.pdf_url), "pdf_url is not absolute" + ctx);
  for (const auto& author : paper.authors) {
    require(normalize_author(author.full) == author, "author name not normalized" + ctx);
  }
}

void validate(const CrawlLog& log) {
  require(log.attempts >= 0, "negative attempt count");
  require(log.status == CrawlStatus::pending || log.attempts >= 1, "non-pending log without attempts");
  require(log.status != CrawlStatus::stored || log.paper_count.has_value(), "stored log without paper_count");
  require(log.status != CrawlStatus::failed || log.last_error.has_value(), "failed log without last_error");
  require(!log.paper_count || *log.paper_count >= 0, "negative paper_count");
}

void validate(const ConferenceRecord& conference) {
  require(is_valid_venue_key(conference.venue_key), "invalid venue_key '" + conference.venue_key + "'");
  require(is_valid_year(conference.year), "year out of range (" + conference.conf_id + ")");
  require(conference.conf_id == make_conf_id(conference.venue_key, conference.year),
          "conf_id '" + conference.conf_id + "' does not match venue and year");
  require(url::is_absolute(conference.url), "conference url is not absolute (" + conference.conf_id + ")");
  validate(conference.crawl_log);
}

}  // namespace aah
