#include "aah/store.hpp"

#include "aah/error.hpp"
#include "sqlite.hpp"

#include <json.hpp>

#include <mutex>
#include <set>

namespace aah {

const std::string_view kSchemaDdl = R"sql(CREATE TABLE IF NOT EXISTS conference (
  conf_id TEXT NOT NULL PRIMARY KEY,
  venue_key TEXT NOT NULL,
  year INTEGER NOT NULL,
  title TEXT NOT NULL,
  "desc" TEXT,
  url TEXT NOT NULL,
  category TEXT NOT NULL,
  kind TEXT NOT NULL,
  status TEXT NOT NULL,
  attempts INTEGER NOT NULL,
  last_error TEXT,
  fetched_at TEXT,
  paper_count INTEGER
);
CREATE TABLE IF NOT EXISTS paper (
  anthology_id TEXT NOT NULL PRIMARY KEY,
  title TEXT NOT NULL,
  authors TEXT NOT NULL,
  authors_normalized TEXT NOT NULL,
  venue_key TEXT NOT NULL,
  year INTEGER NOT NULL,
  page_url TEXT NOT NULL,
  pdf_url TEXT,
  abstract TEXT,
  bibkey TEXT
);
)sql";

namespace {

using query::Scalar;

constexpr std::string_view kInsertPaper =
    "INSERT OR REPLACE INTO paper (anthology_id, title, authors, authors_normalized, venue_key, year, page_url, "
    "pdf_url, abstract, bibkey) VALUES (?, ?, ?, ?, ?, ?, ?, ?, ?, ?)";
constexpr std::string_view kInsertConference =
    "INSERT OR REPLACE INTO conference (conf_id, venue_key, year, title, \"desc\", url, category, kind, status, "
    "attempts, last_error, fetched_at, paper_count) VALUES (?, ?, ?, ?, ?, ?, ?, ?, ?, ?, ?, ?, ?)";

Scalar text_or_null(const std::optional<std::string>& v) { return v ? Scalar(*v) : Scalar(std::monostate{}); }

std::optional<std::string> optional_text(const Scalar& v) {
  if (const auto* s = std::get_if<std::string>(&v)) return *s;
  return std::nullopt;
}

std::string as_text(const Scalar& v) {
  if (const auto* s = std::get_if<std::string>(&v)) return *s;
  throw Error(Errc::store_unavailable, "expected a text value, got " + query::to_display(v));
}

std::int64_t as_int(const Scalar& v) {
  if (const auto* i = std::get_if<std::int64_t>(&v)) return *i;
  throw Error(Errc::store_unavailable, "expected an integer value, got " + query::to_display(v));
}

bool row_exists(sqlite::Connection& conn, std::string_view sql, const std::string& key) {
  auto stmt = conn.prepare(sql);
  stmt.bind(1, key);
  return stmt.step();
}

}  // namespace

void StoreConfig::validate() const {
  if (database_name.empty()) throw Error(Errc::invalid_argument, "database_name must not be empty");
}

std::filesystem::path StoreConfig::database_path() const {
  const std::string file = database_name + ".db";
  if (location.empty()) return file;
  std::error_code ec;
  if (std::filesystem::is_directory(location, ec)) return location / file;
  return location;
}

std::vector<Scalar> paper_to_row(const PaperRecord& p) {
  nlohmann::json authors = nlohmann::json::array();
  std::string normalized;
  for (const auto& a : p.authors) {
    authors.push_back(a.full);
    if (!normalized.empty()) normalized += "; ";
    normalized += a.normalized;
  }
  return {p.anthology_id,       p.title,    authors.dump(),           normalized,
          p.venue_key,          static_cast<std::int64_t>(p.year),    p.page_url,
          text_or_null(p.pdf_url), text_or_null(p.abstract), text_or_null(p.bibkey)};
}

PaperRecord paper_from_row(std::span<const Scalar> row) {
  if (row.size() != 10) throw Error(Errc::missing_column, "paper row needs 10 columns");
  PaperRecord p;
  p.anthology_id = as_text(row[0]);
  p.title = as_text(row[1]);
  try {
    for (const auto& name : nlohmann::json::parse(as_text(row[2]))) {
      p.authors.push_back(normalize_author(name.get<std::string>()));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::store_unavailable, std::string("corrupt authors column: ") + e.what());
  }
  p.venue_key = as_text(row[4]);
  p.year = static_cast<int>(as_int(row[5]));
  p.page_url = as_text(row[6]);
  p.pdf_url = optional_text(row[7]);
  p.abstract = optional_text(row[8]);
  p.bibkey = optional_text(row[9]);
  return p;
}

std::vector<Scalar> conference_to_row(const ConferenceRecord& c) {
  const auto& log = c.crawl_log;
  Scalar fetched = log.fetched_at ? Scalar(format_timestamp(*log.fetched_at)) : Scalar(std::monostate{});
  Scalar papers = log.paper_count ? Scalar(static_cast<std::int64_t>(*log.paper_count)) : Scalar(std::monostate{});
  return {c.conf_id,
          c.venue_key,
          static_cast<std::int64_t>(c.year),
          c.title,
          text_or_null(c.desc),
          c.url,
          std::string(to_string(c.category)),
          std::string(to_string(c.kind)),
          std::string(to_string(log.status)),
          static_cast<std::int64_t>(log.attempts),
          text_or_null(log.last_error),
          std::move(fetched),
          std::move(papers)};
}

ConferenceRecord conference_from_row(std::span<const Scalar> row) {
  if (row.size() != 13) throw Error(Errc::missing_column, "conference row needs 13 columns");
  ConferenceRecord c;
  c.conf_id = as_text(row[0]);
  c.venue_key = as_text(row[1]);
  c.year = static_cast<int>(as_int(row[2]));
  c.title = as_text(row[3]);
  c.desc = optional_text(row[4]);
  c.url = as_text(row[5]);
  c.category = category_from_string(as_text(row[6]));
  c.kind = event_kind_from_string(as_text(row[7]));
  c.crawl_log.status = crawl_status_from_string(as_text(row[8]));
  c.crawl_log.attempts = static_cast<int>(as_int(row[9]));
  c.crawl_log.last_error = optional_text(row[10]);
  if (const auto ts = optional_text(row[11])) {
    c.crawl_log.fetched_at = parse_timestamp(*ts);
    if (!c.crawl_log.fetched_at) throw Error(Errc::store_unavailable, "corrupt fetched_at: " + *ts);
  }
  if (!query::is_null_value(row[12])) c.crawl_log.paper_count = static_cast<int>(as_int(row[12]));
  return c;
}

struct Store::Impl {
  std::filesystem::path path;
  std::mutex write_mu;
  sqlite::Connection writer;
  std::function<void(std::size_t)> fault_injector;

  explicit Impl(std::filesystem::path p)
      : path(std::move(p)), writer(path.string(), sqlite::Connection::Mode::read_write_create) {}

  sqlite::Connection reader() const { return sqlite::Connection(path.string(), sqlite::Connection::Mode::read_only); }

  UpsertOutcome write_conference(const ConferenceRecord& c) {
    const bool existed = row_exists(writer, "SELECT 1 FROM conference WHERE conf_id = ?", c.conf_id);
    auto stmt = writer.prepare(kInsertConference);
    stmt.bind_all(conference_to_row(c));
    stmt.step();
    return existed ? UpsertOutcome::updated : UpsertOutcome::inserted;
  }

  UpsertCounts write_papers(std::span<const PaperRecord> papers) {
    UpsertCounts counts;
    auto exists = writer.prepare("SELECT 1 FROM paper WHERE anthology_id = ?");
    auto insert = writer.prepare(kInsertPaper);
    for (std::size_t i = 0; i < papers.size(); ++i) {
      if (fault_injector) fault_injector(i);
      exists.reset();
      exists.bind(1, papers[i].anthology_id);
      ++(exists.step() ? counts.updated : counts.inserted);
      insert.reset();
      insert.bind_all(paper_to_row(papers[i]));
      insert.step();
    }
    return counts;
  }
};

namespace {

void check_papers(std::span<const PaperRecord> papers) {
  std::set<std::string_view> seen;
  for (const auto& p : papers) {
    validate(p);
    if (!seen.insert(p.anthology_id).second) {
      throw Error(Errc::duplicate_in_batch, "anthology_id appears twice in batch: " + p.anthology_id);
    }
  }
}

}  // namespace

Store init_schema(const StoreConfig& config) {
  config.validate();
  auto impl = std::make_shared<Store::Impl>(config.database_path());
  impl->writer.exec("PRAGMA journal_mode=WAL");
  impl->writer.exec("PRAGMA synchronous=NORMAL");
  impl->writer.exec(kSchemaDdl);
  return Store(std::move(impl));
}

UpsertOutcome Store::upsert_conference(const ConferenceRecord& conference) const {
  validate(conference);
  std::lock_guard lock(impl_->write_mu);
  sqlite::Transaction tx(impl_->writer);
  const auto outcome = impl_->write_conference(conference);
  tx.commit();
  return outcome;
}

UpsertCounts Store::upsert_papers(std::span<const PaperRecord> papers) const {
  check_papers(papers);
  std::lock_guard lock(impl_->write_mu);
  sqlite::Transaction tx(impl_->writer);
  const auto counts = impl_->write_papers(papers);
  tx.commit();
  return counts;
}

UpsertCounts Store::persist_batch(const ConferenceRecord& conference, std::span<const PaperRecord> papers) const {
  validate(conference);
  check_papers(papers);
  std::lock_guard lock(impl_->write_mu);
  sqlite::Transaction tx(impl_->writer);
  impl_->write_conference(conference);
  const auto counts = impl_->write_papers(papers);
  tx.commit();
  return counts;
}

PaperList Store::load_all_papers() const {
  const auto rows = select({"SELECT anthology_id, title, authors, authors_normalized, venue_key, year, page_url, "
                            "pdf_url, abstract, bibkey FROM paper ORDER BY year, venue_key, anthology_id",
                            {}});
  std::vector<PaperRecord> papers;
  papers.reserve(rows.rows.size());
  for (const auto& row : rows.rows) papers.push_back(paper_from_row(row));
  return PaperList(std::move(papers));
}

std::vector<ConferenceRecord> Store::load_all_conferences() const {
  const auto rows = select({"SELECT * FROM conference ORDER BY conf_id", {}});
  std::vector<ConferenceRecord> out;
  for (const auto& row : rows.rows) out.push_back(conference_from_row(row));
  return out;
}

std::optional<ConferenceRecord> Store::find_conference(std::string_view conf_id) const {
  const auto rows = select({"SELECT * FROM conference WHERE conf_id = ?", {std::string(conf_id)}});
  if (rows.rows.empty()) return std::nullopt;
  return conference_from_row(rows.rows.front());
}

std::int64_t Store::count(query::Table table) const {
  const auto rows = select({"SELECT COUNT(*) FROM " + std::string(query::to_string(table)), {}});
  return as_int(rows.rows.at(0).at(0));
}

query::ResultSet Store::select(const query::SqlStatement& statement) const {
  auto conn = impl_->reader();
  auto stmt = conn.prepare(statement.text);
  stmt.bind_all(statement.params);
  query::ResultSet result;
  for (int i = 0; i < stmt.column_count(); ++i) result.columns.push_back(stmt.column_name(i));
  while (stmt.step()) {
    std::vector<Scalar> row;
    row.reserve(result.columns.size());
    for (int i = 0; i < stmt.column_count(); ++i) row.push_back(stmt.column(i));
    result.rows.push_back(std::move(row));
  }
  return result;
}

void Store::set_fault_injector(std::function<void(std::size_t)> hook) const {
  std::lock_guard lock(impl_->write_mu);
  impl_->fault_injector = std::move(hook);
}

const std::filesystem::path& Store::path() const { return impl_->path; }

}  // namespace aah
