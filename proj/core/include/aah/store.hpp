#pragma once

#include "aah/model.hpp"
#include "aah/paperlist.hpp"
#include "aah/query.hpp"

#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace aah {

struct StoreConfig {
  std::string database_name = "aclanthology";
  // A directory (the file becomes <location>/<database_name>.db) or a file path.
  // Empty means the current directory.
  std::filesystem::path location;

  void validate() const;
  std::filesystem::path database_path() const;
};

// Bit-exact schema of the embedded backend.
extern const std::string_view kSchemaDdl;

enum class UpsertOutcome { inserted, updated };

struct UpsertCounts {
  int inserted = 0;
  int updated = 0;

  friend bool operator==(const UpsertCounts&, const UpsertCounts&) = default;
};

// Handle to an initialized store. Copies refer to the same database and share
// its single serialized write path; every read opens its own snapshot.
class Store {
 public:
  UpsertOutcome upsert_conference(const ConferenceRecord& conference) const;
  // Atomic. Throws Error(duplicate_in_batch) when two records share an anthology_id.
  UpsertCounts upsert_papers(std::span<const PaperRecord> papers) const;
  // One conference row and its papers as a single transaction.
  UpsertCounts persist_batch(const ConferenceRecord& conference, std::span<const PaperRecord> papers) const;

  // Ordered by (year, venue_key, anthology_id).
  PaperList load_all_papers() const;
  // Ordered by conf_id.
  std::vector<ConferenceRecord> load_all_conferences() const;
  std::optional<ConferenceRecord> find_conference(std::string_view conf_id) const;
  std::int64_t count(query::Table table) const;

  query::ResultSet select(const query::SqlStatement& statement) const;

  // Test hook: called with the batch index before each paper row is written.
  // An exception thrown from it aborts (and rolls back) the batch.
  void set_fault_injector(std::function<void(std::size_t)> hook) const;

  const std::filesystem::path& path() const;

 private:
  struct Impl;
  explicit Store(std::shared_ptr<Impl> impl) : impl_(std::move(impl)) {}
  friend Store init_schema(const StoreConfig& config);

  std::shared_ptr<Impl> impl_;
};

// Creates both tables when missing; idempotent. Throws Error(store_unavailable).
Store init_schema(const StoreConfig& config);

// Row codecs in schema column order.
std::vector<query::Scalar> paper_to_row(const PaperRecord& paper);
PaperRecord paper_from_row(std::span<const query::Scalar> row);
std::vector<query::Scalar> conference_to_row(const ConferenceRecord& conference);
ConferenceRecord conference_from_row(std::span<const query::Scalar> row);

}  // namespace aah
