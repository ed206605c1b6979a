#pragma once

#include "aah/query.hpp"

#include <sqlite3.h>

#include <memory>
#include <string>
#include <string_view>
#include <vector>

// Thin RAII layer over the sqlite3 C API. Failures surface as Error(store_unavailable).
namespace aah::sqlite {

class Statement;

class Connection {
 public:
  enum class Mode { read_write_create, read_only };

  Connection(const std::string& path, Mode mode);

  void exec(std::string_view sql);
  Statement prepare(std::string_view sql);
  sqlite3* raw() const { return db_.get(); }

 private:
  struct Closer {
    void operator()(sqlite3* db) const { sqlite3_close_v2(db); }
  };
  std::unique_ptr<sqlite3, Closer> db_;
};

class Statement {
 public:
  Statement(sqlite3* db, sqlite3_stmt* stmt) : db_(db), stmt_(stmt) {}

  void bind(int index, const query::Scalar& value);
  void bind_all(const std::vector<query::Scalar>& values);
  void reset();

  // Advances to the next row; false when done.
  bool step();

  int column_count() const;
  std::string column_name(int i) const;
  query::Scalar column(int i) const;

 private:
  struct Finalizer {
    void operator()(sqlite3_stmt* s) const { sqlite3_finalize(s); }
  };
  sqlite3* db_;
  std::unique_ptr<sqlite3_stmt, Finalizer> stmt_;
};

// Rolls back unless commit() was called.
class Transaction {
 public:
  explicit Transaction(Connection& conn);
  ~Transaction();
  Transaction(const Transaction&) = delete;
  Transaction& operator=(const Transaction&) = delete;

  void commit();

 private:
  Connection& conn_;
  bool done_ = false;
};

[[noreturn]] void fail(sqlite3* db, std::string_view what);

}  // namespace aah::sqlite
