#pragma once

#include "aah/paperlist.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace aah {
class Store;
}

// Chainable retrieval over the two store tables.
//
//   auto papers = query::table(query::Table::paper)
//                     .where(query::in("year", {2021, 2022, 2023}))
//                     .where(query::in("venue_key", {"acl", "emnlp", "naacl"}))
//                     .order("year", query::Direction::desc)
//                     .query(store);
//
// Every chaining call returns a new Builder; prefixes can be reused freely.
// Errors found while chaining are reported by build() (and the terminal calls).
namespace aah::query {

// SQL value: NULL, INTEGER, REAL or TEXT.
using Scalar = std::variant<std::monostate, std::int64_t, double, std::string>;

// Literal helpers so brace lists of ints and strings pick the right alternative.
struct Literal {
  Scalar value;
  Literal(int v) : value(static_cast<std::int64_t>(v)) {}
  Literal(std::int64_t v) : value(v) {}
  Literal(double v) : value(v) {}
  Literal(const char* v) : value(std::string(v)) {}
  Literal(std::string v) : value(std::move(v)) {}
  Literal(std::string_view v) : value(std::string(v)) {}
  Literal(Scalar v) : value(std::move(v)) {}
};

bool is_null_value(const Scalar& v);
std::string to_display(const Scalar& v);

enum class Table { paper, conference };
enum class ColumnType { integer, text };
enum class Op { eq, neq, gt, gte, lt, lte, in, not_in, like, between, is_null, is_not_null };
enum class Direction { asc, desc };
enum class AggregateFn { count, min, max, avg, sum, distinct_count };
enum class Connective { all_of, any_of };

std::string_view to_string(Table t);
std::string_view to_string(Op op);
std::string_view to_string(Direction d);
std::string_view to_string(AggregateFn fn);
Table table_from_string(std::string_view s);
Op op_from_string(std::string_view s);
Direction direction_from_string(std::string_view s);

struct ColumnInfo {
  std::string_view name;
  ColumnType type;
  bool nullable;
};

// Columns in table order; the first column is the primary key.
std::span<const ColumnInfo> schema(Table t);
const ColumnInfo* find_column(Table t, std::string_view name);
std::string_view primary_key(Table t);

struct Condition {
  using Value = std::variant<std::monostate, Scalar, std::vector<Scalar>, std::pair<Scalar, Scalar>>;

  std::string column;
  Op op = Op::eq;
  Value value;

  friend bool operator==(const Condition&, const Condition&) = default;
};

Condition eq(std::string column, Literal v);
Condition neq(std::string column, Literal v);
Condition gt(std::string column, Literal v);
Condition gte(std::string column, Literal v);
Condition lt(std::string column, Literal v);
Condition lte(std::string column, Literal v);
Condition in(std::string column, std::vector<Literal> values);
Condition not_in(std::string column, std::vector<Literal> values);
Condition like(std::string column, std::string pattern);
Condition between(std::string column, Literal low, Literal high);
Condition is_null(std::string column);
Condition is_not_null(std::string column);

// A condition or a parenthesised group of predicates.
struct Predicate {
  enum class Kind { condition, group };

  Kind kind = Kind::condition;
  Condition condition;
  Connective connective = Connective::all_of;
  std::vector<Predicate> terms;

  Predicate() = default;
  Predicate(Condition c) : kind(Kind::condition), condition(std::move(c)) {}  // NOLINT(google-explicit-constructor)
  static Predicate group(Connective connective, std::vector<Predicate> terms);

  friend bool operator==(const Predicate&, const Predicate&) = default;
};

struct OrderTerm {
  std::string column;
  Direction direction = Direction::asc;

  friend bool operator==(const OrderTerm&, const OrderTerm&) = default;
};

struct Aggregate {
  AggregateFn fn = AggregateFn::count;
  std::string column;  // empty for count

  friend bool operator==(const Aggregate&, const Aggregate&) = default;
};

struct QueryAst {
  Table source = Table::paper;
  std::vector<Predicate> conditions;  // conjoined
  std::vector<std::string> group_by;
  std::optional<Condition> having;
  std::vector<OrderTerm> order_by;
  std::optional<std::int64_t> limit;
  std::optional<std::int64_t> offset;
  std::vector<std::string> projection;  // empty = every column
  bool distinct = false;
  std::optional<Aggregate> aggregate;

  bool is_scalar() const { return aggregate.has_value() && group_by.empty(); }
  bool is_grouped() const { return !group_by.empty(); }

  friend bool operator==(const QueryAst&, const QueryAst&) = default;
};

// Throws InvalidChain / UnknownColumn / BadArity describing the first problem.
void validate(const QueryAst& ast);

// Output column names of a valid AST, in result order.
std::vector<std::string> output_columns(const QueryAst& ast);

// Output name used for the aggregate column of grouped queries ("max", "avg", ...).
std::string_view aggregate_alias(AggregateFn fn);

struct SqlStatement {
  std::string text;
  std::vector<Scalar> params;
};

// Canonical SQL for the AST, parameters as positional '?' placeholders.
std::string render_sql(const QueryAst& ast);
std::vector<Scalar> bound_params(const QueryAst& ast);

// The statement execute() runs: render_sql plus deterministic tie-breaking
// (primary key ascending for row queries, group keys for grouped queries).
SqlStatement compile(const QueryAst& ast);

struct ResultSet {
  std::vector<std::string> columns;
  std::vector<std::vector<Scalar>> rows;

  friend bool operator==(const ResultSet&, const ResultSet&) = default;
};

using QueryResult = std::variant<ResultSet, Scalar>;

QueryResult execute(const Store& store, const QueryAst& ast);

// Throws Error(missing_column) unless every paper column is present.
PaperList hydrate_papers(const ResultSet& rows);

class Builder {
 public:
  explicit Builder(Table source);

  Builder where(Condition c) const;
  // ORs `c` with the most recent where-term.
  Builder or_where(Condition c) const;
  Builder and_group(std::vector<Predicate> terms) const;
  Builder or_group(std::vector<Predicate> terms) const;
  Builder field(std::vector<std::string> columns) const;
  Builder group(std::vector<std::string> columns) const;
  Builder having(Condition c) const;
  Builder order(std::string column, Direction dir = Direction::asc) const;
  Builder limit(std::int64_t n) const;
  Builder offset(std::int64_t n) const;
  Builder distinct() const;
  Builder count() const;
  Builder min(std::string column) const;
  Builder max(std::string column) const;
  Builder avg(std::string column) const;
  Builder sum(std::string column) const;
  Builder distinct_count(std::string column) const;

  QueryAst build() const;

  QueryResult query(const Store& store) const;
  std::optional<std::vector<Scalar>> find_one(const Store& store) const;
  bool exists(const Store& store) const;

 private:
  Builder with_aggregate(AggregateFn fn, std::string column) const;

  QueryAst ast_;
  std::optional<std::string> error_;  // first chaining error, raised by build()
};

Builder table(Table source);
Builder table(std::string_view name);

// "col:op:value" as used on the command line; list values are comma separated,
// between takes "low,high", is_null/is_not_null take no value.
Condition parse_condition(Table t, std::string_view spec);

// JSON mini-language, e.g. {"year": ["in", [2021, 2022]], "venue_key": ["eq", "acl"]}.
// Keys are applied in document order.
std::vector<Condition> conditions_from_json(Table t, std::string_view json_text);

}  // namespace aah::query
