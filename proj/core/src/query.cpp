#include "aah/query.hpp"

#include "aah/error.hpp"
#include "aah/store.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <charconv>
#include <cstdio>

namespace aah::query {
namespace {

constexpr std::array kPaperColumns = {
    ColumnInfo{"anthology_id", ColumnType::text, false}, ColumnInfo{"title", ColumnType::text, false},
    ColumnInfo{"authors", ColumnType::text, false},      ColumnInfo{"authors_normalized", ColumnType::text, false},
    ColumnInfo{"venue_key", ColumnType::text, false},    ColumnInfo{"year", ColumnType::integer, false},
    ColumnInfo{"page_url", ColumnType::text, false},     ColumnInfo{"pdf_url", ColumnType::text, true},
    ColumnInfo{"abstract", ColumnType::text, true},      ColumnInfo{"bibkey", ColumnType::text, true},
};

constexpr std::array kConferenceColumns = {
    ColumnInfo{"conf_id", ColumnType::text, false},        ColumnInfo{"venue_key", ColumnType::text, false},
    ColumnInfo{"year", ColumnType::integer, false},        ColumnInfo{"title", ColumnType::text, false},
    ColumnInfo{"desc", ColumnType::text, true},            ColumnInfo{"url", ColumnType::text, false},
    ColumnInfo{"category", ColumnType::text, false},       ColumnInfo{"kind", ColumnType::text, false},
    ColumnInfo{"status", ColumnType::text, false},         ColumnInfo{"attempts", ColumnType::integer, false},
    ColumnInfo{"last_error", ColumnType::text, true},      ColumnInfo{"fetched_at", ColumnType::text, true},
    ColumnInfo{"paper_count", ColumnType::integer, true},
};

[[noreturn]] void invalid_chain(const std::string& msg) { throw Error(Errc::invalid_chain, msg); }
[[noreturn]] void bad_arity(const std::string& msg) { throw Error(Errc::bad_arity, msg); }

std::string ident(std::string_view name) {
  if (name == "desc") return "\"desc\"";
  return std::string(name);
}

const ColumnInfo& require_column(Table t, std::string_view name) {
  const auto* info = find_column(t, name);
  if (info == nullptr) {
    throw Error(Errc::unknown_column, "no column '" + std::string(name) + "' in table " + std::string(to_string(t)));
  }
  return *info;
}

bool contains(const std::vector<std::string>& v, std::string_view s) { return std::find(v.begin(), v.end(), s) != v.end(); }

void check_value_type(const Scalar& v, ColumnType type, std::string_view column) {
  const bool ok = type == ColumnType::integer ? std::holds_alternative<std::int64_t>(v)
                                              : std::holds_alternative<std::string>(v);
  if (!ok) {
    bad_arity("value " + to_display(v) + " does not match the type of column '" + std::string(column) + "'");
  }
}

bool scalar_less(const Scalar& a, const Scalar& b) {
  if (const auto* ia = std::get_if<std::int64_t>(&a)) return *ia < std::get<std::int64_t>(b);
  return std::get<std::string>(a) < std::get<std::string>(b);
}

void check_condition(const Condition& c, ColumnType type) {
  switch (c.op) {
    case Op::eq:
    case Op::neq:
    case Op::gt:
    case Op::gte:
    case Op::lt:
    case Op::lte:
    case Op::like: {
      const auto* v = std::get_if<Scalar>(&c.value);
      if (v == nullptr) bad_arity(std::string(to_string(c.op)) + " takes a single value");
      check_value_type(*v, type, c.column);
      if (c.op == Op::like && type != ColumnType::text) bad_arity("like needs a text column");
      break;
    }
    case Op::in:
    case Op::not_in: {
      const auto* list = std::get_if<std::vector<Scalar>>(&c.value);
      if (list == nullptr || list->empty()) bad_arity(std::string(to_string(c.op)) + " takes a non-empty list");
      for (const auto& v : *list) check_value_type(v, type, c.column);
      break;
    }
    case Op::between: {
      const auto* range = std::get_if<std::pair<Scalar, Scalar>>(&c.value);
      if (range == nullptr) bad_arity("between takes a (low, high) pair");
      check_value_type(range->first, type, c.column);
      check_value_type(range->second, type, c.column);
      if (scalar_less(range->second, range->first)) bad_arity("between needs low <= high");
      break;
    }
    case Op::is_null:
    case Op::is_not_null:
      if (!std::holds_alternative<std::monostate>(c.value)) bad_arity(std::string(to_string(c.op)) + " takes no value");
      break;
  }
}

void check_predicate(Table t, const Predicate& p) {
  if (p.kind == Predicate::Kind::condition) {
    check_condition(p.condition, require_column(t, p.condition.column).type);
    return;
  }
  if (p.terms.empty()) bad_arity("a predicate group needs at least one term");
  for (const auto& term : p.terms) check_predicate(t, term);
}

std::string aggregate_expr(const Aggregate& agg) {
  switch (agg.fn) {
    case AggregateFn::count: return "COUNT(*)";
    case AggregateFn::min: return "MIN(" + ident(agg.column) + ")";
    case AggregateFn::max: return "MAX(" + ident(agg.column) + ")";
    case AggregateFn::avg: return "AVG(" + ident(agg.column) + ")";
    case AggregateFn::sum: return "SUM(" + ident(agg.column) + ")";
    case AggregateFn::distinct_count: return "COUNT(DISTINCT " + ident(agg.column) + ")";
  }
  return "COUNT(*)";
}

ColumnType aggregate_type(Table t, const Aggregate& agg) {
  if (agg.fn == AggregateFn::min || agg.fn == AggregateFn::max) return require_column(t, agg.column).type;
  return ColumnType::integer;
}

// Type of a name usable in HAVING / grouped ORDER BY, or nullopt when it is not an output.
std::optional<ColumnType> grouped_output_type(const QueryAst& ast, std::string_view name) {
  if (name == "count") return ColumnType::integer;
  if (ast.aggregate && name == aggregate_alias(ast.aggregate->fn)) return aggregate_type(ast.source, *ast.aggregate);
  if (contains(ast.group_by, name)) return require_column(ast.source, name).type;
  return std::nullopt;
}

// Expression for a grouped output name.
std::string grouped_expr(const QueryAst& ast, std::string_view name) {
  if (name == "count") return "COUNT(*)";
  if (ast.aggregate && name == aggregate_alias(ast.aggregate->fn)) return aggregate_expr(*ast.aggregate);
  return ident(name);
}

class Renderer {
 public:
  std::string text;
  std::vector<Scalar> params;

  void predicate(const Predicate& p, bool nested) {
    if (p.kind == Predicate::Kind::condition) {
      condition(ident(p.condition.column), p.condition);
      return;
    }
    if (nested || p.terms.size() > 1) text += '(';
    const char* joiner = p.connective == Connective::all_of ? " AND " : " OR ";
    for (std::size_t i = 0; i < p.terms.size(); ++i) {
      if (i > 0) text += joiner;
      predicate(p.terms[i], true);
    }
    if (nested || p.terms.size() > 1) text += ')';
  }

  void condition(const std::string& lhs, const Condition& c) {
    text += lhs;
    switch (c.op) {
      case Op::eq: scalar(" = ", c); break;
      case Op::neq: scalar(" <> ", c); break;
      case Op::gt: scalar(" > ", c); break;
      case Op::gte: scalar(" >= ", c); break;
      case Op::lt: scalar(" < ", c); break;
      case Op::lte: scalar(" <= ", c); break;
      case Op::like: scalar(" LIKE ", c); break;
      case Op::in: list(" IN (", c); break;
      case Op::not_in: list(" NOT IN (", c); break;
      case Op::between: {
        const auto& [low, high] = std::get<std::pair<Scalar, Scalar>>(c.value);
        text += " BETWEEN ? AND ?";
        params.push_back(low);
        params.push_back(high);
        break;
      }
      case Op::is_null: text += " IS NULL"; break;
      case Op::is_not_null: text += " IS NOT NULL"; break;
    }
  }

 private:
  void scalar(const char* op, const Condition& c) {
    text += op;
    text += '?';
    params.push_back(std::get<Scalar>(c.value));
  }

  void list(const char* open, const Condition& c) {
    text += open;
    const auto& values = std::get<std::vector<Scalar>>(c.value);
    for (std::size_t i = 0; i < values.size(); ++i) {
      text += i == 0 ? "?" : ", ?";
      params.push_back(values[i]);
    }
    text += ')';
  }
};

Renderer render(const QueryAst& ast, const std::vector<OrderTerm>& order) {
  Renderer r;
  r.text = "SELECT ";
  if (ast.distinct) r.text += "DISTINCT ";
  if (ast.is_scalar()) {
    r.text += aggregate_expr(*ast.aggregate);
  } else if (ast.is_grouped()) {
    const auto& keys = ast.projection.empty() ? ast.group_by : ast.projection;
    for (const auto& k : keys) r.text += ident(k) + ", ";
    r.text += "COUNT(*)";
    if (ast.aggregate && ast.aggregate->fn != AggregateFn::count) r.text += ", " + aggregate_expr(*ast.aggregate);
  } else if (ast.projection.empty()) {
    r.text += '*';
  } else {
    for (std::size_t i = 0; i < ast.projection.size(); ++i) {
      if (i > 0) r.text += ", ";
      r.text += ident(ast.projection[i]);
    }
  }
  r.text += " FROM ";
  r.text += to_string(ast.source);
  if (!ast.conditions.empty()) {
    r.text += " WHERE ";
    for (std::size_t i = 0; i < ast.conditions.size(); ++i) {
      if (i > 0) r.text += " AND ";
      r.predicate(ast.conditions[i], ast.conditions.size() > 1);
    }
  }
  if (ast.is_grouped()) {
    r.text += " GROUP BY ";
    for (std::size_t i = 0; i < ast.group_by.size(); ++i) {
      if (i > 0) r.text += ", ";
      r.text += ident(ast.group_by[i]);
    }
    if (ast.having) {
      r.text += " HAVING ";
      r.condition(grouped_expr(ast, ast.having->column), *ast.having);
    }
  }
  if (!order.empty()) {
    r.text += " ORDER BY ";
    for (std::size_t i = 0; i < order.size(); ++i) {
      if (i > 0) r.text += ", ";
      r.text += ast.is_grouped() ? grouped_expr(ast, order[i].column) : ident(order[i].column);
      r.text += order[i].direction == Direction::asc ? " ASC" : " DESC";
    }
  }
  if (ast.limit) r.text += " LIMIT " + std::to_string(*ast.limit);
  if (ast.offset) r.text += " OFFSET " + std::to_string(*ast.offset);
  return r;
}

std::int64_t parse_int(std::string_view s) {
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) bad_arity("not an integer: '" + std::string(s) + "'");
  return v;
}

Scalar typed_value(ColumnType type, std::string_view raw) {
  if (type == ColumnType::integer) return parse_int(raw);
  return std::string(raw);
}

std::vector<std::string_view> split_commas(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    const auto comma = s.find(',', pos);
    out.push_back(s.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

Scalar json_scalar(const nlohmann::ordered_json& j) {
  if (j.is_null()) return std::monostate{};
  if (j.is_number_integer()) return j.get<std::int64_t>();
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return j.get<std::string>();
  throw Error(Errc::invalid_argument, "unsupported JSON value: " + j.dump());
}

}  // namespace

bool is_null_value(const Scalar& v) { return std::holds_alternative<std::monostate>(v); }

std::string to_display(const Scalar& v) {
  if (is_null_value(v)) return "NULL";
  if (const auto* i = std::get_if<std::int64_t>(&v)) return std::to_string(*i);
  if (const auto* d = std::get_if<double>(&v)) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", *d);
    return buf;
  }
  return std::get<std::string>(v);
}

std::string_view to_string(Table t) { return t == Table::paper ? "paper" : "conference"; }

std::string_view to_string(Op op) {
  switch (op) {
    case Op::eq: return "eq";
    case Op::neq: return "neq";
    case Op::gt: return "gt";
    case Op::gte: return "gte";
    case Op::lt: return "lt";
    case Op::lte: return "lte";
    case Op::in: return "in";
    case Op::not_in: return "not_in";
    case Op::like: return "like";
    case Op::between: return "between";
    case Op::is_null: return "is_null";
    case Op::is_not_null: return "is_not_null";
  }
  return "eq";
}

std::string_view to_string(Direction d) { return d == Direction::asc ? "asc" : "desc"; }

std::string_view to_string(AggregateFn fn) {
  switch (fn) {
    case AggregateFn::count: return "count";
    case AggregateFn::min: return "min";
    case AggregateFn::max: return "max";
    case AggregateFn::avg: return "avg";
    case AggregateFn::sum: return "sum";
    case AggregateFn::distinct_count: return "distinct_count";
  }
  return "count";
}

Table table_from_string(std::string_view s) {
  if (s == "paper") return Table::paper;
  if (s == "conference") return Table::conference;
  throw Error(Errc::invalid_argument, "unknown table '" + std::string(s) + "'");
}

Op op_from_string(std::string_view s) {
  for (const Op op : {Op::eq, Op::neq, Op::gt, Op::gte, Op::lt, Op::lte, Op::in, Op::not_in, Op::like, Op::between,
                      Op::is_null, Op::is_not_null}) {
    if (to_string(op) == s) return op;
  }
  throw Error(Errc::invalid_argument, "unknown operator '" + std::string(s) + "'");
}

Direction direction_from_string(std::string_view s) {
  if (s == "asc") return Direction::asc;
  if (s == "desc") return Direction::desc;
  throw Error(Errc::invalid_argument, "unknown direction '" + std::string(s) + "'");
}

std::span<const ColumnInfo> schema(Table t) {
  if (t == Table::paper) return kPaperColumns;
  return kConferenceColumns;
}

const ColumnInfo* find_column(Table t, std::string_view name) {
  for (const auto& c : schema(t)) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

std::string_view primary_key(Table t) { return schema(t).front().name; }

namespace {

Condition single(std::string column, Op op, Literal v) { return Condition{std::move(column), op, std::move(v.value)}; }

Condition listed(std::string column, Op op, std::vector<Literal> values) {
  std::vector<Scalar> out;
  out.reserve(values.size());
  for (auto& v : values) out.push_back(std::move(v.value));
  return Condition{std::move(column), op, std::move(out)};
}

}  // namespace

Condition eq(std::string column, Literal v) { return single(std::move(column), Op::eq, std::move(v)); }
Condition neq(std::string column, Literal v) { return single(std::move(column), Op::neq, std::move(v)); }
Condition gt(std::string column, Literal v) { return single(std::move(column), Op::gt, std::move(v)); }
Condition gte(std::string column, Literal v) { return single(std::move(column), Op::gte, std::move(v)); }
Condition lt(std::string column, Literal v) { return single(std::move(column), Op::lt, std::move(v)); }
Condition lte(std::string column, Literal v) { return single(std::move(column), Op::lte, std::move(v)); }
Condition in(std::string column, std::vector<Literal> values) { return listed(std::move(column), Op::in, std::move(values)); }
Condition not_in(std::string column, std::vector<Literal> values) {
  return listed(std::move(column), Op::not_in, std::move(values));
}
Condition like(std::string column, std::string pattern) { return single(std::move(column), Op::like, std::move(pattern)); }
Condition between(std::string column, Literal low, Literal high) {
  return Condition{std::move(column), Op::between, std::pair{std::move(low.value), std::move(high.value)}};
}
Condition is_null(std::string column) { return Condition{std::move(column), Op::is_null, std::monostate{}}; }
Condition is_not_null(std::string column) { return Condition{std::move(column), Op::is_not_null, std::monostate{}}; }

Predicate Predicate::group(Connective connective, std::vector<Predicate> terms) {
  Predicate p;
  p.kind = Kind::group;
  p.connective = connective;
  p.terms = std::move(terms);
  return p;
}

std::string_view aggregate_alias(AggregateFn fn) { return to_string(fn); }

void validate(const QueryAst& ast) {
  const Table t = ast.source;
  for (const auto& p : ast.conditions) check_predicate(t, p);
  for (const auto& c : ast.projection) require_column(t, c);
  for (const auto& c : ast.group_by) require_column(t, c);
  if (ast.aggregate) {
    const auto& agg = *ast.aggregate;
    if (agg.fn == AggregateFn::count) {
      if (!agg.column.empty()) bad_arity("count takes no column");
    } else {
      const auto& info = require_column(t, agg.column);
      if ((agg.fn == AggregateFn::avg || agg.fn == AggregateFn::sum) && info.type != ColumnType::integer) {
        bad_arity(std::string(to_string(agg.fn)) + " needs an integer column");
      }
    }
  }
  if (ast.limit && *ast.limit < 0) bad_arity("limit must be non-negative");
  if (ast.offset && *ast.offset < 0) bad_arity("offset must be non-negative");
  if (ast.offset && !ast.limit) invalid_chain("offset requires limit");
  if (ast.having) {
    if (!ast.is_grouped()) invalid_chain("having requires group");
    const auto type = grouped_output_type(ast, ast.having->column);
    if (!type) {
      if (find_column(t, ast.having->column) == nullptr) require_column(t, ast.having->column);
      invalid_chain("having column '" + ast.having->column + "' is not a group column or aggregate");
    }
    check_condition(*ast.having, *type);
  }
  if (ast.distinct && (ast.is_grouped() || ast.aggregate)) invalid_chain("distinct cannot be combined with grouping");
  if (ast.is_scalar()) {
    if (!ast.order_by.empty() || ast.limit || ast.offset || !ast.projection.empty()) {
      invalid_chain("an aggregate without group allows no order, limit, offset or field");
    }
  }
  if (ast.is_grouped()) {
    for (const auto& c : ast.projection) {
      if (!contains(ast.group_by, c)) invalid_chain("field '" + c + "' is not a group column");
    }
  }
  for (const auto& o : ast.order_by) {
    if (ast.is_grouped()) {
      if (!grouped_output_type(ast, o.column)) {
        require_column(t, o.column);
        invalid_chain("cannot order grouped rows by '" + o.column + "'");
      }
    } else {
      require_column(t, o.column);
      if (ast.distinct && !ast.projection.empty() && !contains(ast.projection, o.column)) {
        invalid_chain("distinct rows can only be ordered by selected columns");
      }
    }
  }
}

std::vector<std::string> output_columns(const QueryAst& ast) {
  if (ast.is_scalar()) return {std::string(aggregate_alias(ast.aggregate->fn))};
  if (ast.is_grouped()) {
    std::vector<std::string> out = ast.projection.empty() ? ast.group_by : ast.projection;
    out.emplace_back("count");
    if (ast.aggregate && ast.aggregate->fn != AggregateFn::count) out.emplace_back(aggregate_alias(ast.aggregate->fn));
    return out;
  }
  if (!ast.projection.empty()) return ast.projection;
  std::vector<std::string> out;
  for (const auto& c : schema(ast.source)) out.emplace_back(c.name);
  return out;
}

std::string render_sql(const QueryAst& ast) { return render(ast, ast.order_by).text; }

std::vector<Scalar> bound_params(const QueryAst& ast) { return render(ast, ast.order_by).params; }

SqlStatement compile(const QueryAst& ast) {
  std::vector<OrderTerm> order = ast.order_by;
  auto ordered = [&](std::string_view c) {
    return std::any_of(order.begin(), order.end(), [&](const OrderTerm& o) { return o.column == c; });
  };
  if (ast.is_grouped()) {
    for (const auto& c : ast.group_by) {
      if (!ordered(c)) order.push_back({c, Direction::asc});
    }
  } else if (ast.distinct) {
    for (const auto& c : output_columns(ast)) {
      if (!ordered(c)) order.push_back({c, Direction::asc});
    }
  } else if (!ast.is_scalar()) {
    const std::string pk(primary_key(ast.source));
    if (!ordered(pk)) order.push_back({pk, Direction::asc});
  }
  auto r = render(ast, order);
  return {std::move(r.text), std::move(r.params)};
}

QueryResult execute(const Store& store, const QueryAst& ast) {
  validate(ast);
  auto rows = store.select(compile(ast));
  if (ast.is_scalar()) {
    if (rows.rows.empty() || rows.rows.front().empty()) return Scalar{};
    return rows.rows.front().front();
  }
  rows.columns = output_columns(ast);
  return rows;
}

PaperList hydrate_papers(const ResultSet& rows) {
  const auto cols = schema(Table::paper);
  std::vector<std::size_t> index;
  for (const auto& c : cols) {
    const auto it = std::find(rows.columns.begin(), rows.columns.end(), c.name);
    if (it == rows.columns.end()) throw Error(Errc::missing_column, "result lacks paper column '" + std::string(c.name) + "'");
    index.push_back(static_cast<std::size_t>(it - rows.columns.begin()));
  }
  std::vector<PaperRecord> papers;
  papers.reserve(rows.rows.size());
  std::vector<Scalar> ordered(cols.size());
  for (const auto& row : rows.rows) {
    for (std::size_t i = 0; i < index.size(); ++i) ordered[i] = row.at(index[i]);
    papers.push_back(paper_from_row(ordered));
  }
  return PaperList(std::move(papers));
}

Builder::Builder(Table source) { ast_.source = source; }

Builder Builder::where(Condition c) const {
  Builder b = *this;
  b.ast_.conditions.emplace_back(std::move(c));
  return b;
}

Builder Builder::or_where(Condition c) const {
  Builder b = *this;
  if (b.ast_.conditions.empty()) {
    if (!b.error_) b.error_ = "or_where needs a preceding where";
    return b;
  }
  Predicate& last = b.ast_.conditions.back();
  if (last.kind == Predicate::Kind::group && last.connective == Connective::any_of) {
    last.terms.emplace_back(std::move(c));
  } else {
    last = Predicate::group(Connective::any_of, {std::move(last), Predicate(std::move(c))});
  }
  return b;
}

Builder Builder::and_group(std::vector<Predicate> terms) const {
  Builder b = *this;
  b.ast_.conditions.push_back(Predicate::group(Connective::all_of, std::move(terms)));
  return b;
}

Builder Builder::or_group(std::vector<Predicate> terms) const {
  Builder b = *this;
  b.ast_.conditions.push_back(Predicate::group(Connective::any_of, std::move(terms)));
  return b;
}

Builder Builder::field(std::vector<std::string> columns) const {
  Builder b = *this;
  if (columns.empty() && !b.error_) b.error_ = "field needs at least one column";
  b.ast_.projection = std::move(columns);
  return b;
}

Builder Builder::group(std::vector<std::string> columns) const {
  Builder b = *this;
  if (columns.empty() && !b.error_) b.error_ = "group needs at least one column";
  b.ast_.group_by = std::move(columns);
  return b;
}

Builder Builder::having(Condition c) const {
  Builder b = *this;
  b.ast_.having = std::move(c);
  return b;
}

Builder Builder::order(std::string column, Direction dir) const {
  Builder b = *this;
  b.ast_.order_by.push_back({std::move(column), dir});
  return b;
}

Builder Builder::limit(std::int64_t n) const {
  Builder b = *this;
  b.ast_.limit = n;
  return b;
}

Builder Builder::offset(std::int64_t n) const {
  Builder b = *this;
  b.ast_.offset = n;
  return b;
}

Builder Builder::distinct() const {
  Builder b = *this;
  b.ast_.distinct = true;
  return b;
}

Builder Builder::with_aggregate(AggregateFn fn, std::string column) const {
  Builder b = *this;
  b.ast_.aggregate = Aggregate{fn, std::move(column)};
  return b;
}

Builder Builder::count() const { return with_aggregate(AggregateFn::count, ""); }
Builder Builder::min(std::string column) const { return with_aggregate(AggregateFn::min, std::move(column)); }
Builder Builder::max(std::string column) const { return with_aggregate(AggregateFn::max, std::move(column)); }
Builder Builder::avg(std::string column) const { return with_aggregate(AggregateFn::avg, std::move(column)); }
Builder Builder::sum(std::string column) const { return with_aggregate(AggregateFn::sum, std::move(column)); }
Builder Builder::distinct_count(std::string column) const {
  return with_aggregate(AggregateFn::distinct_count, std::move(column));
}

QueryAst Builder::build() const {
  if (error_) invalid_chain(*error_);
  validate(ast_);
  return ast_;
}

QueryResult Builder::query(const Store& store) const { return execute(store, build()); }

std::optional<std::vector<Scalar>> Builder::find_one(const Store& store) const {
  QueryAst ast = build();
  if (!ast.is_scalar()) ast.limit = std::min<std::int64_t>(ast.limit.value_or(1), 1);
  const auto result = execute(store, ast);
  if (const auto* scalar = std::get_if<Scalar>(&result)) return std::vector<Scalar>{*scalar};
  const auto& rows = std::get<ResultSet>(result).rows;
  if (rows.empty()) return std::nullopt;
  return rows.front();
}

bool Builder::exists(const Store& store) const { return find_one(store).has_value(); }

Builder table(Table source) { return Builder(source); }

Builder table(std::string_view name) { return Builder(table_from_string(name)); }

Condition parse_condition(Table t, std::string_view spec) {
  const auto first = spec.find(':');
  if (first == std::string_view::npos) throw Error(Errc::invalid_argument, "expected col:op:value, got '" + std::string(spec) + "'");
  const auto column = spec.substr(0, first);
  const auto rest = spec.substr(first + 1);
  const auto second = rest.find(':');
  const auto op = op_from_string(rest.substr(0, second));
  const std::string_view value = second == std::string_view::npos ? std::string_view{} : rest.substr(second + 1);
  const auto type = require_column(t, column).type;
  Condition c{std::string(column), op, {}};
  switch (op) {
    case Op::in:
    case Op::not_in: {
      std::vector<Scalar> values;
      for (const auto part : split_commas(value)) values.push_back(typed_value(type, part));
      c.value = std::move(values);
      break;
    }
    case Op::between: {
      const auto parts = split_commas(value);
      if (parts.size() != 2) bad_arity("between takes low,high");
      c.value = std::pair{typed_value(type, parts[0]), typed_value(type, parts[1])};
      break;
    }
    case Op::is_null:
    case Op::is_not_null:
      if (!value.empty()) bad_arity(std::string(to_string(op)) + " takes no value");
      break;
    default:
      if (second == std::string_view::npos) bad_arity(std::string(to_string(op)) + " needs a value");
      c.value = typed_value(type, value);
      break;
  }
  check_condition(c, type);
  return c;
}

std::vector<Condition> conditions_from_json(Table t, std::string_view json_text) {
  nlohmann::ordered_json doc;
  try {
    doc = nlohmann::ordered_json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::invalid_argument, std::string("malformed condition JSON: ") + e.what());
  }
  if (!doc.is_object()) throw Error(Errc::invalid_argument, "condition JSON must be an object");
  std::vector<Condition> out;
  for (const auto& [column, spec] : doc.items()) {
    require_column(t, column);
    if (!spec.is_array() || spec.empty() || !spec[0].is_string()) {
      throw Error(Errc::invalid_argument, "condition for '" + column + "' must be [op, value]");
    }
    Condition c{column, op_from_string(spec[0].get<std::string>()), {}};
    switch (c.op) {
      case Op::in:
      case Op::not_in: {
        if (spec.size() != 2 || !spec[1].is_array()) bad_arity(std::string(to_string(c.op)) + " takes a list");
        std::vector<Scalar> values;
        for (const auto& v : spec[1]) values.push_back(json_scalar(v));
        c.value = std::move(values);
        break;
      }
      case Op::between:
        if (spec.size() != 2 || !spec[1].is_array() || spec[1].size() != 2) bad_arity("between takes [low, high]");
        c.value = std::pair{json_scalar(spec[1][0]), json_scalar(spec[1][1])};
        break;
      case Op::is_null:
      case Op::is_not_null:
        if (spec.size() != 1) bad_arity(std::string(to_string(c.op)) + " takes no value");
        break;
      default:
        if (spec.size() != 2) bad_arity(std::string(to_string(c.op)) + " takes one value");
        c.value = json_scalar(spec[1]);
        break;
    }
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace aah::query
