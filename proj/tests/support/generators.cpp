#include "generators.hpp"

#include "oracle.hpp"

#include <algorithm>
#include <array>
#include <set>

namespace aah::testing {
namespace {

constexpr std::array kVenues = {"acl", "emnlp", "naacl", "coling", "lrec"};
constexpr std::array kWords = {"Story",  "story",   "GENERATION", "generation", "Graph",      "naïve", "Café",
                               "ÉCOLE",  "école",   "50%",        "under_score", "Persona",   "Event", "Planning",
                               "Neural", "Übersicht", "Cross-Lingual", "data",   "Ω-Model",   "a_b",   "Parsing"};
constexpr std::array kGiven = {"Amélie", "Kwame", "Yuki", "Søren", "Zoë", "Jian", "Olga", "Raúl", "Priya", "Đorđe"};
constexpr std::array kFamily = {"Dubois", "Okafor", "Tanaka", "Nguyễn", "Müller", "Guan", "Tang", "Zhang", "Ó Briain"};

template <typename C>
const auto& pick(Rng& rng, const C& c) {
  return c[std::uniform_int_distribution<std::size_t>(0, std::size(c) - 1)(rng)];
}

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
bool chance(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

std::string phrase(Rng& rng, int lo, int hi) {
  std::string out;
  const int n = uniform(rng, lo, hi);
  for (int i = 0; i < n; ++i) {
    if (i > 0) out += ' ';
    out += pick(rng, kWords);
  }
  return out;
}

using query::Scalar;

Scalar sample_value(Rng& rng, const TableData& data, query::Table t, std::size_t col) {
  const auto& rows = t == query::Table::paper ? data.paper : data.conference;
  const auto type = query::schema(t)[col].type;
  if (!rows.empty() && chance(rng, 0.75)) {
    const auto& v = rows[std::uniform_int_distribution<std::size_t>(0, rows.size() - 1)(rng)][col];
    if (!std::holds_alternative<std::monostate>(v)) return v;
  }
  if (type == query::ColumnType::integer) return static_cast<std::int64_t>(uniform(rng, 0, 2030));
  return phrase(rng, 1, 2);
}

std::string like_pattern(Rng& rng, const Scalar& seed) {
  std::string base = std::holds_alternative<std::string>(seed) ? std::get<std::string>(seed) : "x";
  if (!base.empty() && chance(rng, 0.7)) {
    const auto start = std::uniform_int_distribution<std::size_t>(0, base.size() - 1)(rng);
    const auto len = std::uniform_int_distribution<std::size_t>(1, 6)(rng);
    base = base.substr(start, len);
    // Avoid cutting through a multi-byte sequence.
    while (!base.empty() && (static_cast<unsigned char>(base.front()) & 0xC0) == 0x80) base.erase(0, 1);
    while (!base.empty() && (static_cast<unsigned char>(base.back()) & 0x80) != 0) base.pop_back();
  }
  for (auto& ch : base) {
    if (chance(rng, 0.3) && ch >= 'a' && ch <= 'z') ch = static_cast<char>(ch - 32);
    if (chance(rng, 0.05) && ch != '%') ch = '_';
  }
  const int shape = uniform(rng, 0, 3);
  if (shape == 0) return "%" + base + "%";
  if (shape == 1) return base + "%";
  if (shape == 2) return "%" + base;
  return base;
}

query::Condition random_condition(Rng& rng, const TableData& data, query::Table t) {
  using query::Op;
  const auto cols = query::schema(t);
  const auto col = std::uniform_int_distribution<std::size_t>(0, cols.size() - 1)(rng);
  const auto& info = cols[col];
  const std::string name(info.name);
  const bool text = info.type == query::ColumnType::text;
  std::vector<Op> ops{Op::eq, Op::neq, Op::gt, Op::gte, Op::lt, Op::lte, Op::in, Op::not_in, Op::between};
  if (text) ops.insert(ops.end(), {Op::like, Op::like, Op::like});
  if (info.nullable) ops.insert(ops.end(), {Op::is_null, Op::is_not_null});
  const Op op = pick(rng, ops);
  query::Condition c{name, op, {}};
  switch (op) {
    case Op::in:
    case Op::not_in: {
      std::vector<Scalar> values;
      const int n = uniform(rng, 1, 4);
      for (int i = 0; i < n; ++i) values.push_back(sample_value(rng, data, t, col));
      c.value = std::move(values);
      break;
    }
    case Op::between: {
      auto a = sample_value(rng, data, t, col);
      auto b = sample_value(rng, data, t, col);
      const bool swap = std::holds_alternative<std::int64_t>(a) ? std::get<std::int64_t>(b) < std::get<std::int64_t>(a)
                                                                : std::get<std::string>(b) < std::get<std::string>(a);
      if (swap) std::swap(a, b);
      c.value = std::pair{std::move(a), std::move(b)};
      break;
    }
    case Op::like: c.value = Scalar{like_pattern(rng, sample_value(rng, data, t, col))}; break;
    case Op::is_null:
    case Op::is_not_null: break;
    default: c.value = sample_value(rng, data, t, col); break;
  }
  return c;
}

std::string random_column(Rng& rng, query::Table t) { return std::string(pick(rng, query::schema(t)).name); }

std::string grouping_column(Rng& rng, query::Table t) {
  if (t == query::Table::paper) {
    static constexpr std::array cols = {"venue_key", "year", "pdf_url", "bibkey", "title"};
    return pick(rng, cols);
  }
  static constexpr std::array cols = {"venue_key", "year", "category", "status", "kind", "paper_count", "desc"};
  return pick(rng, cols);
}

std::vector<std::string> column_subset(Rng& rng, query::Table t, int max) {
  std::vector<std::string> out;
  const int n = uniform(rng, 1, max);
  for (int i = 0; i < n; ++i) {
    auto c = chance(rng, 0.6) ? grouping_column(rng, t) : random_column(rng, t);
    if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(std::move(c));
  }
  return out;
}

}  // namespace

PaperRecord random_paper(Rng& rng, int serial) {
  PaperRecord p;
  p.venue_key = pick(rng, kVenues);
  p.year = uniform(rng, 2015, 2024);
  p.anthology_id = std::to_string(p.year) + "." + p.venue_key + "-main." + std::to_string(serial);
  p.title = phrase(rng, 1, 6);
  const int authors = uniform(rng, 0, 4);
  for (int i = 0; i < authors; ++i) {
    p.authors.push_back(normalize_author(std::string(pick(rng, kGiven)) + " " + pick(rng, kFamily)));
  }
  p.page_url = "https://aclanthology.org/" + p.anthology_id + "/";
  if (chance(rng, 0.6)) p.pdf_url = "https://aclanthology.org/" + p.anthology_id + ".pdf";
  if (chance(rng, 0.5)) p.abstract = phrase(rng, 3, 12) + ".";
  if (chance(rng, 0.4)) p.bibkey = "key-" + std::to_string(uniform(rng, 0, 30));
  return p;
}

std::vector<PaperRecord> random_papers(Rng& rng, int count) {
  std::vector<PaperRecord> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) out.push_back(random_paper(rng, i));
  return out;
}

std::vector<ConferenceRecord> random_conferences(Rng& rng, int count) {
  std::vector<std::pair<std::string, int>> slots;
  for (const auto* v : kVenues) {
    for (int y = 2015; y <= 2024; ++y) slots.emplace_back(v, y);
  }
  std::shuffle(slots.begin(), slots.end(), rng);
  slots.resize(std::min<std::size_t>(slots.size(), static_cast<std::size_t>(count)));
  std::vector<ConferenceRecord> out;
  for (const auto& [venue, year] : slots) {
    const auto category = chance(rng, 0.7) ? Category::acl_event : Category::non_acl_event;
    std::optional<std::string> desc;
    if (chance(rng, 0.5)) desc = phrase(rng, 1, 3);
    auto c = make_conference(venue, year, "Proceedings of " + phrase(rng, 2, 5),
                             "https://aclanthology.org/volumes/" + venue + "-" + std::to_string(year) + "/", category,
                             desc);
    auto& log = c.crawl_log;
    log.status = pick(rng, std::array{CrawlStatus::pending, CrawlStatus::stored, CrawlStatus::failed, CrawlStatus::parsed});
    log.attempts = log.status == CrawlStatus::pending ? 0 : uniform(rng, 1, 3);
    if (log.status == CrawlStatus::stored || (log.status == CrawlStatus::parsed && chance(rng, 0.5))) {
      log.paper_count = uniform(rng, 0, 12);
    }
    if (log.status == CrawlStatus::failed) log.last_error = chance(rng, 0.5) ? "Exhausted: 503" : "NotFound: 404";
    if (log.status != CrawlStatus::pending) {
      log.fetched_at = Timestamp{std::chrono::seconds{1'680'000'000 + uniform(rng, 0, 10'000'000)}};
    }
    out.push_back(std::move(c));
  }
  return out;
}

query::Builder random_chain(Rng& rng, const TableData& data) {
  using query::AggregateFn;
  const auto t = chance(rng, 0.7) ? query::Table::paper : query::Table::conference;
  auto b = query::table(t);
  const int steps = uniform(rng, 1, 6);
  std::vector<std::string> groups;
  std::optional<AggregateFn> agg;
  std::vector<std::string> fields;
  bool distinct = false;
  bool limited = false;
  for (int i = 0; i < steps; ++i) {
    switch (uniform(rng, 0, 13)) {
      case 0:
      case 1:
      case 2: b = b.where(random_condition(rng, data, t)); break;
      case 3: b = b.or_where(random_condition(rng, data, t)); break;
      case 4: {
        std::vector<query::Predicate> terms{random_condition(rng, data, t), random_condition(rng, data, t)};
        b = chance(rng, 0.5) ? b.or_group(std::move(terms)) : b.and_group(std::move(terms));
        break;
      }
      case 5:
        fields = groups.empty() ? column_subset(rng, t, 3) : std::vector<std::string>{pick(rng, groups)};
        b = b.field(fields);
        break;
      case 6:
        groups = column_subset(rng, t, 2);
        if (!fields.empty()) groups.insert(groups.end(), fields.begin(), fields.end());
        std::sort(groups.begin(), groups.end());
        groups.erase(std::unique(groups.begin(), groups.end()), groups.end());
        b = b.group(groups);
        break;
      case 7: {
        std::vector<std::string> names{"count"};
        if (agg) names.emplace_back(query::aggregate_alias(*agg));
        names.insert(names.end(), groups.begin(), groups.end());
        auto c = random_condition(rng, data, t);
        c.column = pick(rng, names);
        if (c.column == "count" || (agg && c.column == query::aggregate_alias(*agg) && *agg != AggregateFn::min &&
                                    *agg != AggregateFn::max)) {
          c.op = pick(rng, std::array{query::Op::gt, query::Op::gte, query::Op::lt, query::Op::eq, query::Op::neq});
          c.value = Scalar{static_cast<std::int64_t>(uniform(rng, 0, 4))};
        }
        b = b.having(std::move(c));
        break;
      }
      case 8:
      case 9: {
        std::string col;
        if (!groups.empty()) {
          std::vector<std::string> names{"count"};
          if (agg) names.emplace_back(query::aggregate_alias(*agg));
          names.insert(names.end(), groups.begin(), groups.end());
          col = pick(rng, names);
        } else if (distinct && !fields.empty()) {
          col = pick(rng, fields);
        } else {
          col = chance(rng, 0.5) ? grouping_column(rng, t) : random_column(rng, t);
        }
        b = b.order(col, chance(rng, 0.5) ? query::Direction::asc : query::Direction::desc);
        break;
      }
      case 10:
        b = b.limit(uniform(rng, 0, 25));
        limited = true;
        break;
      case 11:
        if (!limited) {
          b = b.limit(uniform(rng, 1, 25));
          limited = true;
        }
        b = b.offset(uniform(rng, 0, 10));
        break;
      case 12:
        b = b.distinct();
        distinct = true;
        break;
      default: {
        const auto fn = pick(rng, std::array{AggregateFn::count, AggregateFn::min, AggregateFn::max, AggregateFn::avg,
                                             AggregateFn::sum, AggregateFn::distinct_count});
        agg = fn;
        std::string col;
        if (fn == AggregateFn::avg || fn == AggregateFn::sum) {
          col = t == query::Table::paper ? "year"
                                         : std::string(pick(rng, std::array{"year", "attempts", "paper_count"}));
        } else if (fn != AggregateFn::count) {
          col = random_column(rng, t);
        }
        switch (fn) {
          case AggregateFn::count: b = b.count(); break;
          case AggregateFn::min: b = b.min(col); break;
          case AggregateFn::max: b = b.max(col); break;
          case AggregateFn::avg: b = b.avg(col); break;
          case AggregateFn::sum: b = b.sum(col); break;
          case AggregateFn::distinct_count: b = b.distinct_count(col); break;
        }
        break;
      }
    }
  }
  return b;
}

}  // namespace aah::testing
