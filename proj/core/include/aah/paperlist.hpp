#pragma once

#include "aah/model.hpp"

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace aah {

// Ordered collection of papers, unique by anthology_id. Operations never mutate
// their operands; each returns a new list with a documented order.
class PaperList {
 public:
  using const_iterator = std::vector<PaperRecord>::const_iterator;

  PaperList() = default;
  // Keeps the first record seen for each anthology_id.
  explicit PaperList(std::vector<PaperRecord> items);

  const std::vector<PaperRecord>& items() const { return items_; }
  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  const_iterator begin() const { return items_.begin(); }
  const_iterator end() const { return items_.end(); }
  const PaperRecord& operator[](std::size_t i) const { return items_[i]; }

  bool contains(std::string_view anthology_id) const;
  const PaperRecord* find(std::string_view anthology_id) const;
  std::vector<std::string> ids() const;

  // Order- and field-sensitive equality.
  friend bool operator==(const PaperList& a, const PaperList& b) { return a.items_ == b.items_; }

 private:
  std::vector<PaperRecord> items_;
  std::unordered_map<std::string, std::size_t> index_;
};

// a's order, then b's unseen items. Equal ids resolve to a's record.
PaperList unite(const PaperList& a, const PaperList& b);
// Items of a also in b, in a's order.
PaperList intersect(const PaperList& a, const PaperList& b);
// Items of universe not in a, in universe's order.
PaperList complement(const PaperList& a, const PaperList& universe);

enum class FilterKind { keyword_any, keyword_all, author, venue_in, year_between, has_abstract };

struct FilterRule {
  FilterKind kind = FilterKind::has_abstract;
  std::vector<std::string> terms;  // keywords, author names or venue keys
  int year_low = 0;
  int year_high = 0;

  static FilterRule keyword_any(std::vector<std::string> keywords);
  static FilterRule keyword_all(std::vector<std::string> keywords);
  static FilterRule author(std::vector<std::string> names);
  static FilterRule venue_in(std::vector<std::string> venues);
  static FilterRule year_between(int low, int high);
  static FilterRule has_abstract();

  // Throws Error(invalid_argument) for empty keyword/author/venue payloads or low > high.
  void validate() const;
  bool matches(const PaperRecord& paper) const;
};

enum class Combine { all, any };

// Surviving items in their original order. Throws Error(empty_rule_set) when rules is empty.
PaperList filter(const PaperList& list, std::span<const FilterRule> rules, Combine combine = Combine::all);

enum class StatsDim { year, venue_key, author };

std::string_view to_string(StatsDim dim);

// Nested counts keyed by dimension values; `count` at every level is the
// number of contributions below it (one per paper, or per paper-author pair).
struct StatsNode {
  std::size_t count = 0;
  std::map<std::string, StatsNode> children;

  friend bool operator==(const StatsNode&, const StatsNode&) = default;
};

// Throws Error(bad_dims) when dims is empty or repeats a dimension.
StatsNode stats(const PaperList& list, std::span<const StatsDim> dims);

enum class SortKey { year, title, venue_key };
enum class SortOrder { asc, desc };

// Stable.
PaperList sort(const PaperList& list, SortKey key, SortOrder order = SortOrder::asc);
PaperList top_k(const PaperList& list, std::size_t k);

}  // namespace aah
