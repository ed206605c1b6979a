#include "aah/paperlist.hpp"

#include "aah/error.hpp"
#include "aah/text.hpp"

#include <algorithm>
#include <set>

namespace aah {

PaperList::PaperList(std::vector<PaperRecord> items) {
  items_.reserve(items.size());
  for (auto& item : items) {
    if (index_.emplace(item.anthology_id, items_.size()).second) items_.push_back(std::move(item));
  }
}

bool PaperList::contains(std::string_view anthology_id) const {
  return index_.find(std::string(anthology_id)) != index_.end();
}

const PaperRecord* PaperList::find(std::string_view anthology_id) const {
  const auto it = index_.find(std::string(anthology_id));
  return it == index_.end() ? nullptr : &items_[it->second];
}

std::vector<std::string> PaperList::ids() const {
  std::vector<std::string> out;
  out.reserve(items_.size());
  for (const auto& p : items_) out.push_back(p.anthology_id);
  return out;
}

PaperList unite(const PaperList& a, const PaperList& b) {
  std::vector<PaperRecord> out(a.items());
  for (const auto& p : b) {
    if (!a.contains(p.anthology_id)) out.push_back(p);
  }
  return PaperList(std::move(out));
}

PaperList intersect(const PaperList& a, const PaperList& b) {
  std::vector<PaperRecord> out;
  for (const auto& p : a) {
    if (b.contains(p.anthology_id)) out.push_back(p);
  }
  return PaperList(std::move(out));
}

PaperList complement(const PaperList& a, const PaperList& universe) {
  std::vector<PaperRecord> out;
  for (const auto& p : universe) {
    if (!a.contains(p.anthology_id)) out.push_back(p);
  }
  return PaperList(std::move(out));
}

FilterRule FilterRule::keyword_any(std::vector<std::string> keywords) {
  return FilterRule{FilterKind::keyword_any, std::move(keywords)};
}

FilterRule FilterRule::keyword_all(std::vector<std::string> keywords) {
  return FilterRule{FilterKind::keyword_all, std::move(keywords)};
}

FilterRule FilterRule::author(std::vector<std::string> names) {
  return FilterRule{FilterKind::author, std::move(names)};
}

FilterRule FilterRule::venue_in(std::vector<std::string> venues) {
  return FilterRule{FilterKind::venue_in, std::move(venues)};
}

FilterRule FilterRule::year_between(int low, int high) {
  FilterRule r;
  r.kind = FilterKind::year_between;
  r.year_low = low;
  r.year_high = high;
  return r;
}

FilterRule FilterRule::has_abstract() { return FilterRule{FilterKind::has_abstract, {}}; }

void FilterRule::validate() const {
  switch (kind) {
    case FilterKind::keyword_any:
    case FilterKind::keyword_all:
    case FilterKind::author:
    case FilterKind::venue_in:
      if (terms.empty() || std::any_of(terms.begin(), terms.end(),
                                       [](const std::string& t) { return text::trim(t).empty(); })) {
        throw Error(Errc::invalid_argument, "filter rule needs at least one non-empty term");
      }
      break;
    case FilterKind::year_between:
      if (year_low > year_high) throw Error(Errc::invalid_argument, "year_between needs low <= high");
      break;
    case FilterKind::has_abstract:
      break;
  }
}

bool FilterRule::matches(const PaperRecord& paper) const {
  switch (kind) {
    case FilterKind::keyword_any:
    case FilterKind::keyword_all: {
      const std::string haystack = text::casefold(paper.title + " " + paper.abstract.value_or(""));
      auto hit = [&](const std::string& kw) { return haystack.find(text::casefold(kw)) != std::string::npos; };
      return kind == FilterKind::keyword_all ? std::all_of(terms.begin(), terms.end(), hit)
                                             : std::any_of(terms.begin(), terms.end(), hit);
    }
    case FilterKind::author:
      return std::any_of(terms.begin(), terms.end(), [&](const std::string& name) {
        const std::string wanted = normalize_author(name).normalized;
        return std::any_of(paper.authors.begin(), paper.authors.end(),
                           [&](const AuthorName& a) { return a.normalized == wanted; });
      });
    case FilterKind::venue_in:
      return std::any_of(terms.begin(), terms.end(),
                         [&](const std::string& v) { return canonical_venue(v) == paper.venue_key; });
    case FilterKind::year_between:
      return paper.year >= year_low && paper.year <= year_high;
    case FilterKind::has_abstract:
      return paper.abstract.has_value() && !paper.abstract->empty();
  }
  return false;
}

PaperList filter(const PaperList& list, std::span<const FilterRule> rules, Combine combine) {
  if (rules.empty()) throw Error(Errc::empty_rule_set, "filter needs at least one rule");
  for (const auto& rule : rules) rule.validate();
  std::vector<PaperRecord> out;
  for (const auto& paper : list) {
    auto ok = [&](const FilterRule& r) { return r.matches(paper); };
    const bool keep = combine == Combine::all ? std::all_of(rules.begin(), rules.end(), ok)
                                              : std::any_of(rules.begin(), rules.end(), ok);
    if (keep) out.push_back(paper);
  }
  return PaperList(std::move(out));
}

std::string_view to_string(StatsDim dim) {
  switch (dim) {
    case StatsDim::year: return "year";
    case StatsDim::venue_key: return "venue_key";
    case StatsDim::author: return "author";
  }
  return "year";
}

namespace {

std::vector<std::string> dimension_values(const PaperRecord& paper, StatsDim dim) {
  switch (dim) {
    case StatsDim::year: return {std::to_string(paper.year)};
    case StatsDim::venue_key: return {paper.venue_key};
    case StatsDim::author: {
      std::vector<std::string> names;
      for (const auto& a : paper.authors) names.push_back(a.normalized);
      return names;
    }
  }
  return {};
}

void accumulate(StatsNode& node, const PaperRecord& paper, std::span<const StatsDim> dims) {
  if (dims.empty()) {
    ++node.count;
    return;
  }
  for (const auto& value : dimension_values(paper, dims.front())) {
    StatsNode& child = node.children[value];
    const std::size_t child_before = child.count;
    accumulate(child, paper, dims.subspan(1));
    node.count += child.count - child_before;
  }
}

}  // namespace

StatsNode stats(const PaperList& list, std::span<const StatsDim> dims) {
  if (dims.empty()) throw Error(Errc::bad_dims, "stats needs at least one dimension");
  std::set<StatsDim> unique(dims.begin(), dims.end());
  if (unique.size() != dims.size()) throw Error(Errc::bad_dims, "stats dimensions must not repeat");
  StatsNode root;
  for (const auto& paper : list) accumulate(root, paper, dims);
  return root;
}

PaperList sort(const PaperList& list, SortKey key, SortOrder order) {
  std::vector<PaperRecord> items(list.items());
  auto less = [key](const PaperRecord& a, const PaperRecord& b) {
    switch (key) {
      case SortKey::year: return a.year < b.year;
      case SortKey::title: return a.title < b.title;
      case SortKey::venue_key: return a.venue_key < b.venue_key;
    }
    return false;
  };
  if (order == SortOrder::asc) {
    std::stable_sort(items.begin(), items.end(), less);
  } else {
    std::stable_sort(items.begin(), items.end(), [&](const PaperRecord& a, const PaperRecord& b) { return less(b, a); });
  }
  return PaperList(std::move(items));
}

PaperList top_k(const PaperList& list, std::size_t k) {
  const auto n = std::min(k, list.size());
  return PaperList(std::vector<PaperRecord>(list.begin(), list.begin() + static_cast<std::ptrdiff_t>(n)));
}

}  // namespace aah
