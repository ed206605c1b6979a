#include "aah/parser.hpp"

#include "aah/error.hpp"
#include "aah/html.hpp"
#include "aah/text.hpp"
#include "aah/url.hpp"

#include <algorithm>
#include <set>

namespace aah::parser {

using html::Document;
using html::Node;

namespace {

bool is_heading(const Node& n) {
  return n.is_element() && n.tag.size() == 2 && n.tag[0] == 'h' && n.tag[1] >= '1' && n.tag[1] <= '6';
}

std::string path_of(std::string_view absolute) {
  const auto parts = url::parse(absolute);
  return parts ? parts->path : std::string();
}

bool path_starts_with(std::string_view absolute, std::string_view prefix) {
  return path_of(absolute).rfind(prefix, 0) == 0;
}

std::optional<int> leading_year(std::string_view s) {
  const std::string t = text::trim(s);
  if (t.size() < 4) return std::nullopt;
  for (int i = 0; i < 4; ++i) {
    if (t[i] < '0' || t[i] > '9') return std::nullopt;
  }
  if (t.size() > 4 && t[4] >= '0' && t[4] <= '9') return std::nullopt;
  const int year = std::stoi(t.substr(0, 4));
  return is_valid_year(year) ? std::optional<int>(year) : std::nullopt;
}

std::optional<std::string> non_empty(std::string s) {
  if (s.empty()) return std::nullopt;
  return s;
}

std::vector<AuthorName> to_authors(const std::vector<std::string>& names) {
  std::vector<AuthorName> out;
  for (const auto& name : names) {
    if (!text::trim(name).empty()) out.push_back(normalize_author(name));
  }
  return out;
}

// ---- corpus dialect markers ----

const Node* corpus_papers_container(const Document& doc) {
  return doc.find_first([](const Node& n) {
    return n.is_element() && (n.attr("id") == std::string_view("aah-papers") || n.has_class("aah-papers"));
  });
}

bool has_corpus_marker(const Document& doc, const char* cls) { return doc.find_first(html::by_class(cls)) != nullptr; }

// ---- site dialect markers ----

bool is_site_entry(const Node& n) {
  if (!n.is("p") || !n.has_class("d-sm-flex")) return false;
  const Node* strong = n.find_first(html::by_tag("strong"));
  return strong != nullptr && strong->find_first(html::by_tag("a")) != nullptr;
}

bool is_site_abstract(const Node& n) {
  return n.is("div") && (n.has_class("abstract-collapse") || n.attr("id").value_or("").rfind("abstract-", 0) == 0);
}

std::vector<const Node*> links(const Document& doc) { return doc.find_all(html::by_tag("a")); }

bool site_index_like(const Document& doc, std::string_view base) {
  int venue_links = 0;
  for (const Node* a : links(doc)) {
    const auto href = a->attr("href");
    if (!href) continue;
    const std::string abs = url::resolve(base, *href);
    const std::string path = path_of(abs);
    if (path.rfind("/venues/", 0) == 0 && path.size() > 8) ++venue_links;
  }
  return venue_links > 0;
}

bool site_venue_like(const Document& doc, std::string_view base) {
  bool year_heading = false;
  doc.root().walk([&](const Node& n, int) {
    if (is_heading(n) && leading_year(n.text_content())) year_heading = true;
    return !year_heading;
  });
  if (!year_heading) return false;
  for (const Node* a : links(doc)) {
    const auto href = a->attr("href");
    if (!href) continue;
    const std::string abs = url::resolve(base, *href);
    if (path_starts_with(abs, "/volumes/") || path_starts_with(abs, "/events/")) return true;
  }
  return false;
}

const Node* meta_named(const Document& doc, std::string_view name) {
  return doc.find_first([&](const Node& n) { return n.is("meta") && n.attr("name") == name; });
}

// ---- entry extraction ----

struct RawEntry {
  std::optional<std::string> title;
  std::optional<std::string> landing_href;
  std::vector<std::string> authors;
  std::optional<std::string> abstract;
  std::optional<std::string> pdf_href;
  std::optional<std::string> bibkey;
};

std::vector<std::string> corpus_authors(const Node& scope) {
  const auto anchors = scope.find_all(html::by_class("aah-author"));
  if (!anchors.empty()) {
    std::vector<std::string> names;
    for (const Node* a : anchors) names.push_back(a->text_content());
    return names;
  }
  if (const Node* span = scope.find_first(html::by_class("aah-authors"))) {
    return split_author_list(span->text_content());
  }
  return {};
}

RawEntry corpus_entry(const Node& entry) {
  RawEntry raw;
  if (const Node* t = entry.find_first(html::by_class("aah-title"))) {
    raw.title = non_empty(t->text_content());
    if (const auto href = t->attr("href")) raw.landing_href = non_empty(text::trim(*href));
  }
  raw.authors = corpus_authors(entry);
  if (const Node* a = entry.find_first(html::by_class("aah-abstract"))) raw.abstract = non_empty(a->text_content());
  if (const Node* p = entry.find_first(html::by_class("aah-pdf"))) {
    if (const auto href = p->attr("href")) raw.pdf_href = non_empty(text::trim(*href));
  }
  if (const Node* b = entry.find_first(html::by_class("aah-bibkey"))) raw.bibkey = non_empty(b->text_content());
  return raw;
}

RawEntry site_entry(const Node& entry, const Node* abstract_card) {
  RawEntry raw;
  const Node* strong = entry.find_first(html::by_tag("strong"));
  const Node* title = strong->find_first(html::by_tag("a"));
  raw.title = non_empty(title->text_content());
  if (const auto href = title->attr("href")) raw.landing_href = non_empty(text::trim(*href));
  for (const Node* a : entry.find_all(html::by_tag("a"))) {
    const auto href = a->attr("href").value_or("");
    if (href.find("/people/") != std::string_view::npos) {
      raw.authors.push_back(a->text_content());
    } else if (!raw.pdf_href && href.size() > 4 && href.substr(href.size() - 4) == ".pdf") {
      raw.pdf_href = std::string(href);
    }
  }
  if (abstract_card != nullptr) {
    const Node* body = abstract_card->find_first(html::by_class("card-body"));
    raw.abstract = non_empty((body != nullptr ? body : abstract_card)->text_content());
  }
  return raw;
}

std::vector<RawEntry> site_entries(const Document& doc) {
  std::vector<RawEntry> out;
  doc.root().walk([&](const Node& parent, int) {
    const auto& kids = parent.children;
    for (std::size_t i = 0; i < kids.size(); ++i) {
      if (!is_site_entry(kids[i])) continue;
      const Node* card = nullptr;
      for (std::size_t j = i + 1; j < kids.size(); ++j) {
        if (!kids[j].is_element()) continue;
        if (is_site_abstract(kids[j])) card = &kids[j];
        break;
      }
      out.push_back(site_entry(kids[i], card));
    }
    return !is_site_entry(parent);
  });
  return out;
}

}  // namespace

std::string_view to_string(PageKind kind) {
  switch (kind) {
    case PageKind::index: return "index";
    case PageKind::venue: return "venue";
    case PageKind::proceedings: return "proceedings";
    case PageKind::paper: return "paper";
  }
  return "index";
}

PageKind page_kind_from_string(std::string_view s) {
  for (auto k : {PageKind::index, PageKind::venue, PageKind::proceedings, PageKind::paper}) {
    if (to_string(k) == s) return k;
  }
  throw Error(Errc::invalid_argument, "unknown page kind '" + std::string(s) + "'");
}

std::vector<std::string> split_author_list(std::string_view raw) {
  std::string s = text::collapse_whitespace(raw);
  std::vector<std::string> pieces;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == ',' || s[i] == ';') {
      pieces.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  std::vector<std::string> names;
  for (auto piece : pieces) {
    piece = text::trim(piece);
    if (piece.rfind("and ", 0) == 0) piece = piece.substr(4);
    std::size_t pos = 0;
    while (true) {
      const auto hit = piece.find(" and ", pos);
      const auto name = text::trim(piece.substr(pos, hit == std::string::npos ? std::string::npos : hit - pos));
      if (!name.empty()) names.push_back(name);
      if (hit == std::string::npos) break;
      pos = hit + 5;
    }
  }
  return names;
}

PageKind classify_page(std::string_view page, std::string_view source_url) {
  if (text::trim(page).empty()) throw Error(Errc::empty_input, "page is empty");
  const Document doc = Document::parse(page);
  if (corpus_papers_container(doc) != nullptr) return PageKind::proceedings;
  if (has_corpus_marker(doc, "aah-paper-page")) return PageKind::paper;
  if (has_corpus_marker(doc, "aah-year")) return PageKind::venue;
  if (has_corpus_marker(doc, "aah-category")) return PageKind::index;

  if (meta_named(doc, "citation_title") != nullptr) return PageKind::paper;
  if (doc.find_first(is_site_entry) != nullptr) return PageKind::proceedings;
  if (site_venue_like(doc, source_url)) return PageKind::venue;
  if (site_index_like(doc, source_url)) return PageKind::index;
  throw Error(Errc::unrecognized_page, "no page markers matched (" + std::string(source_url) + ")");
}

IndexParse parse_index(std::string_view page, std::string_view source_url) {
  const Document doc = Document::parse(page);
  IndexParse result;
  std::set<std::string> seen;
  auto add = [&](Category category, const Node& a) {
    const auto href = a.attr("href");
    const std::string name = a.text_content();
    if (!href || name.empty()) {
      result.warnings.push_back("venue link without name or href skipped");
      return;
    }
    std::string abs = url::resolve(source_url, *href);
    if (!seen.insert(abs).second) {
      result.warnings.push_back("duplicate venue link dropped: " + abs);
      return;
    }
    result.venues.push_back(VenueLink{category, name, std::move(abs)});
  };

  const auto sections = doc.find_all(html::by_class("aah-category"));
  if (!sections.empty()) {
    for (const Node* section : sections) {
      Category category = Category::acl_event;
      if (const auto declared = section->attr("data-category")) {
        category = category_from_string(*declared);
      } else if (const Node* h = section->find_first(is_heading);
                 h != nullptr && text::contains_ci(h->text_content(), "non-acl")) {
        category = Category::non_acl_event;
      }
      for (const Node* a : section->find_all(html::by_class("aah-venue"))) add(category, *a);
    }
    return result;
  }

  // Site dialect: venue links belong to the nearest preceding category heading.
  std::optional<Category> current;
  bool any_heading = false;
  doc.root().walk([&](const Node& n, int) {
    if (is_heading(n) || n.is("th") || n.is("caption")) {
      const std::string heading = n.text_content();
      if (text::contains_ci(heading, "non-acl")) {
        current = Category::non_acl_event;
        any_heading = true;
        return false;
      }
      if (text::contains_ci(heading, "acl events")) {
        current = Category::acl_event;
        any_heading = true;
        return false;
      }
    }
    if (n.is("a") && current) {
      const std::string abs = url::resolve(source_url, n.attr("href").value_or(""));
      const std::string path = path_of(abs);
      if (path.rfind("/venues/", 0) == 0 && path.size() > 8) add(*current, n);
    }
    return true;
  });
  if (!any_heading) throw Error(Errc::structure_error, "index page has no category sections");
  return result;
}

std::vector<ConferenceRecord> parse_venue_page(std::string_view page, Category category,
                                               std::string_view venue_key, std::string_view source_url) {
  if (!is_valid_venue_key(venue_key)) {
    throw Error(Errc::invalid_argument, "invalid venue key '" + std::string(venue_key) + "'");
  }
  const Document doc = Document::parse(page);
  std::vector<ConferenceRecord> records;
  std::set<std::string> seen;
  auto add = [&](int year, std::string title, std::string link, std::optional<std::string> desc) {
    if (title.empty()) title = text::ascii_lower(std::string(venue_key)) + " " + std::to_string(year);
    auto rec = make_conference(std::string(venue_key), year, std::move(title), std::move(link), category,
                               std::move(desc));
    if (seen.insert(rec.conf_id).second) records.push_back(std::move(rec));
  };

  const auto groups = doc.find_all(html::by_class("aah-year"));
  if (!groups.empty()) {
    for (const Node* group : groups) {
      std::optional<int> year;
      if (const auto declared = group->attr("data-year")) year = leading_year(*declared);
      if (!year) {
        if (const Node* h = group->find_first(is_heading)) year = leading_year(h->text_content());
      }
      const Node* volume = group->find_first(html::by_class("aah-volume"));
      if (!year || volume == nullptr || !volume->attr("href")) continue;
      std::optional<std::string> desc;
      if (const Node* d = group->find_first(html::by_class("aah-desc"))) desc = non_empty(d->text_content());
      add(*year, volume->text_content(), url::resolve(source_url, *volume->attr("href")), std::move(desc));
    }
  } else {
    // Site dialect: year headings (optionally linking the event page) followed by volume links.
    struct Group {
      int year;
      std::optional<std::string> event_url;
      std::optional<std::string> first_volume_url;
      std::string first_volume_title;
    };
    std::vector<Group> found;
    doc.root().walk([&](const Node& n, int) {
      if (is_heading(n)) {
        if (const auto year = leading_year(n.text_content())) {
          Group g{*year, std::nullopt, std::nullopt, {}};
          if (const Node* a = n.find_first(html::by_tag("a")); a != nullptr && a->attr("href")) {
            const std::string abs = url::resolve(source_url, *a->attr("href"));
            if (path_starts_with(abs, "/events/")) g.event_url = abs;
          }
          found.push_back(std::move(g));
          return false;
        }
      }
      if (n.is("a") && !found.empty() && n.attr("href")) {
        const std::string abs = url::resolve(source_url, *n.attr("href"));
        if (path_starts_with(abs, "/volumes/") && !found.back().first_volume_url) {
          found.back().first_volume_url = abs;
          found.back().first_volume_title = n.text_content();
        }
      }
      return true;
    });
    for (auto& g : found) {
      if (g.event_url || g.first_volume_url) {
        add(g.year, g.first_volume_title, g.event_url ? *g.event_url : *g.first_volume_url, std::nullopt);
      }
    }
  }
  if (records.empty()) throw Error(Errc::structure_error, "venue page has no year-grouped proceedings links");
  return records;
}

ProceedingsParse parse_proceedings(std::string_view page, const ConferenceRecord& conference) {
  const Document doc = Document::parse(page);
  ProceedingsParse result;
  result.content.conference = conference;
  result.report.source_url = conference.url;

  std::vector<RawEntry> entries;
  bool site = false;
  if (const Node* container = corpus_papers_container(doc)) {
    for (const Node* entry : container->find_all(html::by_class("aah-paper"))) entries.push_back(corpus_entry(*entry));
  } else if (doc.find_first(is_site_entry) != nullptr) {
    site = true;
    entries = site_entries(doc);
  } else {
    throw Error(Errc::structure_error, "paper-list container not found (" + conference.url + ")");
  }

  std::set<std::string> seen;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    auto& raw = entries[i];
    const std::string where = "entry " + std::to_string(i + 1);
    if (!raw.title) {
      result.report.warnings.push_back(where + ": missing title, skipped");
      continue;
    }
    if (!raw.landing_href) {
      result.report.warnings.push_back(where + ": title has no landing link, skipped");
      continue;
    }
    PaperRecord paper;
    paper.page_url = url::resolve(conference.url, *raw.landing_href);
    paper.anthology_id = url::last_segment(paper.page_url);
    if (paper.anthology_id.empty() || !url::is_absolute(paper.page_url)) {
      result.report.warnings.push_back(where + ": unusable landing link, skipped");
      continue;
    }
    if (site && paper.anthology_id.size() > 2 && paper.anthology_id.substr(paper.anthology_id.size() - 2) == ".0") {
      result.report.warnings.push_back(where + ": front matter skipped");
      continue;
    }
    if (!seen.insert(paper.anthology_id).second) {
      result.report.warnings.push_back(where + ": duplicate id " + paper.anthology_id + ", skipped");
      continue;
    }
    paper.title = std::move(*raw.title);
    paper.authors = to_authors(raw.authors);
    paper.venue_key = conference.venue_key;
    paper.year = conference.year;
    if (raw.pdf_href) paper.pdf_url = url::resolve(conference.url, *raw.pdf_href);
    paper.abstract = std::move(raw.abstract);
    paper.bibkey = std::move(raw.bibkey);
    result.content.paper_page_links.push_back(paper.page_url);
    result.papers.push_back(std::move(paper));
  }

  std::set<std::string> next_seen{conference.url};
  for (const Node* a : doc.find_all(html::by_class("aah-next"))) {
    if (const auto href = a->attr("href")) {
      std::string abs = url::resolve(conference.url, *href);
      if (next_seen.insert(abs).second) result.content.next_page_links.push_back(std::move(abs));
    }
  }
  result.report.records_extracted = static_cast<int>(result.papers.size());
  return result;
}

PaperDetails parse_paper_page(std::string_view page, std::string_view source_url) {
  const Document doc = Document::parse(page);
  PaperDetails details;
  if (const Node* article = doc.find_first(html::by_class("aah-paper-page"))) {
    const RawEntry raw = corpus_entry(*article);
    details.title = raw.title;
    details.authors = to_authors(raw.authors);
    details.abstract = raw.abstract;
    if (raw.pdf_href) details.pdf_url = url::resolve(source_url, *raw.pdf_href);
    details.bibkey = raw.bibkey;
    return details;
  }
  if (const Node* m = meta_named(doc, "citation_title")) details.title = non_empty(text::collapse_whitespace(m->attr("content").value_or("")));
  std::vector<std::string> names;
  for (const Node* m : doc.find_all([](const Node& n) { return n.is("meta") && n.attr("name") == std::string_view("citation_author"); })) {
    names.emplace_back(m->attr("content").value_or(""));
  }
  details.authors = to_authors(names);
  if (const Node* m = meta_named(doc, "citation_pdf_url")) {
    if (const auto content = m->attr("content"); content && !content->empty()) {
      details.pdf_url = url::resolve(source_url, *content);
    }
  }
  if (const Node* abs = doc.find_first(html::by_class("acl-abstract"))) {
    const Node* body = abs->find_first(html::by_tag("span"));
    details.abstract = non_empty((body != nullptr ? body : abs)->text_content());
  }
  if (const Node* key = doc.find_first([](const Node& n) { return n.attr("id") == std::string_view("citePaperBibkey"); })) {
    details.bibkey = non_empty(key->text_content());
  }
  if (!details.title) throw Error(Errc::structure_error, "paper page has no title (" + std::string(source_url) + ")");
  return details;
}

void enrich(PaperRecord& paper, const PaperDetails& details) {
  if (!paper.abstract && details.abstract) paper.abstract = details.abstract;
  if (!paper.pdf_url && details.pdf_url) paper.pdf_url = details.pdf_url;
  if (!paper.bibkey && details.bibkey) paper.bibkey = details.bibkey;
  if (paper.authors.empty() && !details.authors.empty()) paper.authors = details.authors;
}

}  // namespace aah::parser
