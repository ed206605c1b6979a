#pragma once

#include "aah/model.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

// Heuristic extraction of records from anthology-style pages.
//
// Two markup dialects are recognised. The corpus dialect is the one the bundled
// fixtures use and carries explicit "aah-*" class markers:
//
//   index        section.aah-category[data-category] > a.aah-venue
//   venue        div.aah-year[data-year] > a.aah-volume (+ optional p.aah-desc)
//   proceedings  #aah-papers > div.aah-paper > a.aah-title, span.aah-authors,
//                div.aah-abstract?, a.aah-pdf?, span.aah-bibkey?;  a.aah-next for pagination
//   paper        article.aah-paper-page with the same field classes
//
// The site dialect adapts the public anthology markup (venue links under
// "/venues/", year headings linking "/events/", entry paragraphs with a strong
// title anchor, "/people/" author anchors and collapsible abstract cards, and
// citation_* meta tags on paper pages) onto the same extraction results.
namespace aah::parser {

enum class PageKind { index, venue, proceedings, paper };

std::string_view to_string(PageKind kind);
PageKind page_kind_from_string(std::string_view s);

struct ParseReport {
  int records_extracted = 0;
  std::vector<std::string> warnings;
  std::string source_url;
};

struct VenueLink {
  Category category = Category::acl_event;
  std::string venue_name;
  std::string venue_url;

  friend bool operator==(const VenueLink&, const VenueLink&) = default;
};

struct IndexParse {
  std::vector<VenueLink> venues;
  std::vector<std::string> warnings;
};

struct ProceedingsParse {
  ConContent content;
  std::vector<PaperRecord> papers;
  ParseReport report;
};

// Fields a single paper landing page can contribute.
struct PaperDetails {
  std::optional<std::string> title;
  std::vector<AuthorName> authors;
  std::optional<std::string> abstract;
  std::optional<std::string> pdf_url;
  std::optional<std::string> bibkey;
};

// Throws Error(empty_input) for empty html, Error(unrecognized_page) when no marker set matches.
PageKind classify_page(std::string_view html, std::string_view source_url);

// Venue links tagged by category, in document order; duplicates are dropped with a warning.
// Throws Error(structure_error) when no category section is present.
IndexParse parse_index(std::string_view html, std::string_view source_url);

// One pending ConferenceRecord per year group. Throws Error(structure_error) when no
// year-grouped proceedings links exist.
std::vector<ConferenceRecord> parse_venue_page(std::string_view html, Category category,
                                               std::string_view venue_key, std::string_view source_url);

// Papers inherit venue_key and year from `conference`; relative links resolve against
// conference.url. Throws Error(structure_error) when the paper-list container is missing.
ProceedingsParse parse_proceedings(std::string_view html, const ConferenceRecord& conference);

PaperDetails parse_paper_page(std::string_view html, std::string_view source_url);

// Fills absent optional fields of `paper` from `details`; present fields win.
void enrich(PaperRecord& paper, const PaperDetails& details);

// "A, B and C" -> {"A", "B", "C"}.
std::vector<std::string> split_author_list(std::string_view text);

}  // namespace aah::parser
