#pragma once

#include "aah/paperlist.hpp"

#include <span>
#include <string>
#include <string_view>

// Text encodings of PaperLists and statistics.
namespace aah::serialize {

// One compact JSON object per record; absent optionals are written as null.
std::string to_json_line(const PaperRecord& paper);
PaperRecord paper_from_json(std::string_view json_text);

// JSON lines, each terminated by '\n'.
std::string to_jsonl(const PaperList& list);
PaperList from_jsonl(std::string_view text);

// RFC 4180: header row, CRLF line breaks, fields quoted when they contain
// a comma, quote, CR or LF. Authors are joined with "; ".
std::string to_csv(const PaperList& list);
std::string csv_field(std::string_view value);

// @inproceedings entries with author/title/year/booktitle/url.
std::string to_bibtex(const PaperList& list);
// The record's bibkey, else "<first-author-surname><year><first-title-word>" casefolded.
std::string bibtex_key(const PaperRecord& paper);

// Fixed-width text table: anthology_id, year, venue, title.
std::string to_table(const PaperList& list);

std::string stats_to_json(const StatsNode& root);
std::string stats_to_table(const StatsNode& root, std::span<const StatsDim> dims);

}  // namespace aah::serialize
