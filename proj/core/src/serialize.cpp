#include "aah/serialize.hpp"

#include "aah/error.hpp"
#include "aah/text.hpp"

#include <json.hpp>

#include <algorithm>
#include <sstream>

namespace aah::serialize {
namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json optional_field(const std::optional<std::string>& v) {
  return v ? ordered_json(*v) : ordered_json(nullptr);
}

std::optional<std::string> read_optional(const nlohmann::json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  return it->get<std::string>();
}

std::string join_authors(const PaperRecord& paper, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < paper.authors.size(); ++i) {
    if (i > 0) out += sep;
    out += paper.authors[i].full;
  }
  return out;
}

std::string alnum_only(std::string_view s) {
  std::string out;
  for (const char c : s) {
    if ((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9')) out += c;
  }
  return out;
}

std::string bibtex_escape(std::string_view s) {
  std::string out;
  for (const char c : s) {
    if (c == '&' || c == '%' || c == '$' || c == '#' || c == '_' || c == '{' || c == '}') out += '\\';
    out += c;
  }
  return out;
}

std::string upper_ascii(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return (c >= 'a' && c <= 'z') ? static_cast<char>(c - 'a' + 'A') : static_cast<char>(c); });
  return out;
}

nlohmann::json stats_node_json(const StatsNode& node) {
  if (node.children.empty()) return node.count;
  nlohmann::json obj = nlohmann::json::object();
  for (const auto& [key, child] : node.children) obj[key] = stats_node_json(child);
  return obj;
}

void stats_rows(const StatsNode& node, std::vector<std::string>& path, std::vector<std::vector<std::string>>& rows) {
  if (node.children.empty()) {
    auto row = path;
    row.push_back(std::to_string(node.count));
    rows.push_back(std::move(row));
    return;
  }
  for (const auto& [key, child] : node.children) {
    path.push_back(key);
    stats_rows(child, path, rows);
    path.pop_back();
  }
}

std::string render_table(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) width[c] = header[c].size();
  for (const auto& row : rows) {
    for (std::size_t c = 0; c + 1 < row.size() && c < width.size(); ++c) width[c] = std::max(width[c], row[c].size());
  }
  std::ostringstream out;
  auto emit = [&](const std::vector<std::string>& cells) {
    for (std::size_t c = 0; c < cells.size(); ++c) {
      out << cells[c];
      if (c + 1 < cells.size()) out << std::string(width[c] - std::min(width[c], cells[c].size()) + 2, ' ');
    }
    out << '\n';
  };
  emit(header);
  for (const auto& row : rows) emit(row);
  return out.str();
}

}  // namespace

std::string to_json_line(const PaperRecord& paper) {
  ordered_json j;
  j["anthology_id"] = paper.anthology_id;
  j["title"] = paper.title;
  auto authors = ordered_json::array();
  for (const auto& a : paper.authors) authors.push_back(a.full);
  j["authors"] = std::move(authors);
  j["venue_key"] = paper.venue_key;
  j["year"] = paper.year;
  j["page_url"] = paper.page_url;
  j["pdf_url"] = optional_field(paper.pdf_url);
  j["abstract"] = optional_field(paper.abstract);
  j["bibkey"] = optional_field(paper.bibkey);
  return j.dump();
}

PaperRecord paper_from_json(std::string_view json_text) {
  try {
    const auto j = nlohmann::json::parse(json_text);
    PaperRecord paper;
    paper.anthology_id = j.at("anthology_id").get<std::string>();
    paper.title = j.at("title").get<std::string>();
    for (const auto& name : j.at("authors")) paper.authors.push_back(normalize_author(name.get<std::string>()));
    paper.venue_key = j.at("venue_key").get<std::string>();
    paper.year = j.at("year").get<int>();
    paper.page_url = j.at("page_url").get<std::string>();
    paper.pdf_url = read_optional(j, "pdf_url");
    paper.abstract = read_optional(j, "abstract");
    paper.bibkey = read_optional(j, "bibkey");
    return paper;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::invalid_argument, std::string("malformed paper JSON: ") + e.what());
  }
}

std::string to_jsonl(const PaperList& list) {
  std::string out;
  for (const auto& paper : list) {
    out += to_json_line(paper);
    out += '\n';
  }
  return out;
}

PaperList from_jsonl(std::string_view text) {
  std::vector<PaperRecord> papers;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const auto line = text.substr(pos, end - pos);
    if (!text::trim(line).empty()) papers.push_back(paper_from_json(line));
    pos = end + 1;
  }
  return PaperList(std::move(papers));
}

std::string csv_field(std::string_view value) {
  if (value.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(value);
  std::string out = "\"";
  for (const char c : value) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string to_csv(const PaperList& list) {
  std::string out = "anthology_id,title,authors,venue_key,year,page_url,pdf_url,abstract,bibkey\r\n";
  for (const auto& p : list) {
    const std::vector<std::string> cells = {
        p.anthology_id, p.title,     join_authors(p, "; "),  p.venue_key,         std::to_string(p.year),
        p.page_url,     p.pdf_url.value_or(""), p.abstract.value_or(""), p.bibkey.value_or("")};
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i > 0) out += ',';
      out += csv_field(cells[i]);
    }
    out += "\r\n";
  }
  return out;
}

std::string bibtex_key(const PaperRecord& paper) {
  if (paper.bibkey && !paper.bibkey->empty()) return *paper.bibkey;
  std::string surname = "anon";
  if (!paper.authors.empty()) {
    const std::string& name = paper.authors.front().normalized;
    const auto space = name.rfind(' ');
    const std::string last = alnum_only(space == std::string::npos ? name : name.substr(space + 1));
    if (!last.empty()) surname = last;
  }
  std::string first_word;
  std::istringstream words(text::casefold(text::strip_diacritics(paper.title)));
  for (std::string w; words >> w;) {
    first_word = alnum_only(w);
    if (!first_word.empty()) break;
  }
  return surname + std::to_string(paper.year) + first_word;
}

std::string to_bibtex(const PaperList& list) {
  std::string out;
  for (const auto& p : list) {
    if (!out.empty()) out += '\n';
    out += "@inproceedings{" + bibtex_key(p) + ",\n";
    out += "  author = {" + bibtex_escape(join_authors(p, " and ")) + "},\n";
    out += "  title = {" + bibtex_escape(p.title) + "},\n";
    out += "  year = {" + std::to_string(p.year) + "},\n";
    out += "  booktitle = {" + upper_ascii(p.venue_key) + "},\n";
    out += "  url = {" + p.page_url + "}\n";
    out += "}\n";
  }
  return out;
}

std::string to_table(const PaperList& list) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& p : list) rows.push_back({p.anthology_id, std::to_string(p.year), p.venue_key, p.title});
  return render_table({"anthology_id", "year", "venue_key", "title"}, rows);
}

std::string stats_to_json(const StatsNode& root) {
  if (root.children.empty()) return "{}";
  return stats_node_json(root).dump();
}

std::string stats_to_table(const StatsNode& root, std::span<const StatsDim> dims) {
  std::vector<std::string> header;
  for (const auto d : dims) header.emplace_back(to_string(d));
  header.emplace_back("count");
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> path;
  if (!root.children.empty()) stats_rows(root, path, rows);
  return render_table(header, rows);
}

}  // namespace aah::serialize
