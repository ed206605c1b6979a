#include "corpus.hpp"

#include "aah/error.hpp"
#include "aah/parser.hpp"

#include <json.hpp>

#include <atomic>
#include <functional>
#include <fstream>
#include <map>
#include <optional>
#include <random>
#include <regex>
#include <sstream>

namespace aah::testing {
namespace {

std::string join_authors(const std::vector<AuthorName>& authors) {
  std::string out;
  for (const auto& a : authors) {
    if (!out.empty()) out += "; ";
    out += a.full;
  }
  return out;
}

std::optional<std::string> paper_field(const PaperRecord& p, const std::string& field) {
  if (field == "title") return p.title;
  if (field == "authors") return join_authors(p.authors);
  if (field == "page_url") return p.page_url;
  if (field == "pdf_url") return p.pdf_url;
  if (field == "abstract") return p.abstract;
  if (field == "bibkey") return p.bibkey;
  return std::nullopt;
}

std::optional<std::string> conference_field(const ConferenceRecord& c, const std::string& field) {
  if (field == "title") return c.title;
  if (field == "url") return c.url;
  if (field == "desc") return c.desc;
  return std::nullopt;
}

std::optional<std::string> details_field(const parser::PaperDetails& d, const std::string& field) {
  if (field == "title") return d.title;
  if (field == "authors") return join_authors(d.authors);
  if (field == "pdf_url") return d.pdf_url;
  if (field == "abstract") return d.abstract;
  if (field == "bibkey") return d.bibkey;
  return std::nullopt;
}

}  // namespace

std::filesystem::path fixture_dir() { return AAH_FIXTURE_DIR; }

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

GoldenResult run_golden_suite(const std::filesystem::path& root) {
  GoldenResult result;
  const auto manifest = nlohmann::json::parse(read_file(root / "manifest.json"));
  static const std::regex proceedings_name(R"(^(.+)-(\d{4})(-page\d+)?$)");

  for (const auto& page : manifest.at("pages")) {
    ++result.pages;
    const std::string path = page.at("path");
    const std::string kind = page.at("kind");
    const int expected = page.at("expected_records");
    const std::string url = "fixture://corpus/" + path;
    const std::string stem = std::filesystem::path(path).stem().string();
    auto fail = [&](const std::string& what) { result.failures.push_back(path + ": " + what); };

    try {
      const std::string html = read_file(root / path);
      const auto detected = parser::classify_page(html, url);
      if (parser::to_string(detected) != kind) fail("classified as " + std::string(parser::to_string(detected)));

      std::map<std::string, std::function<std::optional<std::string>(const std::string&)>> lookup;
      int records = 0;
      if (kind == "index") {
        records = static_cast<int>(parser::parse_index(html, url).venues.size());
      } else if (kind == "venue") {
        // Pages outside venues/ are named for their scenario; the spot checks carry the venue.
        std::string venue = canonical_venue(stem);
        const auto& checks = page.at("spot_checks");
        if (path.rfind("venues/", 0) != 0 && !checks.empty()) {
          if (const auto parsed = parse_conf_id(checks.front().at("anthology_id").get<std::string>())) venue = parsed->first;
        }
        const auto confs = parser::parse_venue_page(html, Category::acl_event, venue, url);
        records = static_cast<int>(confs.size());
        for (const auto& c : confs) {
          lookup[c.conf_id] = [c](const std::string& f) { return conference_field(c, f); };
        }
      } else if (kind == "proceedings") {
        std::smatch m;
        std::string venue = "edge";
        int year = 2020;
        if (std::regex_match(stem, m, proceedings_name)) {
          venue = m[1];
          year = std::stoi(m[2]);
        }
        const auto conf = make_conference(venue, year, "Proceedings", url, Category::acl_event);
        const auto parsed = parser::parse_proceedings(html, conf);
        records = static_cast<int>(parsed.papers.size());
        for (const auto& p : parsed.papers) {
          lookup[p.anthology_id] = [p](const std::string& f) { return paper_field(p, f); };
        }
      } else if (kind == "paper") {
        const auto details = parser::parse_paper_page(html, url);
        records = details.title ? 1 : 0;
        lookup[stem] = [details](const std::string& f) { return details_field(details, f); };
      } else {
        fail("unknown kind " + kind);
        continue;
      }
      if (records != expected) fail("expected " + std::to_string(expected) + " records, got " + std::to_string(records));

      for (const auto& check : page.at("spot_checks")) {
        ++result.checks;
        const std::string id = check.at("anthology_id");
        const std::string field = check.at("field");
        const std::string want = check.at("value");
        const auto it = lookup.find(id);
        if (it == lookup.end()) {
          fail("no record " + id);
          continue;
        }
        const auto got = it->second(field);
        if (!got || *got != want) fail(id + "." + field + ": expected '" + want + "', got '" + got.value_or("<absent>") + "'");
      }
    } catch (const std::exception& e) {
      fail(std::string("threw ") + e.what());
    }
  }
  return result;
}

TempDir::TempDir() {
  static std::atomic<int> counter{0};
  std::random_device rd;
  path_ = std::filesystem::temp_directory_path() /
          ("aah-test-" + std::to_string(rd()) + "-" + std::to_string(counter.fetch_add(1)));
  std::filesystem::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

}  // namespace aah::testing
