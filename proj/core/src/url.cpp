#include "aah/url.hpp"

#include "aah/text.hpp"

#include <charconv>
#include <vector>

namespace aah::url {
namespace {

bool is_scheme_char(char c, bool first) {
  const bool alpha = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
  if (first) return alpha;
  return alpha || (c >= '0' && c <= '9') || c == '+' || c == '-' || c == '.';
}

std::size_t scheme_length(std::string_view s) {
  const auto colon = s.find(':');
  if (colon == std::string_view::npos || colon == 0) return 0;
  for (std::size_t i = 0; i < colon; ++i) {
    if (!is_scheme_char(s[i], i == 0)) return 0;
  }
  return colon;
}

// Removes "." and ".." segments from an absolute path.
std::string remove_dot_segments(std::string_view path) {
  std::string query;
  if (const auto q = path.find_first_of("?#"); q != std::string_view::npos) {
    query = std::string(path.substr(q));
    path = path.substr(0, q);
  }
  std::vector<std::string_view> segments;
  std::size_t pos = 1;
  bool trailing_slash = false;
  while (pos <= path.size()) {
    const auto next = path.find('/', pos);
    const auto seg = path.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos);
    trailing_slash = (seg == "." || seg == "..");
    if (seg == "..") {
      if (!segments.empty()) segments.pop_back();
    } else if (seg != ".") {
      segments.push_back(seg);
    }
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  std::string out;
  for (const auto seg : segments) {
    out += '/';
    out += seg;
  }
  if (out.empty() || trailing_slash) out += '/';
  return out + query;
}

}  // namespace

std::string Parts::origin() const {
  std::string out = scheme + "://" + host;
  if (port != 0) out += ":" + std::to_string(port);
  return out;
}

std::optional<Parts> parse(std::string_view absolute) {
  const auto slen = scheme_length(absolute);
  if (slen == 0 || absolute.substr(slen, 3) != "://") return std::nullopt;
  Parts parts;
  parts.scheme = text::ascii_lower(absolute.substr(0, slen));
  auto rest = absolute.substr(slen + 3);
  const auto path_start = rest.find_first_of("/?#");
  auto authority = rest.substr(0, path_start);
  if (const auto at = authority.rfind('@'); at != std::string_view::npos) authority = authority.substr(at + 1);
  if (authority.empty()) return std::nullopt;
  if (const auto colon = authority.rfind(':'); colon != std::string_view::npos && authority.find(']') == std::string_view::npos) {
    const auto port_text = authority.substr(colon + 1);
    int port = 0;
    const auto [ptr, ec] = std::from_chars(port_text.data(), port_text.data() + port_text.size(), port);
    if (ec != std::errc() || ptr != port_text.data() + port_text.size() || port <= 0 || port > 65535) {
      return std::nullopt;
    }
    parts.port = port;
    authority = authority.substr(0, colon);
  }
  if (authority.empty()) return std::nullopt;
  parts.host = text::ascii_lower(authority);
  parts.path = path_start == std::string_view::npos ? "/" : std::string(rest.substr(path_start));
  if (parts.path.front() != '/') parts.path.insert(parts.path.begin(), '/');
  if (const auto hash = parts.path.find('#'); hash != std::string::npos) parts.path.erase(hash);
  return parts;
}

bool is_absolute(std::string_view s) { return parse(s).has_value(); }

std::string resolve(std::string_view base, std::string_view href) {
  const std::string target = text::trim(href);
  if (is_absolute(target)) return target;
  const auto parts = parse(base);
  if (!parts) return target;
  if (target.rfind("//", 0) == 0) return parts->scheme + ":" + target;
  if (target.empty()) return parts->origin() + parts->path;
  if (target.front() == '#') return parts->origin() + parts->path;
  if (target.front() == '/') return parts->origin() + remove_dot_segments(target);
  if (target.front() == '?') {
    const auto q = parts->path.find('?');
    return parts->origin() + parts->path.substr(0, q) + target;
  }
  std::string dir = parts->path.substr(0, parts->path.find('?'));
  dir.erase(dir.rfind('/') + 1);
  return parts->origin() + remove_dot_segments(dir + target);
}

std::string last_segment(std::string_view absolute) {
  std::string_view path = absolute;
  if (const auto parts_end = path.find_first_of("?#"); parts_end != std::string_view::npos) {
    path = path.substr(0, parts_end);
  }
  while (!path.empty() && path.back() == '/') path.remove_suffix(1);
  auto seg = path.substr(path.rfind('/') == std::string_view::npos ? 0 : path.rfind('/') + 1);
  if (seg.size() > 5 && seg.substr(seg.size() - 5) == ".html") seg.remove_suffix(5);
  return std::string(seg);
}

}  // namespace aah::url
