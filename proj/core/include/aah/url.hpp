#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace aah::url {

struct Parts {
  std::string scheme;  // lowercase
  std::string host;    // lowercase
  int port = 0;        // 0 = scheme default
  std::string path;    // begins with '/', query string included

  std::string origin() const;
};

std::optional<Parts> parse(std::string_view absolute);

bool is_absolute(std::string_view s);

// RFC 3986 reference resolution for the forms pages actually use:
// absolute, scheme-relative ("//host/x"), root-relative ("/x"), and relative ("x", "../x").
std::string resolve(std::string_view base, std::string_view href);

// Final non-empty path segment with any ".html" suffix removed:
// "https://h/2022.acl-long.1/" -> "2022.acl-long.1".
std::string last_segment(std::string_view absolute);

}  // namespace aah::url
