#pragma once

#include <string>
#include <string_view>

// Unicode-aware text helpers shared by the parser, model and paperlist.
namespace aah::text {

std::string trim(std::string_view s);

// Trims and collapses every run of Unicode whitespace into one ASCII space.
std::string collapse_whitespace(std::string_view s);

// Full Unicode case folding.
std::string casefold(std::string_view s);

// Compatibility decomposition followed by removal of combining marks.
std::string strip_diacritics(std::string_view s);

// ASCII-only lowercase; leaves other bytes untouched.
std::string ascii_lower(std::string_view s);

bool contains_ci(std::string_view haystack, std::string_view needle);

}  // namespace aah::text
