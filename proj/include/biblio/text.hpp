#pragma once

#include <string>
#include <string_view>
#include <vector>

// Unicode helpers shared by name normalization, preprocessing and the stub
// embedder. All strings are UTF-8.
namespace biblio::text {

// Canonical decomposition with combining marks removed, then lowercased.
std::string fold(std::string_view utf8);

// Trims Unicode whitespace at both ends.
std::string trim(std::string_view utf8);

// Splits on runs of Unicode whitespace; no empty pieces.
std::vector<std::string> split_whitespace(std::string_view utf8);

// Removes leading and trailing punctuation code points.
std::string strip_punctuation(std::string_view utf8);

// Lowercased runs of letters. With `keep_digits` digits are part of a run,
// otherwise they separate runs like any other non-letter.
std::vector<std::string> letter_runs(std::string_view utf8, bool keep_digits);

// True when the first code point of `utf8` is an uppercase letter.
bool starts_uppercase(std::string_view utf8);

// Lowercase without decomposition.
std::string lower(std::string_view utf8);

}  // namespace biblio::text
