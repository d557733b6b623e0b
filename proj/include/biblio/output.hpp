#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace biblio::output {

// Fixed-point with `decimals` digits; "-0" is printed as "0". NaN prints "NaN".
std::string fixed(double value, int decimals);
std::string fixed(std::optional<double> value, int decimals);

// Shortest form of a value rounded to three decimals, keeping at least one
// fractional digit: 111 -> "111.0", 27.75 -> "27.75", 12.3333 -> "12.333".
std::string rounded3(double value);

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string to_csv() const;
  // Pipe table with columns padded to equal width.
  std::string to_markdown() const;
};

// Writes through a temporary sibling file and renames it into place.
void write_atomic(const std::filesystem::path& path, const std::string& content);

std::string sha256_hex(const std::string& content);

}  // namespace biblio::output
