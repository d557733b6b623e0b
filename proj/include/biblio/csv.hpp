#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace biblio::csv {

struct Row {
  std::size_t line = 0;  // 1-based line the record starts on
  std::vector<std::string> fields;
};

// RFC 4180 reader: quoted fields may contain commas, doubled quotes and line
// breaks. A UTF-8 BOM is skipped, CRLF accepted. Lines starting with '#'
// outside a quoted field are treated as comments. Throws ParseError on an
// unterminated quote.
std::vector<Row> parse(std::string_view content, std::string_view module = "records");

// Quotes a field when it contains a comma, quote, or line break.
std::string escape(std::string_view field);

std::string join(const std::vector<std::string>& fields);

}  // namespace biblio::csv
