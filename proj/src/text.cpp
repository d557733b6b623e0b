#include "biblio/text.hpp"

#include <unicode/locid.h>
#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include <stdexcept>

namespace biblio::text {
namespace {

icu::UnicodeString from_utf8(std::string_view s) {
  return icu::UnicodeString::fromUTF8(icu::StringPiece(s.data(), static_cast<int32_t>(s.size())));
}

std::string to_utf8(const icu::UnicodeString& u) {
  std::string out;
  u.toUTF8String(out);
  return out;
}

std::vector<UChar32> code_points(std::string_view s) {
  std::vector<UChar32> out;
  out.reserve(s.size());
  int32_t i = 0;
  const auto length = static_cast<int32_t>(s.size());
  const auto* bytes = reinterpret_cast<const uint8_t*>(s.data());
  while (i < length) {
    UChar32 c;
    U8_NEXT(bytes, i, length, c);
    out.push_back(c < 0 ? 0xFFFD : c);
  }
  return out;
}

void append(std::string& out, UChar32 c) {
  char buf[U8_MAX_LENGTH];
  int32_t n = 0;
  UBool error = false;
  U8_APPEND(reinterpret_cast<uint8_t*>(buf), n, U8_MAX_LENGTH, c, error);
  if (!error) out.append(buf, static_cast<std::size_t>(n));
}

std::string encode(const std::vector<UChar32>& cps, std::size_t begin, std::size_t end) {
  std::string out;
  for (std::size_t i = begin; i < end; ++i) append(out, cps[i]);
  return out;
}

}  // namespace

std::string fold(std::string_view utf8) {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* nfd = icu::Normalizer2::getNFDInstance(status);
  if (U_FAILURE(status)) throw std::runtime_error("ICU NFD normalizer unavailable");
  icu::UnicodeString decomposed = nfd->normalize(from_utf8(utf8), status);
  if (U_FAILURE(status)) throw std::runtime_error("ICU normalization failed");

  std::string out;
  out.reserve(utf8.size());
  for (int32_t i = 0; i < decomposed.length();) {
    const UChar32 c = decomposed.char32At(i);
    i += U16_LENGTH(c);
    if (u_charType(c) == U_NON_SPACING_MARK) continue;
    append(out, u_tolower(c));
  }
  return out;
}

std::string lower(std::string_view utf8) {
  icu::UnicodeString u = from_utf8(utf8);
  u.toLower(icu::Locale::getRoot());
  return to_utf8(u);
}

std::string trim(std::string_view utf8) {
  const auto cps = code_points(utf8);
  std::size_t begin = 0;
  std::size_t end = cps.size();
  while (begin < end && u_isUWhiteSpace(cps[begin])) ++begin;
  while (end > begin && u_isUWhiteSpace(cps[end - 1])) --end;
  return encode(cps, begin, end);
}

std::vector<std::string> split_whitespace(std::string_view utf8) {
  const auto cps = code_points(utf8);
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= cps.size(); ++i) {
    if (i == cps.size() || u_isUWhiteSpace(cps[i])) {
      if (i > start) out.push_back(encode(cps, start, i));
      start = i + 1;
    }
  }
  return out;
}

std::string strip_punctuation(std::string_view utf8) {
  const auto cps = code_points(utf8);
  std::size_t begin = 0;
  std::size_t end = cps.size();
  while (begin < end && u_ispunct(cps[begin])) ++begin;
  while (end > begin && u_ispunct(cps[end - 1])) --end;
  return encode(cps, begin, end);
}

std::vector<std::string> letter_runs(std::string_view utf8, bool keep_digits) {
  const auto cps = code_points(utf8);
  std::vector<std::string> out;
  std::string current;
  for (const UChar32 c : cps) {
    const bool letter = u_isalpha(c) || u_charType(c) == U_NON_SPACING_MARK;
    if (letter || (keep_digits && u_isdigit(c))) {
      append(current, u_tolower(c));
    } else if (!current.empty()) {
      out.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) out.push_back(std::move(current));
  return out;
}

bool starts_uppercase(std::string_view utf8) {
  if (utf8.empty()) return false;
  int32_t i = 0;
  UChar32 c;
  U8_NEXT(reinterpret_cast<const uint8_t*>(utf8.data()), i, static_cast<int32_t>(utf8.size()), c);
  return c >= 0 && u_isupper(c);
}

}  // namespace biblio::text
