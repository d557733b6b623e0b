#include "biblio/records.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>
#include <tuple>
#include <unordered_map>
#include <unordered_set>

#include "json.hpp"

#include "biblio/csv.hpp"
#include "biblio/error.hpp"
#include "biblio/text.hpp"

namespace biblio {

std::string AuthorEntry::display_name() const {
  const std::string g = text::trim(given_names);
  const std::string s = text::trim(surname);
  if (g.empty()) return s;
  if (s.empty()) return g;
  return g + " " + s;
}

std::string AuthorKey::to_string() const {
  std::string out = first + " " + last;
  if (!qualifier.empty()) out += " [" + qualifier + "]";
  return out;
}

int AuthorProfile::total() const {
  int sum = 0;
  for (const auto& [year, count] : year_counts) sum += count;
  return sum;
}

namespace {

std::string hyphenate(const std::string& folded) {
  std::string out;
  for (const auto& token : text::split_whitespace(folded)) {
    const std::string piece = text::strip_punctuation(token);
    if (piece.empty()) continue;
    if (!out.empty()) out.push_back('-');
    out += piece;
  }
  return out;
}

}  // namespace

AuthorKey normalize_name(const std::string& given_names, const std::string& surname) {
  const std::string given = text::trim(given_names);
  const std::string last_raw = text::trim(surname);
  if (given.empty()) throw EmptyName("given name is blank (surname '" + surname + "')");
  if (last_raw.empty()) throw EmptyName("surname is blank (given name '" + given_names + "')");

  // Only the first given-name token survives; middle names and initials drop.
  const auto given_tokens = text::split_whitespace(text::fold(given));
  AuthorKey key;
  key.first = text::strip_punctuation(given_tokens.front());
  key.last = hyphenate(text::fold(last_raw));
  if (key.first.empty() || key.last.empty())
    throw EmptyName("name '" + given_names + " " + surname + "' has no letters");
  return key;
}

AuthorKey author_key(const AuthorEntry& author, bool strict) {
  AuthorKey key = normalize_name(author.given_names, author.surname);
  if (strict) key.qualifier = hyphenate(text::fold(author.country));
  return key;
}

InputFormat format_for(const std::filesystem::path& path) {
  return text::lower(path.extension().string()) == ".json" ? InputFormat::json : InputFormat::csv;
}

namespace {

constexpr std::size_t kColumnCount = std::size(kArticleColumns);

std::optional<int> parse_year(const std::string& raw) {
  const std::string s = text::trim(raw);
  int year = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), year);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return year;
}

std::string range_warning(std::string_view where, int year, const YearRange& range) {
  std::ostringstream os;
  os << where << ": year " << year << " outside " << range.first << "-" << range.last
     << ", skipped";
  return os.str();
}

IngestResult parse_csv(const std::string& content, const IngestOptions& options) {
  const auto rows = csv::parse(content);
  if (rows.empty()) throw SchemaError("missing header row");

  std::array<std::size_t, kColumnCount> index{};
  const auto& header = rows.front().fields;
  for (std::size_t c = 0; c < kColumnCount; ++c) {
    const auto it = std::find_if(header.begin(), header.end(), [&](const std::string& h) {
      return text::trim(h) == kArticleColumns[c];
    });
    if (it == header.end())
      throw SchemaError(std::string("missing column '") + kArticleColumns[c] + "'");
    index[c] = static_cast<std::size_t>(it - header.begin());
  }

  IngestResult result;
  std::unordered_map<std::string, std::size_t> position;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.fields.size() != header.size()) {
      throw ParseError("records", row.line,
                       "expected " + std::to_string(header.size()) + " fields, got " +
                           std::to_string(row.fields.size()));
    }
    auto field = [&](std::size_t c) -> const std::string& { return row.fields[index[c]]; };

    const std::string id = text::trim(field(0));
    if (id.empty()) throw ParseError("records", row.line, "empty article_id");
    const auto year = parse_year(field(2));
    if (!year) throw ParseError("records", row.line, "invalid year '" + field(2) + "'");
    if (!options.years.contains(*year)) {
      result.warnings.push_back(range_warning("line " + std::to_string(row.line), *year, options.years));
      continue;
    }

    AuthorEntry author{field(5), field(6), text::trim(field(7)), text::trim(field(8))};
    const auto found = position.find(id);
    if (found == position.end()) {
      ArticleRecord article;
      article.article_id = id;
      article.conference = text::trim(field(1));
      article.year = *year;
      article.title = field(3);
      article.abstract = field(4);
      article.authors.push_back(std::move(author));
      position.emplace(id, result.articles.size());
      result.articles.push_back(std::move(article));
      continue;
    }
    ArticleRecord& article = result.articles[found->second];
    if (article.conference != text::trim(field(1)) || article.year != *year ||
        article.title != field(3) || article.abstract != field(4)) {
      throw ParseError("records", row.line,
                       "article '" + id + "' disagrees with its earlier rows");
    }
    article.authors.push_back(std::move(author));
  }
  return result;
}

const nlohmann::json& require(const nlohmann::json& object, const char* name,
                              const std::string& where) {
  const auto it = object.find(name);
  if (it == object.end()) throw SchemaError(where + ": missing field '" + name + "'");
  return *it;
}

std::string string_field(const nlohmann::json& object, const char* name, const std::string& where,
                         bool required = true) {
  const auto it = object.find(name);
  if (it == object.end() || it->is_null()) {
    if (required) throw SchemaError(where + ": missing field '" + name + "'");
    return {};
  }
  if (!it->is_string()) throw ParseError("records", 0, where + ": field '" + name + "' is not a string");
  return it->get<std::string>();
}

IngestResult parse_json(const std::string& content, const IngestOptions& options) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(content);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("records", 0, std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_array()) throw SchemaError("top level must be an array of articles");

  IngestResult result;
  std::unordered_set<std::string> seen;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const auto& obj = doc[i];
    const std::string where = "article #" + std::to_string(i + 1);
    if (!obj.is_object()) throw ParseError("records", 0, where + ": not an object");

    ArticleRecord article;
    article.article_id = text::trim(string_field(obj, "article_id", where));
    if (article.article_id.empty()) throw ParseError("records", 0, where + ": empty article_id");
    if (!seen.insert(article.article_id).second)
      throw ParseError("records", 0, where + ": duplicate article_id '" + article.article_id + "'");
    article.conference = text::trim(string_field(obj, "conference", where));
    article.title = string_field(obj, "title", where);
    article.abstract = string_field(obj, "abstract", where, false);

    const auto& year = require(obj, "year", where);
    std::optional<int> parsed;
    if (year.is_number_integer()) parsed = year.get<int>();
    else if (year.is_string()) parsed = parse_year(year.get<std::string>());
    if (!parsed) throw ParseError("records", 0, where + ": invalid year " + year.dump());
    article.year = *parsed;

    const auto& authors = require(obj, "authors", where);
    if (!authors.is_array() || authors.empty())
      throw ParseError("records", 0, where + ": authors must be a non-empty array");
    for (const auto& a : authors) {
      if (!a.is_object()) throw ParseError("records", 0, where + ": author is not an object");
      article.authors.push_back({string_field(a, "given", where), string_field(a, "surname", where),
                                 text::trim(string_field(a, "affiliation", where, false)),
                                 text::trim(string_field(a, "country", where, false))});
    }

    if (!options.years.contains(article.year)) {
      result.warnings.push_back(range_warning(where, article.year, options.years));
      continue;
    }
    result.articles.push_back(std::move(article));
  }
  return result;
}

}  // namespace

IngestResult parse_articles(const std::string& content, InputFormat format,
                            const IngestOptions& options) {
  return format == InputFormat::json ? parse_json(content, options) : parse_csv(content, options);
}

IngestResult ingest_articles(const std::filesystem::path& path, InputFormat format,
                             const IngestOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("records", 0, "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_articles(buffer.str(), format, options);
}

Corpus build_corpus(std::vector<ArticleRecord> articles, const std::string& conference,
                    const CorpusOptions& options) {
  Corpus corpus;
  corpus.conference = conference;
  corpus.years = options.years;

  std::sort(articles.begin(), articles.end(),
            [](const ArticleRecord& a, const ArticleRecord& b) { return a.article_id < b.article_id; });
  for (std::size_t i = 0; i < articles.size(); ++i) {
    const auto& article = articles[i];
    if (article.conference != conference)
      throw MixedConference("article '" + article.article_id + "' belongs to '" +
                            article.conference + "', expected '" + conference + "'");
    if (i > 0 && articles[i - 1].article_id == article.article_id)
      throw InvalidCorpus("duplicate article_id '" + article.article_id + "'");
    if (!options.years.contains(article.year))
      throw InvalidCorpus("article '" + article.article_id + "' has year " +
                          std::to_string(article.year) + " outside the corpus range");
    if (article.authors.empty())
      throw InvalidCorpus("article '" + article.article_id + "' has no authors");
  }

  // (year, article index) of the record each profile's display fields came from.
  std::map<AuthorKey, std::pair<int, std::size_t>> latest;
  std::set<std::pair<std::string, std::string>> name_rows;

  for (std::size_t i = 0; i < articles.size(); ++i) {
    const auto& article = articles[i];
    std::set<AuthorKey> counted;
    for (const auto& entry : article.authors) {
      const AuthorKey key = author_key(entry, options.strict);
      name_rows.emplace(entry.display_name(), entry.affiliation);

      auto [it, inserted] = corpus.authors.try_emplace(key);
      AuthorProfile& profile = it->second;
      if (inserted) {
        profile.key = key;
        for (int y = options.years.first; y <= options.years.last; ++y) profile.year_counts[y] = 0;
      }
      if (!entry.affiliation.empty()) {
        auto pos = std::lower_bound(profile.affiliations.begin(), profile.affiliations.end(),
                                    entry.affiliation);
        if (pos == profile.affiliations.end() || *pos != entry.affiliation)
          profile.affiliations.insert(pos, entry.affiliation);
      }
      if (!counted.insert(key).second) continue;  // listed twice on one article
      ++profile.year_counts[article.year];

      // Articles are visited in id order, so a later article wins a year tie.
      const auto stamp = std::make_pair(article.year, i);
      auto [lit, fresh] = latest.try_emplace(key, stamp);
      if (fresh || stamp > lit->second) {
        lit->second = stamp;
        profile.display_name = entry.display_name();
        profile.affiliation = entry.affiliation;
        profile.country = entry.country;
      }
    }
  }

  corpus.articles = std::move(articles);
  auto& stats = corpus.dedup_stats;
  stats.raw_name_rows = name_rows.size();
  // Strict keys can split one name row across countries.
  stats.merged_rows = stats.raw_name_rows > corpus.authors.size()
                          ? stats.raw_name_rows - corpus.authors.size()
                          : 0;
  stats.duplicate_fraction =
      stats.raw_name_rows ? static_cast<double>(stats.merged_rows) / static_cast<double>(stats.raw_name_rows)
                          : 0.0;
  return corpus;
}

std::vector<AuthorKey> country_collisions(const std::vector<ArticleRecord>& articles) {
  std::map<AuthorKey, std::set<std::string>> countries;
  for (const auto& article : articles)
    for (const auto& entry : article.authors)
      countries[normalize_name(entry.given_names, entry.surname)].insert(text::fold(entry.country));
  std::vector<AuthorKey> out;
  for (const auto& [key, seen] : countries)
    if (seen.size() > 1) out.push_back(key);
  return out;
}

}  // namespace biblio
