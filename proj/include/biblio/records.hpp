#pragma once

#include <compare>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace biblio {

struct AuthorEntry {
  std::string given_names;
  std::string surname;
  std::string affiliation;
  std::string country;

  std::string display_name() const;
  bool operator==(const AuthorEntry&) const = default;
};

struct ArticleRecord {
  std::string article_id;
  std::string conference;
  int year = 0;
  std::string title;
  std::string abstract;
  std::vector<AuthorEntry> authors;  // publication order

  bool operator==(const ArticleRecord&) const = default;
};

// Identity of an author within one conference: lowercase, diacritic-free
// first and last name. `qualifier` stays empty unless strict mode partitions
// keys by country.
struct AuthorKey {
  std::string first;
  std::string last;
  std::string qualifier;

  std::string to_string() const;
  auto operator<=>(const AuthorKey&) const = default;
};

struct YearRange {
  int first = 2010;
  int last = 2024;

  bool contains(int year) const { return year >= first && year <= last; }
  int size() const { return last - first + 1; }
  bool operator==(const YearRange&) const = default;
};

struct AuthorProfile {
  AuthorKey key;
  std::string display_name;             // from the most recent record
  std::string affiliation;              // most recent affiliation
  std::vector<std::string> affiliations;  // every affiliation seen, sorted
  std::string country;                  // from the most recent record
  std::map<int, int> year_counts;       // one entry per year in the range
  std::set<std::string> groups;         // "scheme:label" tags

  int total() const;
  bool operator==(const AuthorProfile&) const = default;
};

struct DedupStats {
  std::size_t raw_name_rows = 0;
  std::size_t merged_rows = 0;
  double duplicate_fraction = 0.0;

  bool operator==(const DedupStats&) const = default;
};

struct Corpus {
  std::string conference;
  YearRange years;
  std::vector<ArticleRecord> articles;  // sorted by article_id
  std::map<AuthorKey, AuthorProfile> authors;
  DedupStats dedup_stats;

  bool operator==(const Corpus&) const = default;
};

enum class InputFormat { csv, json };

struct IngestOptions {
  YearRange years;
};

struct IngestResult {
  std::vector<ArticleRecord> articles;
  std::vector<std::string> warnings;  // rejected rows, one message each
};

struct CorpusOptions {
  YearRange years;
  bool strict = false;  // partition keys by country to surface collisions
};

// Throws EmptyName when either part is blank after trimming.
AuthorKey normalize_name(const std::string& given_names, const std::string& surname);

AuthorKey author_key(const AuthorEntry& author, bool strict);

// Column order of the CSV interchange format.
inline constexpr const char* kArticleColumns[] = {
    "article_id", "conference", "year",        "title",  "abstract",
    "author_given", "author_surname", "affiliation", "country"};

IngestResult parse_articles(const std::string& content, InputFormat format,
                            const IngestOptions& options = {});

IngestResult ingest_articles(const std::filesystem::path& path, InputFormat format,
                             const IngestOptions& options = {});

// Infers the format from the file extension (.json, otherwise csv).
InputFormat format_for(const std::filesystem::path& path);

// Merges authors by key and tallies distinct articles per year.
// Throws MixedConference if an article belongs to another conference and
// InvalidCorpus on duplicate article ids or out-of-range years.
Corpus build_corpus(std::vector<ArticleRecord> articles, const std::string& conference,
                    const CorpusOptions& options = {});

// Keys whose records carry more than one country; candidates for same-name
// collisions between different people.
std::vector<AuthorKey> country_collisions(const std::vector<ArticleRecord>& articles);

}  // namespace biblio
