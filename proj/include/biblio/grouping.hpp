#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "biblio/metrics.hpp"
#include "biblio/records.hpp"

namespace biblio::grouping {

enum class SchemeName { institution_type, ranking_top10, country };

const char* to_string(SchemeName name);
// Throws ConfigError for an unrecognized name.
SchemeName scheme_from_string(const std::string& name);

inline constexpr const char* kUnknown = "unknown";
inline constexpr const char* kTop5 = "top5";
inline constexpr const char* kNonTop5 = "non_top5";

// One line of a grouping file: `pattern_or_country,label,tier`.
struct MappingRule {
  std::string pattern;  // affiliation substring, or country name/alias
  std::string label;
  std::string tier;     // country scheme only; may be empty
};

struct GroupingScheme {
  SchemeName name = SchemeName::country;
  std::vector<MappingRule> rules;
  std::map<AuthorKey, std::string> membership;
  std::vector<std::string> label_universe;  // sorted, always includes "unknown"
  std::map<std::string, std::string> tier_map;  // label -> tier

  // Members of `label`, in key order.
  std::vector<const AuthorProfile*> members(const Corpus& corpus, const std::string& label) const;
};

// Parses a grouping file. Throws ParseError for malformed lines and
// EmptyMapping when no rule remains. An optional header line starting with
// "pattern" is skipped.
std::vector<MappingRule> parse_rules(const std::string& content);
std::vector<MappingRule> read_rules(const std::filesystem::path& path);

// Institution schemes match the author's most recent affiliation by
// case-insensitive substring; the longest matching pattern wins, then the
// smallest label, so rule order never matters. The country scheme matches the
// profile country (falling back to the last comma field of the affiliation)
// case-insensitively against the rule patterns. Unmatched authors get "unknown".
GroupingScheme assign(const Corpus& corpus, SchemeName name, std::vector<MappingRule> rules);

GroupingScheme load_grouping(const std::filesystem::path& path, SchemeName name, const Corpus& corpus);

// Country label for a country field (falling back to the last comma field of
// the affiliation when blank), or "unknown".
std::string country_label(const std::string& country, const std::string& affiliation,
                          const std::vector<MappingRule>& rules);
std::string country_label(const AuthorProfile& profile, const std::vector<MappingRule>& rules);

// Adds "scheme:label" tags to every profile in the corpus.
void tag_profiles(Corpus& corpus, const GroupingScheme& scheme);

// Throws UnknownLabel for a label outside the universe, EmptyGroup when no
// author carries it.
metrics::GiniResult group_gini(const Corpus& corpus, const GroupingScheme& scheme,
                               const std::string& label, const metrics::WindowSpec& spec,
                               metrics::Basis basis = metrics::Basis::pooled);

struct RPDRow {
  std::string label;
  std::string tier;               // country scheme; "tier:<name>" rows compare whole tiers
  std::optional<double> group_gini;
  std::optional<double> complement_gini;
  std::optional<double> rpd_percent;
  std::size_t group_size = 0;
  std::size_t complement_size = 0;
  bool tier_row = false;
};

struct RPDReport {
  SchemeName scheme = SchemeName::country;
  std::vector<RPDRow> rows;
};

// Each label against its complement. Institution schemes: the complement is
// every other corpus author. Country scheme: a tiered label is compared with
// the rest of its tier, an untiered one with every other author; tier rows
// then compare each tier with the union of the other tiers. Rows whose group
// or complement is empty, or whose Ginis are both zero, carry no RPD.
RPDReport rpd_report(const Corpus& corpus, const GroupingScheme& scheme,
                     const metrics::WindowSpec& spec, metrics::Basis basis = metrics::Basis::pooled);

// Default country tiers: the five highest research-expenditure countries and
// a comparison set of five others.
std::vector<MappingRule> default_country_rules();

}  // namespace biblio::grouping
