#include "biblio/grouping.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "biblio/csv.hpp"
#include "biblio/error.hpp"
#include "biblio/text.hpp"

namespace biblio::grouping {

const char* to_string(SchemeName name) {
  switch (name) {
    case SchemeName::institution_type: return "institution_type";
    case SchemeName::ranking_top10: return "ranking_top10";
    case SchemeName::country: return "country";
  }
  return "?";
}

SchemeName scheme_from_string(const std::string& name) {
  for (const auto s : {SchemeName::institution_type, SchemeName::ranking_top10, SchemeName::country})
    if (name == to_string(s)) return s;
  throw ConfigError("unknown grouping scheme '" + name + "'");
}

std::vector<MappingRule> parse_rules(const std::string& content) {
  std::vector<MappingRule> rules;
  const auto rows = csv::parse(content, "grouping");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& row = rows[i];
    if (i == 0 && !row.fields.empty() && text::lower(text::trim(row.fields[0])).starts_with("pattern"))
      continue;
    if (row.fields.size() < 2 || row.fields.size() > 3)
      throw ParseError("grouping", row.line, "expected pattern_or_country,label[,tier]");
    MappingRule rule{text::trim(row.fields[0]), text::trim(row.fields[1]),
                     row.fields.size() == 3 ? text::trim(row.fields[2]) : std::string()};
    if (rule.pattern.empty() || rule.label.empty())
      throw ParseError("grouping", row.line, "pattern and label must be non-empty");
    rules.push_back(std::move(rule));
  }
  if (rules.empty()) throw EmptyMapping("grouping file has no rules");
  return rules;
}

std::vector<MappingRule> read_rules(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("grouping", 0, "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_rules(buffer.str());
}

namespace {

// Longest pattern first, then the smallest label: independent of rule order.
bool better(const MappingRule& candidate, const MappingRule* current) {
  if (!current) return true;
  const auto a = text::fold(candidate.pattern).size();
  const auto b = text::fold(current->pattern).size();
  if (a != b) return a > b;
  return candidate.label < current->label;
}

std::string institution_label(const AuthorProfile& profile, const std::vector<MappingRule>& rules) {
  const std::string affiliation = text::fold(profile.affiliation);
  const MappingRule* match = nullptr;
  for (const auto& rule : rules) {
    if (affiliation.find(text::fold(rule.pattern)) != std::string::npos && better(rule, match))
      match = &rule;
  }
  return match ? match->label : kUnknown;
}

std::string effective_country(const std::string& country, const std::string& affiliation) {
  std::string trimmed = text::trim(country);
  if (!trimmed.empty()) return trimmed;
  const auto comma = affiliation.rfind(',');
  return text::trim(comma == std::string::npos ? affiliation : affiliation.substr(comma + 1));
}

}  // namespace

std::string country_label(const AuthorProfile& profile, const std::vector<MappingRule>& rules) {
  return country_label(profile.country, profile.affiliation, rules);
}

std::string country_label(const std::string& country_field, const std::string& affiliation,
                          const std::vector<MappingRule>& rules) {
  const std::string country = text::fold(effective_country(country_field, affiliation));
  if (country.empty()) return kUnknown;
  const MappingRule* match = nullptr;
  for (const auto& rule : rules)
    if (text::fold(rule.pattern) == country && better(rule, match)) match = &rule;
  return match ? match->label : kUnknown;
}

GroupingScheme assign(const Corpus& corpus, SchemeName name, std::vector<MappingRule> rules) {
  if (rules.empty()) throw EmptyMapping("no grouping rules");
  GroupingScheme scheme;
  scheme.name = name;

  std::set<std::string> labels{kUnknown};
  for (const auto& rule : rules) {
    labels.insert(rule.label);
    if (name != SchemeName::country || rule.tier.empty()) continue;
    const auto [it, inserted] = scheme.tier_map.emplace(rule.label, rule.tier);
    if (!inserted && it->second != rule.tier)
      throw ParseError("grouping", 0, "label '" + rule.label + "' has conflicting tiers");
  }
  scheme.label_universe.assign(labels.begin(), labels.end());
  scheme.rules = std::move(rules);

  for (const auto& [key, profile] : corpus.authors) {
    scheme.membership[key] = name == SchemeName::country ? country_label(profile, scheme.rules)
                                                         : institution_label(profile, scheme.rules);
  }
  return scheme;
}

GroupingScheme load_grouping(const std::filesystem::path& path, SchemeName name, const Corpus& corpus) {
  return assign(corpus, name, read_rules(path));
}

std::vector<const AuthorProfile*> GroupingScheme::members(const Corpus& corpus,
                                                          const std::string& label) const {
  std::vector<const AuthorProfile*> out;
  for (const auto& [key, profile] : corpus.authors) {
    const auto it = membership.find(key);
    const std::string& assigned = it == membership.end() ? std::string(kUnknown) : it->second;
    if (assigned == label) out.push_back(&profile);
  }
  return out;
}

void tag_profiles(Corpus& corpus, const GroupingScheme& scheme) {
  for (auto& [key, profile] : corpus.authors) {
    const auto it = scheme.membership.find(key);
    profile.groups.insert(std::string(to_string(scheme.name)) + ":" +
                          (it == scheme.membership.end() ? kUnknown : it->second));
  }
}

metrics::GiniResult group_gini(const Corpus& corpus, const GroupingScheme& scheme,
                               const std::string& label, const metrics::WindowSpec& spec,
                               metrics::Basis basis) {
  if (!std::binary_search(scheme.label_universe.begin(), scheme.label_universe.end(), label))
    throw UnknownLabel("label '" + label + "' is not part of scheme " + to_string(scheme.name));
  const auto group = scheme.members(corpus, label);
  if (group.empty()) throw EmptyGroup("no authors labelled '" + label + "'");
  return metrics::population_gini(group, spec, basis, metrics::Level::group);
}

namespace {

std::optional<double> maybe_gini(const std::vector<const AuthorProfile*>& group,
                                 const metrics::WindowSpec& spec, metrics::Basis basis) {
  if (group.empty()) return std::nullopt;
  return metrics::population_gini(group, spec, basis, metrics::Level::group).value;
}

RPDRow compare(std::string label, std::string tier, const std::vector<const AuthorProfile*>& group,
               const std::vector<const AuthorProfile*>& complement, const metrics::WindowSpec& spec,
               metrics::Basis basis) {
  RPDRow row;
  row.label = std::move(label);
  row.tier = std::move(tier);
  row.group_size = group.size();
  row.complement_size = complement.size();
  row.group_gini = maybe_gini(group, spec, basis);
  row.complement_gini = maybe_gini(complement, spec, basis);
  if (row.group_gini && row.complement_gini)
    row.rpd_percent = metrics::try_rpd(*row.group_gini, *row.complement_gini);
  return row;
}

}  // namespace

RPDReport rpd_report(const Corpus& corpus, const GroupingScheme& scheme,
                     const metrics::WindowSpec& spec, metrics::Basis basis) {
  RPDReport report{scheme.name, {}};

  auto label_of = [&](const AuthorKey& key) -> std::string {
    const auto it = scheme.membership.find(key);
    return it == scheme.membership.end() ? kUnknown : it->second;
  };
  auto tier_of = [&](const std::string& label) -> std::string {
    const auto it = scheme.tier_map.find(label);
    return it == scheme.tier_map.end() ? std::string() : it->second;
  };

  for (const auto& label : scheme.label_universe) {
    const std::string tier = tier_of(label);
    std::vector<const AuthorProfile*> group;
    std::vector<const AuthorProfile*> complement;
    for (const auto& [key, profile] : corpus.authors) {
      const std::string assigned = label_of(key);
      if (assigned == label) group.push_back(&profile);
      else if (tier.empty() || tier_of(assigned) == tier) complement.push_back(&profile);
    }
    report.rows.push_back(compare(label, tier, group, complement, spec, basis));
  }

  if (scheme.name == SchemeName::country) {
    std::set<std::string> tiers;
    for (const auto& [label, tier] : scheme.tier_map) tiers.insert(tier);
    if (tiers.size() >= 2) {
      for (const auto& tier : tiers) {
        std::vector<const AuthorProfile*> group;
        std::vector<const AuthorProfile*> complement;
        for (const auto& [key, profile] : corpus.authors) {
          const std::string t = tier_of(label_of(key));
          if (t == tier) group.push_back(&profile);
          else if (!t.empty()) complement.push_back(&profile);
        }
        auto row = compare("tier:" + tier, tier, group, complement, spec, basis);
        row.tier_row = true;
        report.rows.push_back(std::move(row));
      }
    }
  }
  return report;
}

std::vector<MappingRule> default_country_rules() {
  return {
      {"United States", "United States", kTop5},
      {"USA", "United States", kTop5},
      {"United States of America", "United States", kTop5},
      {"US", "United States", kTop5},
      {"China", "China", kTop5},
      {"People's Republic of China", "China", kTop5},
      {"PR China", "China", kTop5},
      {"P.R. China", "China", kTop5},
      {"Japan", "Japan", kTop5},
      {"Germany", "Germany", kTop5},
      {"South Korea", "South Korea", kTop5},
      {"Korea", "South Korea", kTop5},
      {"Republic of Korea", "South Korea", kTop5},
      {"Korea, Republic of", "South Korea", kTop5},
      {"Australia", "Australia", kNonTop5},
      {"Canada", "Canada", kNonTop5},
      {"France", "France", kNonTop5},
      {"Taiwan", "Taiwan", kNonTop5},
      {"Turkey", "Turkey", kNonTop5},
      {"Türkiye", "Turkey", kNonTop5},
  };
}

}  // namespace biblio::grouping
