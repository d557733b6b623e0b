#include "doctest.h"

#include <random>

#include "biblio/error.hpp"
#include "biblio/grouping.hpp"
#include "helpers.hpp"

using namespace biblio;
using namespace biblio::grouping;
using testing::article;
using testing::person;

namespace {

// Four single-author profiles: two US, one Japanese, one Canadian.
Corpus small_corpus() {
  return build_corpus(
      {article("A", 2010, {person("Ann", "Lee", "USA", "Stanford University, Stanford, CA, USA")}),
       article("B", 2013, {person("Bob", "Ray", "", "Carnegie Mellon University, Pittsburgh, PA, USA")}),
       article("C", 2011, {person("Cy", "Ito", "Japan", "Osaka University, Osaka, Japan")}),
       article("D", 2012, {person("Di", "Roy", "canada", "University of Waterloo, Waterloo, Canada")}),
       article("E", 2013, {person("Di", "Roy", "canada", "University of Waterloo, Waterloo, Canada")})},
      "HRI");
}

}  // namespace

TEST_CASE("parse_rules") {
  const auto rules = parse_rules("pattern_or_country,label,tier\n# note\nUSA,United States,top5\nCMU,top\n");
  REQUIRE(rules.size() == 2);
  CHECK(rules[0].pattern == "USA");
  CHECK(rules[0].tier == "top5");
  CHECK(rules[1].label == "top");
  CHECK(rules[1].tier.empty());
  CHECK_THROWS_AS(parse_rules("pattern,label\n"), EmptyMapping);
  CHECK_THROWS_AS(parse_rules("onlyone\n"), ParseError);
  CHECK_THROWS_AS(parse_rules("a,b,c,d\n"), ParseError);
}

TEST_CASE("scheme names") {
  CHECK(scheme_from_string("country") == SchemeName::country);
  CHECK(std::string(to_string(SchemeName::ranking_top10)) == "ranking_top10");
  CHECK_THROWS_AS(scheme_from_string("planet"), ConfigError);
}

TEST_CASE("country labels use aliases and the affiliation fallback") {
  const auto rules = default_country_rules();
  CHECK(country_label("USA", "", rules) == "United States");
  CHECK(country_label("usa", "", rules) == "United States");
  CHECK(country_label("Türkiye", "", rules) == "Turkey");
  CHECK(country_label("Turkiye", "", rules) == "Turkey");
  CHECK(country_label("", "KAIST, Daejeon, Korea, Republic of", rules) == "unknown");
  CHECK(country_label("", "KAIST, Daejeon, South Korea", rules) == "South Korea");
  CHECK(country_label("Italy", "", rules) == "unknown");
  // exact match, not substring: "US" must not claim "Russia"
  CHECK(country_label("Russia", "", rules) == "unknown");
}

TEST_CASE("country assignment and tiers") {
  const auto corpus = small_corpus();
  const auto scheme = assign(corpus, SchemeName::country, default_country_rules());
  CHECK(scheme.membership.at(normalize_name("Ann", "Lee")) == "United States");
  CHECK(scheme.membership.at(normalize_name("Bob", "Ray")) == "United States");
  CHECK(scheme.membership.at(normalize_name("Di", "Roy")) == "Canada");
  CHECK(scheme.tier_map.at("Japan") == kTop5);
  CHECK(scheme.tier_map.at("Canada") == kNonTop5);
  CHECK(std::is_sorted(scheme.label_universe.begin(), scheme.label_universe.end()));
  CHECK(std::count(scheme.label_universe.begin(), scheme.label_universe.end(), "unknown") == 1);
  CHECK(scheme.members(corpus, "United States").size() == 2);
  CHECK(scheme.members(corpus, "Turkey").empty());
}

TEST_CASE("conflicting tiers for one label are rejected") {
  const auto corpus = small_corpus();
  CHECK_THROWS_AS(assign(corpus, SchemeName::country, parse_rules("USA,US,top5\nUnited States,US,non_top5\n")),
                  ParseError);
}

TEST_CASE("institution matching: longest pattern wins regardless of order") {
  const auto corpus = small_corpus();
  std::vector<MappingRule> rules{{"university", "generic", ""},
                                 {"carnegie mellon university", "top", ""},
                                 {"STANFORD", "top", ""}};
  const auto a = assign(corpus, SchemeName::institution_type, rules);
  std::reverse(rules.begin(), rules.end());
  const auto b = assign(corpus, SchemeName::institution_type, rules);
  CHECK(a.membership == b.membership);
  CHECK(a.membership.at(normalize_name("Bob", "Ray")) == "top");
  // "university" is longer than "stanford"
  CHECK(a.membership.at(normalize_name("Ann", "Lee")) == "generic");
  CHECK(a.membership.at(normalize_name("Cy", "Ito")) == "generic");
  const auto none = assign(corpus, SchemeName::ranking_top10, {{"ETH Zurich", "top10", ""}});
  for (const auto& [key, label] : none.membership) CHECK(label == "unknown");
}

TEST_CASE("tagging and group gini") {
  auto corpus = small_corpus();
  const auto scheme = assign(corpus, SchemeName::country, default_country_rules());
  tag_profiles(corpus, scheme);
  CHECK(corpus.authors.at(normalize_name("Cy", "Ito")).groups.count("country:Japan") == 1);

  const metrics::WindowSpec spec;
  const auto japan = group_gini(corpus, scheme, "Japan", spec);
  CHECK(japan.level == metrics::Level::group);
  CHECK(japan.population_size == 12);
  CHECK(japan.value == doctest::Approx(0.8333).epsilon(1e-4));
  CHECK_THROWS_AS(group_gini(corpus, scheme, "Atlantis", spec), UnknownLabel);
  CHECK_THROWS_AS(group_gini(corpus, scheme, "Turkey", spec), EmptyGroup);
}

TEST_CASE("rpd report complements") {
  const auto corpus = small_corpus();
  const metrics::WindowSpec spec;
  const auto scheme = assign(corpus, SchemeName::country, default_country_rules());
  const auto report = rpd_report(corpus, scheme, spec);

  auto row = [&](const std::string& label) {
    for (const auto& r : report.rows)
      if (r.label == label) return r;
    FAIL("missing row " << label);
    return RPDRow{};
  };

  // Tiered labels compare against the rest of their tier.
  const auto us = row("United States");
  CHECK(us.group_size == 2);
  CHECK(us.complement_size == 1);  // Japan
  const auto canada = row("Canada");
  CHECK(canada.complement_size == 0);
  CHECK_FALSE(canada.rpd_percent.has_value());
  CHECK_FALSE(row("Turkey").group_gini.has_value());

  const auto top = row("tier:top5");
  CHECK(top.tier_row);
  CHECK(top.group_size == 3);
  CHECK(top.complement_size == 1);
  REQUIRE(top.rpd_percent.has_value());
  const auto members = scheme.members(corpus, "Canada");
  const double canada_gini = metrics::population_gini(members, spec, metrics::Basis::pooled, metrics::Level::group).value;
  CHECK(*top.complement_gini == doctest::Approx(canada_gini));
  CHECK(*top.rpd_percent == doctest::Approx(metrics::rpd(*top.group_gini, canada_gini)));
  CHECK(*row("tier:non_top5").rpd_percent == doctest::Approx(*top.rpd_percent));
}

TEST_CASE("institution rpd compares against every other author") {
  const auto corpus = small_corpus();
  const auto scheme = assign(corpus, SchemeName::institution_type, {{"Stanford", "top", ""}});
  const auto report = rpd_report(corpus, scheme, metrics::WindowSpec{});
  REQUIRE(report.rows.size() == 2);
  CHECK(report.rows[0].label == "top");
  CHECK(report.rows[0].group_size == 1);
  CHECK(report.rows[0].complement_size == 3);
  CHECK(report.rows[1].label == "unknown");
  CHECK(report.rows[1].complement_size == 1);
  CHECK(*report.rows[0].rpd_percent == doctest::Approx(*report.rows[1].rpd_percent));
}

TEST_CASE("bundled grouping files load") {
  const auto dir = testing::source_dir() / "data/grouping";
  const auto country = read_rules(dir / "country_tiers.csv");
  CHECK(country.size() == default_country_rules().size());
  for (std::size_t i = 0; i < country.size(); ++i) {
    CHECK(country[i].pattern == default_country_rules()[i].pattern);
    CHECK(country[i].label == default_country_rules()[i].label);
    CHECK(country[i].tier == default_country_rules()[i].tier);
  }
  CHECK_FALSE(read_rules(dir / "institution_type.csv").empty());
  CHECK_FALSE(read_rules(dir / "ranking_top10.csv").empty());
}

TEST_CASE("labels partition the authors") {
  const auto articles =
      ingest_articles(testing::source_dir() / "data/fixtures/hri_fixture.csv", InputFormat::csv).articles;
  const auto corpus = build_corpus(articles, "HRI");
  const auto dir = testing::source_dir() / "data/grouping";
  for (const auto& [name, file] : std::vector<std::pair<SchemeName, std::string>>{
           {SchemeName::country, "country_tiers.csv"},
           {SchemeName::institution_type, "institution_type.csv"},
           {SchemeName::ranking_top10, "ranking_top10.csv"}}) {
    const auto scheme = load_grouping(dir / file, name, corpus);
    std::size_t sum = 0;
    for (const auto& label : scheme.label_universe) sum += scheme.members(corpus, label).size();
    CHECK(sum == corpus.authors.size());
  }
}

TEST_CASE("rpd report ignores rule order") {
  const auto corpus = small_corpus();
  auto rules = default_country_rules();
  const auto a = rpd_report(corpus, assign(corpus, SchemeName::country, rules), metrics::WindowSpec{});
  std::mt19937_64 rng(1);
  std::shuffle(rules.begin(), rules.end(), rng);
  const auto b = rpd_report(corpus, assign(corpus, SchemeName::country, rules), metrics::WindowSpec{});
  REQUIRE(a.rows.size() == b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    CHECK(a.rows[i].label == b.rows[i].label);
    CHECK(a.rows[i].group_gini == b.rows[i].group_gini);
    CHECK(a.rows[i].rpd_percent == b.rows[i].rpd_percent);
  }
}
