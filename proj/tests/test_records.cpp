#include "doctest.h"

#include <random>

#include "biblio/error.hpp"
#include "biblio/records.hpp"
#include "helpers.hpp"

using namespace biblio;
using testing::article;
using testing::person;

TEST_CASE("normalize_name folds accents, keeps first given token") {
  const auto key = normalize_name("José A.", "García-López");
  CHECK(key.first == "jose");
  CHECK(key.last == "garcia-lopez");
  CHECK(key.qualifier.empty());
  CHECK(normalize_name("Jose", "Garcia-Lopez") == key);
  CHECK(normalize_name("  RAPHAËLLE ", "Roy") == normalize_name("Raphaelle", "roy"));
  CHECK(normalize_name("Anna", "van der Berg").last == "van-der-berg");
  CHECK(normalize_name("J.", "Smith").first == "j");
  CHECK(normalize_name("Ana", "Kim").to_string().find("ana") != std::string::npos);
}

TEST_CASE("normalize_name rejects blank parts") {
  CHECK_THROWS_AS(normalize_name("", "Kim"), EmptyName);
  CHECK_THROWS_AS(normalize_name("Ana", "   "), EmptyName);
  CHECK_THROWS_AS(normalize_name("...", "Kim"), EmptyName);
}

TEST_CASE("strict keys carry the country") {
  const auto a = author_key(person("Wei", "Wang", "China"), true);
  const auto b = author_key(person("Wei", "Wang", "United States"), true);
  CHECK(a.qualifier == "china");
  CHECK(b.qualifier == "united-states");
  CHECK(a != b);
  CHECK(author_key(person("Wei", "Wang", "China"), false) == author_key(person("Wei", "Wang", "USA"), false));
}

TEST_CASE("csv ingest groups rows into articles and warns on out-of-range years") {
  const auto result = ingest_articles(testing::source_dir() / "tests/data/small.csv", InputFormat::csv);
  REQUIRE(result.articles.size() == 2);
  CHECK(result.articles[0].article_id == "HRI-2013-001");
  CHECK(result.articles[0].authors.size() == 2);
  CHECK(result.articles[0].authors[0].given_names == "José A.");
  CHECK(result.articles[1].abstract.empty());
  REQUIRE(result.warnings.size() == 1);
  CHECK(result.warnings[0].find("2009") != std::string::npos);
}

TEST_CASE("json and csv ingest agree") {
  const auto dir = testing::source_dir() / "tests/data";
  const auto csv = ingest_articles(dir / "small.csv", format_for(dir / "small.csv"));
  const auto json = ingest_articles(dir / "small.json", format_for(dir / "small.json"));
  CHECK(format_for("x.JSON") == InputFormat::json);
  CHECK(format_for("x.csv") == InputFormat::csv);
  CHECK(csv.articles == json.articles);
  CHECK(json.warnings.size() == 1);
}

TEST_CASE("csv schema and row errors") {
  CHECK_THROWS_AS(parse_articles("", InputFormat::csv), SchemaError);
  try {
    parse_articles("article_id,conference,year,title,abstract,author_given,author_surname,affiliation\n",
                   InputFormat::csv);
    FAIL("expected SchemaError");
  } catch (const SchemaError& e) {
    CHECK(std::string(e.what()).find("country") != std::string::npos);
  }
  const std::string header =
      "article_id,conference,year,title,abstract,author_given,author_surname,affiliation,country\n";
  try {
    parse_articles(header + "A,HRI,2013,t,,x,y,z,USA\nB,HRI,20x3,t,,x,y,z,USA\n", InputFormat::csv);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  CHECK_THROWS_AS(parse_articles(header + "A,HRI,2013,t\n", InputFormat::csv), ParseError);
  CHECK_THROWS_AS(parse_articles(header + ",HRI,2013,t,,x,y,z,USA\n", InputFormat::csv), ParseError);
  CHECK_THROWS_AS(parse_articles(header + "A,HRI,2013,t,,x,y,z,USA\nA,HRI,2014,t,,p,q,z,USA\n", InputFormat::csv),
                  ParseError);
}

TEST_CASE("json errors") {
  CHECK_THROWS_AS(parse_articles("{", InputFormat::json), ParseError);
  CHECK_THROWS_AS(parse_articles("{}", InputFormat::json), SchemaError);
  CHECK_THROWS_AS(parse_articles(R"([{"article_id":"A","conference":"HRI","year":2013,"title":"t"}])",
                                 InputFormat::json),
                  SchemaError);
  CHECK_THROWS_AS(parse_articles(R"([{"article_id":"A","conference":"HRI","year":"soon","title":"t",
                                      "authors":[{"given":"a","surname":"b"}]}])",
                                 InputFormat::json),
                  ParseError);
}

TEST_CASE("build_corpus merges accent variants and counts articles per year") {
  const auto result = ingest_articles(testing::source_dir() / "tests/data/small.csv", InputFormat::csv);
  const auto corpus = build_corpus(result.articles, "HRI");
  REQUIRE(corpus.authors.size() == 2);
  const auto& jose = corpus.authors.at(normalize_name("Jose", "Garcia-Lopez"));
  CHECK(jose.year_counts.size() == 15);
  CHECK(jose.year_counts.at(2013) == 1);
  CHECK(jose.year_counts.at(2014) == 1);
  CHECK(jose.total() == 2);
  // The 2014 record is the most recent one.
  CHECK(jose.display_name == "Jose Garcia-Lopez");
  CHECK(jose.affiliation == "Sorbonne Universite, Paris, France");
  CHECK(jose.affiliations.size() == 2);
  CHECK(corpus.dedup_stats.raw_name_rows == 3);
  CHECK(corpus.dedup_stats.merged_rows == 1);
  CHECK(corpus.dedup_stats.duplicate_fraction == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("an author listed twice on one article counts once") {
  const auto corpus = build_corpus({article("A", 2012, {person("Ana", "Kim"), person("Ána", "KIM")})}, "HRI");
  REQUIRE(corpus.authors.size() == 1);
  CHECK(corpus.authors.begin()->second.total() == 1);
}

TEST_CASE("articles come out sorted by id and input order does not matter") {
  std::vector<ArticleRecord> articles{article("B", 2012, {person("Ana", "Kim")}),
                                      article("A", 2012, {person("Ana", "Kim", "Japan")}),
                                      article("C", 2015, {person("Bo", "Li")})};
  auto reversed = articles;
  std::reverse(reversed.begin(), reversed.end());
  const auto a = build_corpus(articles, "HRI");
  const auto b = build_corpus(reversed, "HRI");
  CHECK(a == b);
  CHECK(a.articles.front().article_id == "A");
  // Same year: the later article id supplies the display fields.
  CHECK(a.authors.at(normalize_name("Ana", "Kim")).country == "USA");
}

TEST_CASE("build_corpus validation") {
  CHECK_THROWS_AS(build_corpus({article("A", 2012, {person("a", "b")}, "t", "", "RO-MAN")}, "HRI"),
                  MixedConference);
  CHECK_THROWS_AS(build_corpus({article("A", 2012, {person("a", "b")}), article("A", 2013, {person("c", "d")})}, "HRI"),
                  InvalidCorpus);
  CHECK_THROWS_AS(build_corpus({article("A", 2009, {person("a", "b")})}, "HRI"), InvalidCorpus);
  CHECK_THROWS_AS(build_corpus({article("A", 2012, {})}, "HRI"), InvalidCorpus);
}

TEST_CASE("strict mode splits same-name authors by country") {
  std::vector<ArticleRecord> articles{article("A", 2012, {person("Wei", "Wang", "China")}),
                                      article("B", 2013, {person("Wei", "Wang", "USA")})};
  CHECK(build_corpus(articles, "HRI").authors.size() == 1);
  CHECK(build_corpus(articles, "HRI", {{}, true}).authors.size() == 2);
  const auto collisions = country_collisions(articles);
  REQUIRE(collisions.size() == 1);
  CHECK(collisions[0] == normalize_name("Wei", "Wang"));
}

TEST_CASE("custom year range") {
  CorpusOptions options;
  options.years = {2015, 2020};
  const auto corpus = build_corpus({article("A", 2016, {person("a", "b")})}, "HRI", options);
  CHECK(corpus.authors.begin()->second.year_counts.size() == 6);
  CHECK_THROWS_AS(build_corpus({article("A", 2014, {person("a", "b")})}, "HRI", options), InvalidCorpus);
}

TEST_CASE("bundled fixture ingests cleanly") {
  const auto result =
      ingest_articles(testing::source_dir() / "data/fixtures/hri_fixture.csv", InputFormat::csv);
  CHECK(result.warnings.empty());
  const auto corpus = build_corpus(result.articles, "HRI");
  CHECK(corpus.articles.size() == 353);
  const auto& jose = corpus.authors.at(normalize_name("José", "García-López"));
  CHECK(jose.total() == 3);
}

TEST_CASE("normalize_name is idempotent") {
  for (const auto& [g, s] : std::vector<std::pair<std::string, std::string>>{
           {"José A.", "García-López"}, {"Anna", "van der Berg"}, {"RAPHAËLLE", "Roy"}, {"J.", "O'Neil"}}) {
    const auto once = normalize_name(g, s);
    CHECK(normalize_name(once.first, once.last) == once);
  }
}

TEST_CASE("fixture corpus properties") {
  auto articles =
      ingest_articles(testing::source_dir() / "data/fixtures/hri_fixture.csv", InputFormat::csv).articles;
  const auto corpus = build_corpus(articles, "HRI");
  long total = 0;
  for (const auto& [key, p] : corpus.authors) total += p.total();
  CHECK(total >= static_cast<long>(corpus.articles.size()));

  std::mt19937_64 rng(3);
  for (int i = 0; i < 3; ++i) {
    std::shuffle(articles.begin(), articles.end(), rng);
    CHECK(build_corpus(articles, "HRI") == corpus);
  }
}

TEST_CASE("single-author articles: counts sum to the article count") {
  const auto corpus = testing::corpus_of({{{2010, 2}, {2014, 1}}, {{2020, 3}}});
  long total = 0;
  for (const auto& [key, p] : corpus.authors) total += p.total();
  CHECK(total == static_cast<long>(corpus.articles.size()));
}
