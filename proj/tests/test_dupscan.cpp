#include "doctest.h"

#include <random>

#include "biblio/dupscan.hpp"
#include "biblio/embedding.hpp"
#include "biblio/error.hpp"
#include "helpers.hpp"

using namespace biblio;
using namespace biblio::dupscan;
using testing::article;
using testing::person;

TEST_CASE("author jaccard ignores order and accents") {
  const auto a = article("A", 2012, {person("José", "García"), person("Bo", "Li")});
  const auto b = article("B", 2013, {person("Bo", "Li"), person("Jose", "Garcia")});
  const auto c = article("C", 2013, {person("Bo", "Li"), person("Ann", "Lee")});
  CHECK(author_jaccard(a, b) == 1.0);
  CHECK(author_jaccard(a, c) == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("candidate pairs") {
  const auto corpus = build_corpus(testing::dup_corpus(), "HRI");
  CHECK(candidate_pairs(corpus) ==
        std::vector<std::pair<std::string, std::string>>{{"D03", "D11"}, {"D07", "D15"}});
  CHECK_THROWS_AS(candidate_pairs(corpus, 0.0), InvalidArgument);
  CHECK_THROWS_AS(candidate_pairs(corpus, 1.5), InvalidArgument);

  // partial overlap shows up once the Jaccard floor is lowered
  auto articles = testing::dup_corpus();
  articles[1].authors.push_back(articles[2].authors[0]);
  const auto loose = build_corpus(articles, "HRI");
  CHECK(candidate_pairs(loose).size() == 2);
  const auto pairs = candidate_pairs(loose, 0.25);  // one shared author out of four
  CHECK(pairs.size() == 3);
  CHECK(pairs[0] == std::pair<std::string, std::string>{"D01", "D02"});
}

TEST_CASE("identical texts score 1 and are flagged") {
  StubEmbedder stub;
  const auto a = article("X2", 2012, {person("a", "b")}, "Same title", "Same abstract. Second sentence.");
  auto b = a;
  b.article_id = "X1";
  const auto c = score_pair(a, b, stub);
  CHECK(c.article_a == "X1");
  CHECK(c.title_similarity == doctest::Approx(1.0));
  CHECK(c.abstract_similarity.value() == doctest::Approx(1.0));
  CHECK(c.flagged);
  CHECK(c.author_relation() == "identical");
}

TEST_CASE("unrelated texts are not flagged") {
  StubEmbedder stub;
  const auto a = article("A", 2012, {person("a", "b")}, "Gaze cues in tutoring", "Children learn. Tutors gaze.");
  const auto b = article("B", 2012, {person("a", "b")}, "Swarm farming drones", "Fields grow. Drones fly.");
  const auto c = score_pair(a, b, stub);
  CHECK(std::fabs(c.title_similarity) < 0.3);
  CHECK(std::fabs(c.abstract_similarity.value()) < 0.3);
  CHECK_FALSE(c.flagged);
}

TEST_CASE("missing abstract and missing title") {
  StubEmbedder stub;
  const auto a = article("A", 2012, {person("a", "b")}, "Robot title", "");
  const auto b = article("B", 2012, {person("a", "b")}, "Robot title", "Has one.");
  const auto c = score_pair(a, b, stub);
  CHECK_FALSE(c.abstract_similarity.has_value());
  CHECK(c.flagged);
  CHECK(c.max_similarity() == c.title_similarity);
  CHECK_THROWS_AS(score_pair(article("A", 2012, {}, "  "), b, stub), MissingTitle);
  CHECK_THROWS_AS(score_pair(b, b, stub), InvalidArgument);
}

TEST_CASE("flag rule is an OR and monotone in thresholds") {
  CHECK(is_flagged(0.9, 0.1, {}));
  CHECK(is_flagged(0.1, 0.9, {}));
  CHECK_FALSE(is_flagged(0.84, 0.84, {}));
  CHECK_FALSE(is_flagged(0.84, std::nullopt, {}));
  for (double t = 0.0; t <= 1.0; t += 0.05)
    for (double a = 0.0; a <= 1.0; a += 0.05)
      for (double tau = 0.05; tau <= 1.0; tau += 0.05)
        if (is_flagged(t, a, {tau, tau})) CHECK(is_flagged(t, a, {tau - 0.05, tau - 0.05}));
}

TEST_CASE("relation label for partial overlap") {
  DupCandidate c;
  c.author_jaccard = 2.0 / 3.0;
  CHECK(c.author_relation() == "jaccard:0.6667");
}

TEST_CASE("report flags exactly the planted pair") {
  StubEmbedder stub;
  const auto corpus = build_corpus(testing::dup_corpus(), "HRI");
  const auto report = dup_report(corpus, stub);
  REQUIRE(report.size() == 2);
  CHECK(report[0].article_a == "D07");
  CHECK(report[0].article_b == "D15");
  CHECK(report[0].flagged);
  CHECK(report[0].abstract_similarity.value() >= 0.85);
  CHECK(report[1].article_a == "D03");
  CHECK_FALSE(report[1].flagged);
  CHECK(report[0].max_similarity() >= report[1].max_similarity());
}

TEST_CASE("report ordering with two flagged pairs") {
  StubEmbedder stub;
  auto articles = testing::dup_corpus();
  articles[11].title = articles[3].title;
  articles[11].abstract = articles[3].abstract;
  const auto report = dup_report(build_corpus(articles, "HRI"), stub);
  REQUIRE(report.size() == 2);
  CHECK(report[0].article_a == "D03");  // identical texts score highest
  CHECK(report[0].flagged);
  CHECK(report[1].flagged);
}

TEST_CASE("fixture planted duplicate is found") {
  StubEmbedder stub;
  const auto articles =
      ingest_articles(testing::source_dir() / "data/fixtures/hri_fixture.csv", InputFormat::csv).articles;
  const auto report = dup_report(build_corpus(articles, "HRI"), stub);
  std::size_t flagged = 0;
  for (const auto& c : report) flagged += c.flagged;
  CHECK(flagged == 1);
  REQUIRE_FALSE(report.empty());
  CHECK(report[0].flagged);
  CHECK(report[0].article_a == "HRI-2023-021");
  CHECK(report[0].article_b == "HRI-2023-022");
}

TEST_CASE("score_pair is symmetric") {
  StubEmbedder stub;
  const auto articles = testing::dup_corpus();
  for (std::size_t i = 0; i + 1 < articles.size(); i += 3) {
    const auto ab = score_pair(articles[i], articles[i + 1], stub);
    const auto ba = score_pair(articles[i + 1], articles[i], stub);
    CHECK(ab.article_a == ba.article_a);
    CHECK(ab.title_similarity == ba.title_similarity);
    CHECK(ab.abstract_similarity == ba.abstract_similarity);
    CHECK(ab.author_jaccard == ba.author_jaccard);
  }
}

TEST_CASE("candidate pairs ignore article order") {
  auto articles = testing::dup_corpus();
  articles[5].authors.push_back(articles[9].authors[1]);
  const auto expected = candidate_pairs(build_corpus(articles, "HRI"), 0.2);
  std::mt19937_64 rng(8);
  for (int i = 0; i < 5; ++i) {
    std::shuffle(articles.begin(), articles.end(), rng);
    CHECK(candidate_pairs(build_corpus(articles, "HRI"), 0.2) == expected);
  }
}
