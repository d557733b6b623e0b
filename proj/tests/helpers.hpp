#pragma once

// Builders and independent oracles shared by the test binaries.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "biblio/records.hpp"
#include "biblio/topics.hpp"

namespace testing {

inline std::filesystem::path source_dir() { return BIBLIO_SOURCE_DIR; }

inline std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline std::filesystem::path temp_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("biblio_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

inline biblio::AuthorEntry person(const std::string& given, const std::string& surname,
                                  const std::string& country = "USA",
                                  const std::string& affiliation = "Some University") {
  return {given, surname, affiliation, country};
}

inline biblio::ArticleRecord article(const std::string& id, int year,
                                     std::vector<biblio::AuthorEntry> authors,
                                     const std::string& title = "A title",
                                     const std::string& abstract = "", const std::string& conference = "HRI") {
  return {id, conference, year, title, abstract, std::move(authors)};
}

inline biblio::AuthorProfile profile(const std::map<int, int>& counts, int first = 2010, int last = 2024) {
  biblio::AuthorProfile p;
  p.key = {"test", "author", ""};
  for (int y = first; y <= last; ++y) p.year_counts[y] = 0;
  for (const auto& [y, c] : counts) p.year_counts[y] = c;
  return p;
}

// Corpus whose authors each publish single-author papers with the given
// year -> count maps.
inline biblio::Corpus corpus_of(const std::vector<std::map<int, int>>& authors,
                                const std::vector<std::string>& countries = {}) {
  std::vector<biblio::ArticleRecord> articles;
  for (std::size_t i = 0; i < authors.size(); ++i) {
    const std::string country = i < countries.size() ? countries[i] : "USA";
    int n = 0;
    for (const auto& [year, count] : authors[i])
      for (int c = 0; c < count; ++c)
        articles.push_back(article("a" + std::to_string(i) + "-" + std::to_string(n++), year,
                                   {person("Given" + std::string(1, static_cast<char>('a' + i % 26)),
                                           "Author" + std::to_string(i), country)}));
  }
  return biblio::build_corpus(articles, "HRI");
}

// O(m^2) mean absolute difference form of the Gini index.
inline double gini_pairwise(const std::vector<double>& x) {
  const double m = static_cast<double>(x.size());
  double sum = 0.0;
  for (const double v : x) sum += v;
  if (sum == 0.0) return 0.0;
  double diff = 0.0;
  for (const double a : x)
    for (const double b : x) diff += std::fabs(a - b);
  return diff / (2.0 * m * m * (sum / m));
}

// Two disjoint vocabularies; every document draws only from one of them.
struct PlantedCorpus {
  std::vector<std::string> vocab_a;
  std::vector<std::string> vocab_b;
  std::vector<biblio::topics::TokenizedDoc> docs;
};

inline PlantedCorpus planted_corpus(std::size_t docs = 200, std::size_t terms = 20, std::size_t length = 40,
                                    std::uint64_t seed = 11) {
  PlantedCorpus c;
  for (std::size_t i = 0; i < terms; ++i) {
    c.vocab_a.push_back("alpha" + std::string(1, static_cast<char>('a' + i)));
    c.vocab_b.push_back("beta" + std::string(1, static_cast<char>('a' + i)));
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, terms - 1);
  for (std::size_t d = 0; d < docs; ++d) {
    const auto& vocab = d % 2 ? c.vocab_b : c.vocab_a;
    biblio::topics::TokenizedDoc doc;
    doc.article_id = "doc" + std::to_string(d);
    for (std::size_t t = 0; t < length; ++t) doc.tokens.push_back(vocab[pick(rng)]);
    c.docs.push_back(std::move(doc));
  }
  return c;
}

inline bool subset_of(const std::vector<std::string>& words, const std::vector<std::string>& vocab) {
  for (const auto& w : words)
    if (std::find(vocab.begin(), vocab.end(), w) == vocab.end()) return false;
  return true;
}

// Twenty articles with distinct author teams and unrelated texts, except for
// one author-shuffled near duplicate (D07/D15) and one team that published two
// unrelated papers (D03/D11).
inline std::vector<biblio::ArticleRecord> dup_corpus() {
  const char* topics[] = {"gaze", "handover", "trust", "tutoring", "swarm", "haptic", "museum",
                          "exoskeleton", "driving", "pets", "ethics", "speech", "gesture",
                          "dance", "cooking", "farming", "surgery", "warehouse", "theatre", "therapy"};
  std::vector<biblio::ArticleRecord> out;
  for (int i = 0; i < 20; ++i) {
    const std::string t = topics[i];
    const std::string id = (i < 10 ? "D0" : "D") + std::to_string(i);
    out.push_back(article(id, 2012 + i % 10,
                          {person("Ann" + t, "Lee" + t), person("Bo" + t, "Kim" + t)},
                          "Robots for " + t + " studied " + std::to_string(i),
                          "We study " + t + " with robots number " + std::to_string(i) + ". Results vary " + t + "."));
  }
  const std::vector<biblio::AuthorEntry> team{person("Mei", "Lv", "China"), person("Jirui", "Zhou", "China"),
                                              person("Hao", "Ma", "China")};
  out[7].authors = team;
  out[7].title = "Sleep Elf: A Pillow Robot That Accompanies Children To Sleep";
  out[7].abstract =
      "Many children struggle to fall asleep alone at night. We designed Sleep Elf, a pillow robot that pats "
      "the child and sings lullabies. A pilot study with twelve families suggests the pillow robot helps "
      "children fall asleep sooner.";
  out[15].authors = {team[2], team[0], team[1]};
  out[15].title = "Sleep Elf: A Pillow Robot That Pats And Sings Children To Sleep";
  out[15].abstract =
      "Many children struggle to fall asleep alone at night. We present Sleep Elf, a pillow robot that pats "
      "the child and sings lullabies. A pilot study with twelve families suggests that the pillow robot helps "
      "children fall asleep sooner.";
  out[11].authors = out[3].authors;
  return out;
}

}  // namespace testing
