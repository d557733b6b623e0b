#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "biblio/embedding.hpp"
#include "biblio/records.hpp"

namespace biblio::topics {

struct TokenizedDoc {
  std::string article_id;
  std::vector<std::string> tokens;
  std::string country;
};

struct PreprocessOptions {
  std::set<std::string> stopwords = default_stopwords();
  bool stem = false;
  std::size_t min_length = 2;  // in bytes

  static std::set<std::string> default_stopwords();
};

// One stopword per line; blank lines and '#' comments ignored.
std::set<std::string> read_stopwords(const std::filesystem::path& path);

// Lowercase, split on anything that is not a letter (punctuation and digits
// included), drop stopwords and short tokens, optionally stem.
TokenizedDoc preprocess(const std::string& abstract, const PreprocessOptions& options = {});

// Light suffix stripper: -ies -> -y, then -ing, -ed, -es, -s when at least
// three characters remain.
std::string stem(const std::string& token);

// Breaks after '.', '!' or '?' when followed by whitespace and an uppercase
// letter, or by the end of the text. Pieces are trimmed; empty ones dropped.
std::vector<std::string> sentence_split(const std::string& text);

// Row-major dense matrix.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}
  double& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
  bool operator==(const Matrix&) const = default;
};

struct LdaParams {
  std::size_t topics = 5;
  double alpha = -1.0;  // negative selects 50 / topics
  double beta = 0.01;
  std::size_t iterations = 1000;
  std::uint64_t seed = 42;

  double effective_alpha() const { return alpha < 0.0 ? 50.0 / static_cast<double>(topics) : alpha; }
};

struct TopicModel {
  std::size_t topics = 0;
  std::vector<std::string> vocab;  // sorted
  Matrix phi;    // topics x vocab
  Matrix theta;  // docs x topics
  std::vector<std::vector<std::size_t>> assignments;  // per doc, per token
  double alpha = 0.0;
  double beta = 0.0;
  std::uint64_t seed = 0;
  std::size_t iterations = 0;
};

// Collapsed Gibbs sampler driven by one seeded 64-bit Mersenne Twister.
// Throws EmptyCorpus for no documents, DegenerateVocab when every document is
// empty, InvalidArgument for zero topics or non-positive hyperparameters.
TopicModel lda_fit(const std::vector<TokenizedDoc>& docs, const LdaParams& params);

// The n highest-probability terms of a topic; ties broken lexicographically.
std::vector<std::string> top_words(const TopicModel& model, std::size_t topic, std::size_t n);

// Splits the abstract into sentences, embeds them, and averages.
// Throws NoAbstracts when the abstract has no sentences.
EmbeddingVector paragraph_embedding(const std::string& abstract, EmbeddingProvider& provider);

// Mean over the paragraph embeddings of every non-empty abstract, taken in
// article-id order. Throws NoAbstracts if there are none.
EmbeddingVector country_embedding(const std::vector<ArticleRecord>& articles, EmbeddingProvider& provider);

struct SimilarityMatrix {
  std::vector<std::string> labels;
  std::vector<double> cells;  // row-major |labels| x |labels|

  double at(std::size_t i, std::size_t j) const { return cells[i * labels.size() + j]; }
};

// Pairwise cosine similarity; the diagonal is exactly 1. Throws
// InvalidArgument for fewer than two labels, DimMismatch, ZeroVector.
SimilarityMatrix similarity_matrix(const std::map<std::string, EmbeddingVector>& embeddings);

}  // namespace biblio::topics
