#include "biblio/topics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <optional>
#include <random>

#include "biblio/error.hpp"
#include "biblio/text.hpp"

namespace biblio::topics {

std::set<std::string> PreprocessOptions::default_stopwords() {
  // Keep in sync with data/stopwords_en.txt.
  return {"a", "about", "above", "after", "again", "against", "ain", "all", "am", "an", "and", "any",
          "are", "aren", "as", "at", "be", "because", "been", "before", "being", "below", "between",
          "both", "but", "by", "can", "couldn", "d", "did", "didn", "do", "does", "doesn", "doing",
          "don", "down", "during", "each", "few", "for", "from", "further", "had", "hadn", "has",
          "hasn", "have", "haven", "having", "he", "her", "here", "hers", "herself", "him", "himself",
          "his", "how", "i", "if", "in", "into", "is", "isn", "it", "its", "itself", "just", "ll", "m",
          "ma", "me", "mightn", "more", "most", "mustn", "my", "myself", "needn", "no", "nor", "not",
          "now", "o", "of", "off", "on", "once", "only", "or", "other", "our", "ours", "ourselves",
          "out", "over", "own", "re", "s", "same", "shan", "she", "should", "shouldn", "so", "some",
          "such", "t", "than", "that", "the", "their", "theirs", "them", "themselves", "then", "there",
          "these", "they", "this", "those", "through", "to", "too", "under", "until", "up", "ve",
          "very", "was", "wasn", "we", "were", "weren", "what", "when", "where", "which", "while",
          "who", "whom", "why", "will", "with", "won", "wouldn", "y", "you", "your", "yours",
          "yourself", "yourselves"};
}

std::set<std::string> read_stopwords(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("topics", 0, "cannot open " + path.string());
  std::set<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    const std::string word = text::trim(line);
    if (word.empty() || word.front() == '#') continue;
    out.insert(text::lower(word));
  }
  return out;
}

std::string stem(const std::string& token) {
  auto strip = [&](std::string_view suffix, std::string_view replacement) -> std::optional<std::string> {
    if (token.size() < suffix.size() + 3 || !token.ends_with(suffix)) return std::nullopt;
    return token.substr(0, token.size() - suffix.size()) + std::string(replacement);
  };
  if (auto s = strip("ies", "y")) return *s;
  if (auto s = strip("ing", "")) return *s;
  if (auto s = strip("ed", "")) return *s;
  if (token.ends_with("ss")) return token;
  if (auto s = strip("es", "")) return *s;
  if (auto s = strip("s", "")) return *s;
  return token;
}

TokenizedDoc preprocess(const std::string& abstract, const PreprocessOptions& options) {
  TokenizedDoc doc;
  for (auto& token : text::letter_runs(abstract, /*keep_digits=*/false)) {
    if (token.size() < options.min_length || options.stopwords.contains(token)) continue;
    if (options.stem) {
      token = stem(token);
      if (token.size() < options.min_length || options.stopwords.contains(token)) continue;
    }
    doc.tokens.push_back(std::move(token));
  }
  return doc;
}

std::vector<std::string> sentence_split(const std::string& text) {
  std::vector<std::string> out;
  auto emit = [&](std::size_t begin, std::size_t end) {
    std::string piece = text::trim(std::string_view(text).substr(begin, end - begin));
    if (!piece.empty()) out.push_back(std::move(piece));
  };
  auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; };

  std::size_t start = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c != '.' && c != '!' && c != '?') continue;
    std::size_t j = i + 1;
    if (j < text.size() && !is_space(text[j])) continue;
    while (j < text.size() && is_space(text[j])) ++j;
    if (j == text.size() || text::starts_uppercase(std::string_view(text).substr(j))) {
      emit(start, i + 1);
      start = j;
      i = j == 0 ? 0 : j - 1;
    }
  }
  if (start < text.size()) emit(start, text.size());
  return out;
}

namespace {

// Uniform double in [0, 1) from the top 53 bits; identical on every platform.
double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

TopicModel lda_fit(const std::vector<TokenizedDoc>& docs, const LdaParams& params) {
  if (docs.empty()) throw EmptyCorpus("no documents to fit");
  if (params.topics == 0) throw InvalidArgument("topic count must be positive");
  const double alpha = params.effective_alpha();
  const double beta = params.beta;
  if (!(alpha > 0.0) || !(beta > 0.0)) throw InvalidArgument("alpha and beta must be positive");

  TopicModel model;
  model.topics = params.topics;
  model.alpha = alpha;
  model.beta = beta;
  model.seed = params.seed;
  model.iterations = params.iterations;

  std::set<std::string> terms;
  for (const auto& doc : docs) terms.insert(doc.tokens.begin(), doc.tokens.end());
  if (terms.empty()) throw DegenerateVocab("every document is empty after preprocessing");
  model.vocab.assign(terms.begin(), terms.end());

  const std::size_t K = params.topics;
  const std::size_t V = model.vocab.size();
  const std::size_t D = docs.size();

  std::vector<std::vector<std::size_t>> words(D);
  for (std::size_t d = 0; d < D; ++d) {
    words[d].reserve(docs[d].tokens.size());
    for (const auto& t : docs[d].tokens) {
      const auto it = std::lower_bound(model.vocab.begin(), model.vocab.end(), t);
      words[d].push_back(static_cast<std::size_t>(it - model.vocab.begin()));
    }
  }

  std::vector<std::size_t> doc_topic(D * K, 0);
  std::vector<std::size_t> topic_word(K * V, 0);
  std::vector<std::size_t> topic_total(K, 0);
  auto& z = model.assignments;
  z.resize(D);

  std::mt19937_64 rng(params.seed);
  for (std::size_t d = 0; d < D; ++d) {
    z[d].resize(words[d].size());
    for (std::size_t i = 0; i < words[d].size(); ++i) {
      const auto k = std::min(K - 1, static_cast<std::size_t>(unit(rng) * static_cast<double>(K)));
      z[d][i] = k;
      ++doc_topic[d * K + k];
      ++topic_word[k * V + words[d][i]];
      ++topic_total[k];
    }
  }

  const double vbeta = static_cast<double>(V) * beta;
  std::vector<double> cumulative(K);
  for (std::size_t iter = 0; iter < params.iterations; ++iter) {
    for (std::size_t d = 0; d < D; ++d) {
      for (std::size_t i = 0; i < words[d].size(); ++i) {
        const std::size_t w = words[d][i];
        std::size_t k = z[d][i];
        --doc_topic[d * K + k];
        --topic_word[k * V + w];
        --topic_total[k];

        double total = 0.0;
        for (std::size_t t = 0; t < K; ++t) {
          total += (static_cast<double>(doc_topic[d * K + t]) + alpha) *
                   (static_cast<double>(topic_word[t * V + w]) + beta) /
                   (static_cast<double>(topic_total[t]) + vbeta);
          cumulative[t] = total;
        }
        const double u = unit(rng) * total;
        k = static_cast<std::size_t>(std::upper_bound(cumulative.begin(), cumulative.end(), u) -
                                     cumulative.begin());
        if (k >= K) k = K - 1;

        z[d][i] = k;
        ++doc_topic[d * K + k];
        ++topic_word[k * V + w];
        ++topic_total[k];
      }
    }
  }

  model.phi = Matrix(K, V);
  for (std::size_t k = 0; k < K; ++k)
    for (std::size_t w = 0; w < V; ++w)
      model.phi(k, w) = (static_cast<double>(topic_word[k * V + w]) + beta) /
                        (static_cast<double>(topic_total[k]) + vbeta);

  const double kalpha = static_cast<double>(K) * alpha;
  model.theta = Matrix(D, K);
  for (std::size_t d = 0; d < D; ++d)
    for (std::size_t k = 0; k < K; ++k)
      model.theta(d, k) = (static_cast<double>(doc_topic[d * K + k]) + alpha) /
                          (static_cast<double>(words[d].size()) + kalpha);
  return model;
}

std::vector<std::string> top_words(const TopicModel& model, std::size_t topic, std::size_t n) {
  if (topic >= model.topics)
    throw TopicOutOfRange("topic " + std::to_string(topic) + " of " + std::to_string(model.topics));
  std::vector<std::size_t> order(model.vocab.size());
  std::iota(order.begin(), order.end(), 0);
  const std::size_t keep = std::min(n, order.size());
  // Vocab is sorted, so a lower index is the lexicographically smaller term.
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(keep), order.end(),
                    [&](std::size_t a, std::size_t b) {
                      const double pa = model.phi(topic, a);
                      const double pb = model.phi(topic, b);
                      return pa != pb ? pa > pb : a < b;
                    });
  std::vector<std::string> out;
  out.reserve(keep);
  for (std::size_t i = 0; i < keep; ++i) out.push_back(model.vocab[order[i]]);
  return out;
}

EmbeddingVector paragraph_embedding(const std::string& abstract, EmbeddingProvider& provider) {
  const auto sentences = sentence_split(abstract);
  if (sentences.empty()) throw NoAbstracts("abstract has no sentences");
  const auto vectors = provider.embed(sentences);
  return mean(vectors);
}

EmbeddingVector country_embedding(const std::vector<ArticleRecord>& articles, EmbeddingProvider& provider) {
  std::vector<const ArticleRecord*> ordered;
  for (const auto& a : articles) ordered.push_back(&a);
  std::sort(ordered.begin(), ordered.end(),
            [](const ArticleRecord* a, const ArticleRecord* b) { return a->article_id < b->article_id; });

  // One provider call for every sentence; spans remember which belong together.
  std::vector<std::string> sentences;
  std::vector<std::pair<std::size_t, std::size_t>> spans;
  for (const ArticleRecord* article : ordered) {
    auto pieces = sentence_split(article->abstract);
    if (pieces.empty()) continue;
    spans.emplace_back(sentences.size(), pieces.size());
    std::move(pieces.begin(), pieces.end(), std::back_inserter(sentences));
  }
  if (spans.empty()) throw NoAbstracts("no article has a non-empty abstract");

  const auto vectors = provider.embed(sentences);
  if (vectors.size() != sentences.size())
    throw ProviderError("provider returned " + std::to_string(vectors.size()) + " vectors for " +
                        std::to_string(sentences.size()) + " sentences");
  std::vector<EmbeddingVector> paragraphs;
  paragraphs.reserve(spans.size());
  const std::span<const EmbeddingVector> all(vectors);
  for (const auto& [offset, count] : spans) paragraphs.push_back(mean(all.subspan(offset, count)));
  return mean(paragraphs);
}

SimilarityMatrix similarity_matrix(const std::map<std::string, EmbeddingVector>& embeddings) {
  if (embeddings.size() < 2) throw InvalidArgument("similarity needs at least two countries");
  SimilarityMatrix m;
  std::vector<const EmbeddingVector*> vectors;
  const std::size_t dim = embeddings.begin()->second.dim();
  for (const auto& [label, v] : embeddings) {
    if (v.dim() != dim)
      throw DimMismatch("'" + label + "' has dimension " + std::to_string(v.dim()) + ", expected " +
                        std::to_string(dim));
    if (norm(v) == 0.0) throw ZeroVector("'" + label + "' embeds to the zero vector");
    m.labels.push_back(label);
    vectors.push_back(&v);
  }
  const std::size_t n = m.labels.size();
  m.cells.assign(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    m.cells[i * n + i] = 1.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      const double c = cosine(*vectors[i], *vectors[j]);
      m.cells[i * n + j] = c;
      m.cells[j * n + i] = c;
    }
  }
  return m;
}

}  // namespace biblio::topics
