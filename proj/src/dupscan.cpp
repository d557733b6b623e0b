#include "biblio/dupscan.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <set>

#include "biblio/error.hpp"
#include "biblio/text.hpp"
#include "biblio/topics.hpp"

namespace biblio::dupscan {

double DupCandidate::max_similarity() const {
  return abstract_similarity ? std::max(title_similarity, *abstract_similarity) : title_similarity;
}

std::string DupCandidate::author_relation() const {
  if (identical_authors()) return "identical";
  char buf[32];
  std::snprintf(buf, sizeof buf, "jaccard:%.4f", author_jaccard);
  return buf;
}

namespace {

std::set<AuthorKey> key_set(const ArticleRecord& article) {
  std::set<AuthorKey> keys;
  for (const auto& author : article.authors) keys.insert(author_key(author, false));
  return keys;
}

double jaccard(const std::set<AuthorKey>& a, const std::set<AuthorKey>& b) {
  std::size_t shared = 0;
  for (const auto& k : a) shared += b.count(k);
  const std::size_t united = a.size() + b.size() - shared;
  return united ? static_cast<double>(shared) / static_cast<double>(united) : 0.0;
}

}  // namespace

double author_jaccard(const ArticleRecord& a, const ArticleRecord& b) {
  return jaccard(key_set(a), key_set(b));
}

std::vector<std::pair<std::string, std::string>> candidate_pairs(const Corpus& corpus,
                                                                 double min_author_jaccard) {
  if (!(min_author_jaccard > 0.0 && min_author_jaccard <= 1.0))
    throw InvalidArgument("min_author_jaccard must lie in (0, 1]");

  std::vector<std::set<AuthorKey>> keys;
  std::map<AuthorKey, std::vector<std::size_t>> by_author;
  for (std::size_t i = 0; i < corpus.articles.size(); ++i) {
    keys.push_back(key_set(corpus.articles[i]));
    for (const auto& k : keys.back()) by_author[k].push_back(i);
  }

  // A positive Jaccard needs a shared author, so only co-listed pairs are checked.
  std::set<std::pair<std::size_t, std::size_t>> seen;
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& [author, articles] : by_author) {
    for (std::size_t x = 0; x < articles.size(); ++x) {
      for (std::size_t y = x + 1; y < articles.size(); ++y) {
        const auto pair = std::minmax(articles[x], articles[y]);
        if (!seen.insert(pair).second) continue;
        if (jaccard(keys[pair.first], keys[pair.second]) < min_author_jaccard) continue;
        auto ids = std::minmax(corpus.articles[pair.first].article_id,
                               corpus.articles[pair.second].article_id);
        out.emplace_back(ids.first, ids.second);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool is_flagged(double title_similarity, std::optional<double> abstract_similarity,
                const Thresholds& thresholds) {
  return title_similarity >= thresholds.title ||
         (abstract_similarity && *abstract_similarity >= thresholds.abstract);
}

namespace {

// Embeddings shared across all pairs an article takes part in.
struct ArticleVectors {
  EmbeddingVector title;
  std::optional<EmbeddingVector> paragraph;
};

std::map<std::string, ArticleVectors> embed_articles(const std::vector<const ArticleRecord*>& articles,
                                                     EmbeddingProvider& provider) {
  std::vector<std::string> titles;
  for (const auto* a : articles) {
    if (text::trim(a->title).empty()) throw MissingTitle("article '" + a->article_id + "' has no title");
    titles.push_back(a->title);
  }
  const auto title_vectors = provider.embed(titles);
  if (title_vectors.size() != titles.size()) throw ProviderError("provider dropped title vectors");

  std::vector<std::string> sentences;
  std::vector<std::pair<std::size_t, std::size_t>> spans(articles.size(), {0, 0});
  for (std::size_t i = 0; i < articles.size(); ++i) {
    auto pieces = topics::sentence_split(articles[i]->abstract);
    spans[i] = {sentences.size(), pieces.size()};
    std::move(pieces.begin(), pieces.end(), std::back_inserter(sentences));
  }
  const auto sentence_vectors = provider.embed(sentences);
  if (sentence_vectors.size() != sentences.size()) throw ProviderError("provider dropped sentence vectors");
  const std::span<const EmbeddingVector> all(sentence_vectors);

  std::map<std::string, ArticleVectors> out;
  for (std::size_t i = 0; i < articles.size(); ++i) {
    ArticleVectors v{title_vectors[i], std::nullopt};
    if (spans[i].second) v.paragraph = mean(all.subspan(spans[i].first, spans[i].second));
    out.emplace(articles[i]->article_id, std::move(v));
  }
  return out;
}

DupCandidate combine(const ArticleRecord& a, const ArticleRecord& b, const ArticleVectors& va,
                     const ArticleVectors& vb, const Thresholds& thresholds) {
  const bool swap = b.article_id < a.article_id;
  DupCandidate c;
  c.article_a = swap ? b.article_id : a.article_id;
  c.article_b = swap ? a.article_id : b.article_id;
  c.author_jaccard = author_jaccard(a, b);
  c.title_similarity = cosine(va.title, vb.title);
  if (va.paragraph && vb.paragraph) c.abstract_similarity = cosine(*va.paragraph, *vb.paragraph);
  c.flagged = is_flagged(c.title_similarity, c.abstract_similarity, thresholds);
  return c;
}

}  // namespace

DupCandidate score_pair(const ArticleRecord& a, const ArticleRecord& b, EmbeddingProvider& provider,
                        const Thresholds& thresholds) {
  if (a.article_id == b.article_id) throw InvalidArgument("cannot pair an article with itself");
  const auto vectors = embed_articles({&a, &b}, provider);
  return combine(a, b, vectors.at(a.article_id), vectors.at(b.article_id), thresholds);
}

std::vector<DupCandidate> dup_report(const Corpus& corpus, EmbeddingProvider& provider,
                                     const Thresholds& thresholds, double min_author_jaccard) {
  const auto pairs = candidate_pairs(corpus, min_author_jaccard);
  if (pairs.empty()) return {};

  std::map<std::string, const ArticleRecord*> by_id;
  for (const auto& a : corpus.articles) by_id.emplace(a.article_id, &a);
  std::set<std::string> involved;
  for (const auto& [a, b] : pairs) {
    involved.insert(a);
    involved.insert(b);
  }
  std::vector<const ArticleRecord*> articles;
  for (const auto& id : involved) articles.push_back(by_id.at(id));
  const auto vectors = embed_articles(articles, provider);

  std::vector<DupCandidate> report;
  report.reserve(pairs.size());
  for (const auto& [a, b] : pairs)
    report.push_back(combine(*by_id.at(a), *by_id.at(b), vectors.at(a), vectors.at(b), thresholds));
  std::stable_sort(report.begin(), report.end(), [](const DupCandidate& x, const DupCandidate& y) {
    if (x.max_similarity() != y.max_similarity()) return x.max_similarity() > y.max_similarity();
    return std::tie(x.article_a, x.article_b) < std::tie(y.article_a, y.article_b);
  });
  return report;
}

}  // namespace biblio::dupscan
