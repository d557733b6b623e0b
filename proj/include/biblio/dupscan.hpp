#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "biblio/embedding.hpp"
#include "biblio/records.hpp"

namespace biblio::dupscan {

struct Thresholds {
  double title = 0.85;
  double abstract = 0.85;
};

struct DupCandidate {
  std::string article_a;  // lexically smaller id
  std::string article_b;
  double author_jaccard = 1.0;  // 1.0 means identical author sets
  double title_similarity = 0.0;
  std::optional<double> abstract_similarity;  // absent when either abstract is empty
  bool flagged = false;

  bool identical_authors() const { return author_jaccard == 1.0; }
  double max_similarity() const;
  std::string author_relation() const;  // "identical" or "jaccard:0.6667"
};

// Unordered article pairs whose normalized author-key sets have Jaccard index
// at or above `min_author_jaccard`, as (smaller id, larger id), sorted.
std::vector<std::pair<std::string, std::string>> candidate_pairs(const Corpus& corpus,
                                                                 double min_author_jaccard = 1.0);

double author_jaccard(const ArticleRecord& a, const ArticleRecord& b);

// Throws MissingTitle when either title is blank.
DupCandidate score_pair(const ArticleRecord& a, const ArticleRecord& b, EmbeddingProvider& provider,
                        const Thresholds& thresholds = {});

bool is_flagged(double title_similarity, std::optional<double> abstract_similarity,
                const Thresholds& thresholds);

// Scores every candidate pair; unflagged candidates stay in the report for
// review. Sorted by max similarity descending, then by ids.
std::vector<DupCandidate> dup_report(const Corpus& corpus, EmbeddingProvider& provider,
                                     const Thresholds& thresholds = {},
                                     double min_author_jaccard = 1.0);

}  // namespace biblio::dupscan
