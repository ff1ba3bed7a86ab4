#ifndef SURVEYLENS_ANNOTATION_HPP
#define SURVEYLENS_ANNOTATION_HPP

#include <map>
#include <span>
#include <string>
#include <vector>

#include "surveylens/embedding.hpp"
#include "surveylens/providers.hpp"
#include "surveylens/text.hpp"

namespace surveylens {

inline constexpr int kDefaultTopTokens = 5;

struct PreprocessOptions {
  /// Fold a plural "xs" into "x" when "x" also occurs in the same cluster.
  bool light_stemming = false;
  const StopwordList* stopwords = nullptr;  // bundled list when null
};

/// Unique cluster vocabulary after preprocessing. `tokens` is sorted, so it
/// does not depend on sentence order.
struct TokenSet {
  int cluster_id = 0;
  std::vector<std::string> tokens;
  std::map<std::string, int> source_counts;
};

struct TokenWeight {
  std::string token;
  double weight = 0;  // cosine similarity to the cluster centroid

  friend bool operator==(const TokenWeight&, const TokenWeight&) = default;
};

struct ClusterAnnotation {
  int cluster_id = 0;
  std::vector<TokenWeight> prominent;  // weight desc, then token asc
  std::string label;                   // prominent tokens joined with ", "
  bool no_tokens = false;              // every sentence reduced to stopwords

  friend bool operator==(const ClusterAnnotation&, const ClusterAnnotation&) = default;
};

/// Lowercase, split on non-alphanumerics, drop tokens shorter than two
/// characters, all-digit tokens and stopwords; count what survives.
/// Throws EmptyInput when `sentences` is empty.
TokenSet preprocess_tokens(std::span<const std::string> sentences,
                           const PreprocessOptions& options = {}, int cluster_id = 0);

/// Orders by weight descending, ties by token ascending.
bool prominence_order(const TokenWeight& a, const TokenWeight& b);

/// Weight of every token in `tokens` against `centroid`, sorted by
/// prominence_order. Throws ZeroVector for a degenerate token embedding.
std::vector<TokenWeight> token_weights(const EmbeddingVector& centroid, const TokenSet& tokens,
                                       const EmbeddingProvider& provider);

/// Preprocess, weight against the mean of `sentence_vectors`, keep the top
/// `top_n`. `sentence_vectors` holds one row per sentence.
ClusterAnnotation annotate_cluster(int cluster_id, std::span<const std::string> sentences,
                                   const EmbeddingMatrix& sentence_vectors,
                                   const EmbeddingProvider& provider,
                                   int top_n = kDefaultTopTokens,
                                   const PreprocessOptions& options = {});

/// Same, embedding the sentences with `provider` first.
ClusterAnnotation annotate_cluster(int cluster_id, std::span<const std::string> sentences,
                                   const EmbeddingProvider& provider,
                                   int top_n = kDefaultTopTokens,
                                   const PreprocessOptions& options = {});

}  // namespace surveylens

#endif  // SURVEYLENS_ANNOTATION_HPP
