#include "surveylens/annotation.hpp"

#include <algorithm>

namespace surveylens {

namespace {

bool all_digits(const std::string& s) {
  return std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

}  // namespace

TokenSet preprocess_tokens(std::span<const std::string> sentences,
                           const PreprocessOptions& options, int cluster_id) {
  if (sentences.empty()) throw EmptyInput("preprocess_tokens: no sentences");
  const StopwordList& stop = options.stopwords ? *options.stopwords : StopwordList::bundled();

  TokenSet set;
  set.cluster_id = cluster_id;
  for (const auto& sentence : sentences) {
    for (auto& word : split_words(sentence)) {
      if (word.size() < 2 || all_digits(word) || stop.contains(word)) continue;
      ++set.source_counts[std::move(word)];
    }
  }

  if (options.light_stemming) {
    std::map<std::string, int> folded;
    for (const auto& [token, count] : set.source_counts) {
      if (token.size() > 2 && token.back() == 's') {
        const std::string stem = token.substr(0, token.size() - 1);
        if (set.source_counts.contains(stem)) {
          folded[stem] += count;
          continue;
        }
      }
      folded[token] += count;
    }
    set.source_counts = std::move(folded);
  }

  set.tokens.reserve(set.source_counts.size());
  for (const auto& [token, count] : set.source_counts) set.tokens.push_back(token);
  return set;
}

bool prominence_order(const TokenWeight& a, const TokenWeight& b) {
  if (a.weight != b.weight) return a.weight > b.weight;
  return a.token < b.token;
}

std::vector<TokenWeight> token_weights(const EmbeddingVector& centroid, const TokenSet& tokens,
                                       const EmbeddingProvider& provider) {
  std::vector<TokenWeight> out;
  if (tokens.tokens.empty()) return out;
  if (centroid.size() != provider.dimension()) {
    throw DimensionMismatch("token_weights: centroid dimension " +
                            std::to_string(centroid.size()) + ", provider dimension " +
                            std::to_string(provider.dimension()));
  }
  const EmbeddingMatrix token_vectors = embed_texts(provider, tokens.tokens);
  out.reserve(tokens.tokens.size());
  for (std::size_t i = 0; i < tokens.tokens.size(); ++i) {
    const auto row = token_vectors.row(static_cast<Eigen::Index>(i));
    if (row.squaredNorm() == 0.0) {
      throw ZeroVector("token_weights: zero embedding for token \"" + tokens.tokens[i] + "\"");
    }
    out.push_back({tokens.tokens[i], cosine_similarity(centroid, row.transpose())});
  }
  std::sort(out.begin(), out.end(), prominence_order);
  return out;
}

ClusterAnnotation annotate_cluster(int cluster_id, std::span<const std::string> sentences,
                                   const EmbeddingMatrix& sentence_vectors,
                                   const EmbeddingProvider& provider, int top_n,
                                   const PreprocessOptions& options) {
  if (sentences.empty()) throw EmptyInput("annotate_cluster: empty cluster");
  if (sentence_vectors.rows() != static_cast<Eigen::Index>(sentences.size())) {
    throw LengthMismatch("annotate_cluster: " + std::to_string(sentence_vectors.rows()) +
                         " vectors for " + std::to_string(sentences.size()) + " sentences");
  }
  if (top_n < 1) throw std::invalid_argument("annotate_cluster: top_n must be positive");

  ClusterAnnotation ann;
  ann.cluster_id = cluster_id;
  const TokenSet tokens = preprocess_tokens(sentences, options, cluster_id);
  if (tokens.tokens.empty()) {
    ann.no_tokens = true;
    return ann;
  }
  auto weights = token_weights(mean_embedding(sentence_vectors), tokens, provider);
  weights.resize(std::min(weights.size(), static_cast<std::size_t>(top_n)));
  ann.prominent = std::move(weights);
  for (std::size_t i = 0; i < ann.prominent.size(); ++i) {
    if (i) ann.label += ", ";
    ann.label += ann.prominent[i].token;
  }
  return ann;
}

ClusterAnnotation annotate_cluster(int cluster_id, std::span<const std::string> sentences,
                                   const EmbeddingProvider& provider, int top_n,
                                   const PreprocessOptions& options) {
  if (sentences.empty()) throw EmptyInput("annotate_cluster: empty cluster");
  return annotate_cluster(cluster_id, sentences, embed_texts(provider, sentences), provider,
                          top_n, options);
}

}  // namespace surveylens
