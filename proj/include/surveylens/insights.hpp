#ifndef SURVEYLENS_INSIGHTS_HPP
#define SURVEYLENS_INSIGHTS_HPP

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "surveylens/annotation.hpp"
#include "surveylens/embedding.hpp"

namespace surveylens {

inline constexpr double kDefaultMergeThreshold = 0.8;

enum class WordcloudScope { cluster, unified };

std::string_view to_string(WordcloudScope scope);

struct WordcloudEntry {
  std::string token;
  int cluster_id = 0;
  double weight = 0;  // w for cluster scope, rho * w for unified scope
  WordcloudScope scope = WordcloudScope::cluster;

  friend bool operator==(const WordcloudEntry&, const WordcloudEntry&) = default;
};

/// Cluster-size fractions rho_i = N_i / m, in input order.
struct DensityCoefficients {
  std::vector<double> rho;
};

struct ClusterStats {
  int cluster_id = 0;
  int size = 0;
  int min_words = 0;
  int max_words = 0;
  double avg_words = 0;

  friend bool operator==(const ClusterStats&, const ClusterStats&) = default;
};

struct CentroidCorrelation {
  Eigen::MatrixXd matrix;  // k x k, symmetric, unit diagonal
  double threshold = kDefaultMergeThreshold;
};

struct MergeSuggestion {
  int first = 0;  // first < second
  int second = 0;
  double similarity = 0;

  friend bool operator==(const MergeSuggestion&, const MergeSuggestion&) = default;
};

/// Throws SizeSumMismatch unless the sizes are positive and add up to `m`.
DensityCoefficients density_coefficients(std::span<const std::size_t> cluster_sizes,
                                         std::size_t m);

/// Prominent tokens of one cluster at their raw weights.
std::vector<WordcloudEntry> cluster_wordcloud(const ClusterAnnotation& annotation);

/// Every prominent token of every cluster scaled by that cluster's rho.
/// A token shared by two clusters yields two entries. Sorted by weight
/// descending, then cluster id, then token. Annotation i pairs with rho[i].
std::vector<WordcloudEntry> unified_wordcloud(std::span<const ClusterAnnotation> annotations,
                                              const DensityCoefficients& rho);

/// Pairwise cosine similarity of the centroid rows.
CentroidCorrelation centroid_correlation(const EmbeddingMatrix& centroids,
                                         double threshold = kDefaultMergeThreshold);

/// Upper-triangle pairs at or above the threshold, most similar first.
std::vector<MergeSuggestion> suggest_merges(const CentroidCorrelation& corr);

/// Whitespace word-count statistics per cluster. Throws EmptyCluster when a
/// cluster has no members.
std::vector<ClusterStats> cluster_stats(
    std::span<const std::pair<int, std::vector<std::string>>> clusters);

}  // namespace surveylens

#endif  // SURVEYLENS_INSIGHTS_HPP
