#include "surveylens/insights.hpp"

#include <algorithm>
#include <limits>

namespace surveylens {

std::string_view to_string(WordcloudScope scope) {
  return scope == WordcloudScope::cluster ? "cluster" : "unified";
}

DensityCoefficients density_coefficients(std::span<const std::size_t> cluster_sizes,
                                         std::size_t m) {
  std::size_t total = 0;
  for (std::size_t s : cluster_sizes) {
    if (s == 0) throw SizeSumMismatch("density_coefficients: empty cluster");
    total += s;
  }
  if (cluster_sizes.empty() || total != m) {
    throw SizeSumMismatch("density_coefficients: sizes sum to " + std::to_string(total) +
                          ", expected " + std::to_string(m));
  }
  DensityCoefficients d;
  d.rho.reserve(cluster_sizes.size());
  for (std::size_t s : cluster_sizes) {
    d.rho.push_back(static_cast<double>(s) / static_cast<double>(m));
  }
  return d;
}

std::vector<WordcloudEntry> cluster_wordcloud(const ClusterAnnotation& annotation) {
  std::vector<WordcloudEntry> out;
  out.reserve(annotation.prominent.size());
  for (const auto& tw : annotation.prominent) {
    out.push_back({tw.token, annotation.cluster_id, tw.weight, WordcloudScope::cluster});
  }
  return out;
}

std::vector<WordcloudEntry> unified_wordcloud(std::span<const ClusterAnnotation> annotations,
                                              const DensityCoefficients& rho) {
  if (annotations.size() != rho.rho.size()) {
    throw LengthMismatch("unified_wordcloud: " + std::to_string(annotations.size()) +
                         " annotations, " + std::to_string(rho.rho.size()) + " coefficients");
  }
  std::vector<WordcloudEntry> out;
  for (std::size_t i = 0; i < annotations.size(); ++i) {
    for (const auto& tw : annotations[i].prominent) {
      out.push_back({tw.token, annotations[i].cluster_id, rho.rho[i] * tw.weight,
                     WordcloudScope::unified});
    }
  }
  std::sort(out.begin(), out.end(), [](const WordcloudEntry& a, const WordcloudEntry& b) {
    if (a.weight != b.weight) return a.weight > b.weight;
    if (a.cluster_id != b.cluster_id) return a.cluster_id < b.cluster_id;
    return a.token < b.token;
  });
  return out;
}

CentroidCorrelation centroid_correlation(const EmbeddingMatrix& centroids, double threshold) {
  if (centroids.rows() < 2) {
    throw EmptyInput("centroid_correlation: need at least two centroids");
  }
  const Eigen::Index k = centroids.rows();
  CentroidCorrelation corr;
  corr.threshold = threshold;
  corr.matrix = Eigen::MatrixXd::Identity(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    if (centroids.row(i).squaredNorm() == 0.0) {
      throw ZeroVector("centroid_correlation: centroid " + std::to_string(i) + " is zero");
    }
  }
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = i + 1; j < k; ++j) {
      const double c = cosine_similarity(centroids.row(i), centroids.row(j));
      corr.matrix(i, j) = c;
      corr.matrix(j, i) = c;
    }
  }
  return corr;
}

std::vector<MergeSuggestion> suggest_merges(const CentroidCorrelation& corr) {
  std::vector<MergeSuggestion> out;
  const Eigen::Index k = corr.matrix.rows();
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = i + 1; j < k; ++j) {
      if (corr.matrix(i, j) >= corr.threshold) {
        out.push_back({static_cast<int>(i), static_cast<int>(j), corr.matrix(i, j)});
      }
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const MergeSuggestion& a, const MergeSuggestion& b) {
    return a.similarity > b.similarity;
  });
  return out;
}

std::vector<ClusterStats> cluster_stats(
    std::span<const std::pair<int, std::vector<std::string>>> clusters) {
  std::vector<ClusterStats> out;
  out.reserve(clusters.size());
  for (const auto& [id, members] : clusters) {
    if (members.empty()) {
      throw EmptyCluster("cluster_stats: cluster " + std::to_string(id) + " has no members");
    }
    ClusterStats s;
    s.cluster_id = id;
    s.size = static_cast<int>(members.size());
    s.min_words = std::numeric_limits<int>::max();
    long total = 0;
    for (const auto& text : members) {
      const int n = static_cast<int>(whitespace_tokens(text).size());
      s.min_words = std::min(s.min_words, n);
      s.max_words = std::max(s.max_words, n);
      total += n;
    }
    s.avg_words = static_cast<double>(total) / static_cast<double>(members.size());
    out.push_back(s);
  }
  return out;
}

}  // namespace surveylens
