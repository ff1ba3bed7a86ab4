#ifndef SURVEYLENS_CLUSTERING_HPP
#define SURVEYLENS_CLUSTERING_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "surveylens/embedding.hpp"

namespace surveylens {

struct ClusteringConfig {
  int k_min = 2;
  /// Defaults to min(20, m - 1) when unset.
  std::optional<int> k_max;
  int max_iterations = 300;
  /// Largest centroid shift (Euclidean) still counted as converged.
  double tolerance = 1e-6;
  std::uint64_t seed = 0;
  /// Independent initialisations per k; restart r uses seed + r.
  int restarts = 10;
};

template <typename Scalar>
struct ClusterModel {
  int k = 0;
  EmbeddingRows<Scalar> centroids;  // k x dim
  std::vector<int> labels;          // one per input row, in [0, k)
  Scalar inertia = 0;               // sum of squared distances to own centroid
};

template <typename Scalar>
struct SilhouetteResult {
  std::vector<Scalar> per_sample;
  Scalar score = 0;
};

template <typename Scalar>
struct KSelectionResult {
  int k_star = 0;
  std::map<int, Scalar> scores;
  ClusterModel<Scalar> model;
};

namespace detail {

/// Uniform double in [0, 1) from the top 53 bits; std::uniform_real_distribution
/// is not specified bit-for-bit across standard libraries.
inline double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

template <typename Derived>
void require_rows(const Eigen::MatrixBase<Derived>& points, const char* what) {
  if (points.rows() == 0) throw EmptyInput(std::string(what) + ": no vectors");
  if (points.cols() == 0) throw DimensionMismatch(std::string(what) + ": zero-dimensional vectors");
}

/// k-means++ seeding: first centre uniform, the rest by squared-distance
/// weighted sampling.
template <typename Derived>
EmbeddingRows<typename Derived::Scalar> seed_centroids(const Eigen::MatrixBase<Derived>& points,
                                                       int k, std::mt19937_64& rng) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index m = points.rows();
  EmbeddingRows<Scalar> centroids(k, points.cols());
  auto first = static_cast<Eigen::Index>(unit_uniform(rng) * static_cast<double>(m));
  first = std::min(first, m - 1);
  centroids.row(0) = points.row(first);

  std::vector<Scalar> d2(static_cast<std::size_t>(m));
  for (Eigen::Index i = 0; i < m; ++i) {
    d2[static_cast<std::size_t>(i)] = (points.row(i) - centroids.row(0)).squaredNorm();
  }
  for (int c = 1; c < k; ++c) {
    Scalar total = 0;
    for (Scalar v : d2) total += v;
    Eigen::Index pick = -1;
    if (total > Scalar(0)) {
      const Scalar target = static_cast<Scalar>(unit_uniform(rng)) * total;
      Scalar acc = 0;
      for (Eigen::Index i = 0; i < m; ++i) {
        const Scalar w = d2[static_cast<std::size_t>(i)];
        if (w <= Scalar(0)) continue;
        acc += w;
        pick = i;
        if (acc > target) break;
      }
    } else {
      pick = std::min(static_cast<Eigen::Index>(unit_uniform(rng) * static_cast<double>(m)), m - 1);
    }
    centroids.row(c) = points.row(pick);
    for (Eigen::Index i = 0; i < m; ++i) {
      auto& cur = d2[static_cast<std::size_t>(i)];
      cur = std::min(cur, (points.row(i) - centroids.row(c)).squaredNorm());
    }
  }
  return centroids;
}

/// Nearest centroid per row (ties to the smallest index). Returns the number
/// of labels that changed; fills `dist2` and `counts`.
template <typename DerivedP, typename Scalar>
std::size_t assign_nearest(const Eigen::MatrixBase<DerivedP>& points,
                           const EmbeddingRows<Scalar>& centroids, std::vector<int>& labels,
                           std::vector<Scalar>& dist2, std::vector<int>& counts) {
  const Eigen::Index m = points.rows();
  const auto k = static_cast<int>(centroids.rows());
  counts.assign(static_cast<std::size_t>(k), 0);
  dist2.resize(static_cast<std::size_t>(m));
  std::size_t changed = 0;
  for (Eigen::Index i = 0; i < m; ++i) {
    int best = 0;
    Scalar best_d = (points.row(i) - centroids.row(0)).squaredNorm();
    for (int c = 1; c < k; ++c) {
      const Scalar d = (points.row(i) - centroids.row(c)).squaredNorm();
      if (d < best_d) {
        best_d = d;
        best = c;
      }
    }
    auto& lab = labels[static_cast<std::size_t>(i)];
    if (lab != best) {
      lab = best;
      ++changed;
    }
    dist2[static_cast<std::size_t>(i)] = best_d;
    ++counts[static_cast<std::size_t>(best)];
  }
  return changed;
}

/// Moves the point farthest from its centroid (taken from a cluster with at
/// least two members) into each empty cluster.
template <typename DerivedP, typename Scalar>
void fill_empty_clusters(const Eigen::MatrixBase<DerivedP>& points,
                         EmbeddingRows<Scalar>& centroids, std::vector<int>& labels,
                         std::vector<Scalar>& dist2, std::vector<int>& counts) {
  const auto k = static_cast<int>(centroids.rows());
  for (int c = 0; c < k; ++c) {
    if (counts[static_cast<std::size_t>(c)] > 0) continue;
    Eigen::Index far = -1;
    Scalar far_d = -1;
    for (Eigen::Index i = 0; i < points.rows(); ++i) {
      const auto si = static_cast<std::size_t>(i);
      if (counts[static_cast<std::size_t>(labels[si])] < 2) continue;
      if (dist2[si] > far_d) {
        far_d = dist2[si];
        far = i;
      }
    }
    if (far < 0) break;  // fewer points than clusters; callers prevent this
    const auto sf = static_cast<std::size_t>(far);
    --counts[static_cast<std::size_t>(labels[sf])];
    labels[sf] = c;
    ++counts[static_cast<std::size_t>(c)];
    dist2[sf] = 0;
    centroids.row(c) = points.row(far);
  }
}

}  // namespace detail

/// One Lloyd run from a k-means++ initialisation drawn with `seed`.
///
/// When `inertia_trace` is given, the inertia after every assignment step is
/// appended to it. Never returns empty clusters.
template <typename Derived>
ClusterModel<typename Derived::Scalar> lloyd_kmeans(
    const Eigen::MatrixBase<Derived>& points, int k, int max_iterations, double tolerance,
    std::uint64_t seed, std::vector<typename Derived::Scalar>* inertia_trace = nullptr) {
  using Scalar = typename Derived::Scalar;
  detail::require_rows(points, "kmeans");
  const Eigen::Index m = points.rows();
  if (k < 1) throw InvalidConfig("kmeans: k must be positive");
  if (k > m) {
    throw KTooLarge("kmeans: k=" + std::to_string(k) + " exceeds " + std::to_string(m) +
                    " vectors");
  }

  std::mt19937_64 rng(seed);
  ClusterModel<Scalar> model;
  model.k = k;
  model.centroids = detail::seed_centroids(points, k, rng);
  model.labels.assign(static_cast<std::size_t>(m), -1);

  std::vector<Scalar> dist2;
  std::vector<int> counts;
  bool shift_converged = false;
  for (int it = 0; it < std::max(1, max_iterations); ++it) {
    const std::size_t changed =
        detail::assign_nearest(points, model.centroids, model.labels, dist2, counts);
    if (inertia_trace) {
      Scalar total = 0;
      for (Scalar d : dist2) total += d;
      inertia_trace->push_back(total);
    }
    const bool has_empty = std::find(counts.begin(), counts.end(), 0) != counts.end();
    if (!has_empty && (changed == 0 || shift_converged)) break;
    if (it + 1 == std::max(1, max_iterations)) break;

    EmbeddingRows<Scalar> updated = EmbeddingRows<Scalar>::Zero(k, points.cols());
    for (Eigen::Index i = 0; i < m; ++i) {
      updated.row(model.labels[static_cast<std::size_t>(i)]) += points.row(i);
    }
    for (int c = 0; c < k; ++c) {
      if (counts[static_cast<std::size_t>(c)] > 0) {
        updated.row(c) /= static_cast<Scalar>(counts[static_cast<std::size_t>(c)]);
      }
    }
    // Reseed empty centroids at the points farthest from their centroid.
    std::vector<Scalar> spare = dist2;
    for (int c = 0; c < k; ++c) {
      if (counts[static_cast<std::size_t>(c)] > 0) continue;
      const auto far = std::distance(spare.begin(), std::max_element(spare.begin(), spare.end()));
      updated.row(c) = points.row(far);
      spare[static_cast<std::size_t>(far)] = -1;
    }
    Scalar shift = 0;
    for (int c = 0; c < k; ++c) {
      shift = std::max(shift, (updated.row(c) - model.centroids.row(c)).norm());
    }
    model.centroids = std::move(updated);
    shift_converged = shift <= static_cast<Scalar>(tolerance);
  }

  // Only reachable with duplicate points or an exhausted iteration budget.
  if (std::find(counts.begin(), counts.end(), 0) != counts.end()) {
    detail::fill_empty_clusters(points, model.centroids, model.labels, dist2, counts);
  }
  model.inertia = 0;
  for (Eigen::Index i = 0; i < m; ++i) {
    model.inertia +=
        (points.row(i) - model.centroids.row(model.labels[static_cast<std::size_t>(i)]))
            .squaredNorm();
  }
  return model;
}

/// Best-of-`config.restarts` Lloyd k-means (lowest inertia; earliest restart on
/// ties). k = 1 yields the mean of all rows.
template <typename Derived>
ClusterModel<typename Derived::Scalar> kmeans(const Eigen::MatrixBase<Derived>& points, int k,
                                              const ClusteringConfig& config) {
  if (config.restarts < 1) throw InvalidConfig("kmeans: restarts must be positive");
  if (config.max_iterations < 1) throw InvalidConfig("kmeans: max_iterations must be positive");
  auto best = lloyd_kmeans(points, k, config.max_iterations, config.tolerance, config.seed);
  for (int r = 1; r < config.restarts; ++r) {
    auto candidate = lloyd_kmeans(points, k, config.max_iterations, config.tolerance,
                                  config.seed + static_cast<std::uint64_t>(r));
    if (candidate.inertia < best.inertia) best = std::move(candidate);
  }
  return best;
}

/// Mean silhouette over all samples with Euclidean distance.
///
/// For sample i in cluster C: cohesion c(i) is the mean distance to the other
/// members of C, separation s(i) the smallest mean distance to the members of
/// any other non-empty cluster. The per-sample value is (s - c) / max(c, s),
/// or exactly 0 when C has a single member. Labels may be any non-negative
/// integers; at least two distinct values are required.
template <typename Derived>
SilhouetteResult<typename Derived::Scalar> silhouette_score(
    const Eigen::MatrixBase<Derived>& points, const std::vector<int>& labels) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index m = points.rows();
  if (static_cast<Eigen::Index>(labels.size()) != m) {
    throw LengthMismatch("silhouette_score: " + std::to_string(labels.size()) + " labels for " +
                         std::to_string(m) + " vectors");
  }
  int k = 0;
  for (int l : labels) {
    if (l < 0) throw std::invalid_argument("silhouette_score: negative label");
    k = std::max(k, l + 1);
  }
  std::vector<int> sizes(static_cast<std::size_t>(k), 0);
  for (int l : labels) ++sizes[static_cast<std::size_t>(l)];
  if (std::count_if(sizes.begin(), sizes.end(), [](int s) { return s > 0; }) < 2) {
    throw SingleCluster("silhouette_score: need at least two distinct labels");
  }

  SilhouetteResult<Scalar> result;
  result.per_sample.resize(static_cast<std::size_t>(m));
  std::vector<Scalar> sums(static_cast<std::size_t>(k));
  Scalar total = 0;
  for (Eigen::Index i = 0; i < m; ++i) {
    const auto own = static_cast<std::size_t>(labels[static_cast<std::size_t>(i)]);
    Scalar value = 0;
    if (sizes[own] > 1) {
      std::fill(sums.begin(), sums.end(), Scalar(0));
      for (Eigen::Index j = 0; j < m; ++j) {
        if (j == i) continue;
        sums[static_cast<std::size_t>(labels[static_cast<std::size_t>(j)])] +=
            (points.row(i) - points.row(j)).norm();
      }
      const Scalar cohesion = sums[own] / static_cast<Scalar>(sizes[own] - 1);
      Scalar separation = std::numeric_limits<Scalar>::infinity();
      for (std::size_t c = 0; c < sums.size(); ++c) {
        if (c == own || sizes[c] == 0) continue;
        separation = std::min(separation, sums[c] / static_cast<Scalar>(sizes[c]));
      }
      const Scalar denom = std::max(cohesion, separation);
      value = denom > Scalar(0) ? (separation - cohesion) / denom : Scalar(0);
    }
    result.per_sample[static_cast<std::size_t>(i)] = value;
    total += value;
  }
  result.score = total / static_cast<Scalar>(m);
  return result;
}

/// Resolved [k_min, k_max] for `m` samples; throws TooFewSamples when m < 3 and
/// InvalidConfig when the range is empty or out of bounds.
inline std::pair<int, int> k_range(Eigen::Index m, const ClusteringConfig& config) {
  if (m < 3) {
    throw TooFewSamples("at least 3 responses are required for clustering, got " +
                        std::to_string(m));
  }
  const int upper = static_cast<int>(m) - 1;
  const int k_max = config.k_max.value_or(std::min(20, upper));
  if (config.k_min < 2 || k_max < config.k_min || k_max > upper) {
    throw InvalidConfig("k range [" + std::to_string(config.k_min) + ", " +
                        std::to_string(k_max) + "] invalid for " + std::to_string(m) +
                        " samples (need 2 <= k_min <= k_max <= " + std::to_string(upper) + ")");
  }
  return {config.k_min, k_max};
}

/// Sweeps k over the configured range, scores each k-means model by
/// silhouette, and keeps the maximiser (smallest k on ties).
template <typename Derived>
KSelectionResult<typename Derived::Scalar> find_optimal_k(const Eigen::MatrixBase<Derived>& points,
                                                          const ClusteringConfig& config) {
  const auto [k_min, k_max] = k_range(points.rows(), config);
  KSelectionResult<typename Derived::Scalar> result;
  for (int k = k_min; k <= k_max; ++k) {
    auto model = kmeans(points, k, config);
    const auto score = silhouette_score(points, model.labels).score;
    result.scores.emplace(k, score);
    if (k == k_min || score > result.scores.at(result.k_star)) {
      result.k_star = k;
      result.model = std::move(model);
    }
  }
  return result;
}

}  // namespace surveylens

#endif  // SURVEYLENS_CLUSTERING_HPP
