#ifndef SURVEYLENS_ASSIGNMENT_HPP
#define SURVEYLENS_ASSIGNMENT_HPP

#include <Eigen/Dense>

#include <cmath>
#include <optional>
#include <vector>

#include "surveylens/embedding.hpp"

namespace surveylens {

/// Rows whose best similarity falls below this are flagged as likely off-topic.
inline constexpr double kLowSimilarityThreshold = 0.1;

/// Response-by-title cosine similarities.
template <typename Scalar>
struct AssignmentMatrix {
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> values;  // m x l

  Eigen::Index responses() const { return values.rows(); }
  Eigen::Index labels() const { return values.cols(); }
};

template <typename Scalar>
struct AssignmentResult {
  std::vector<int> assigned;          // per response, index into the labels
  std::vector<Scalar> best;           // winning similarity per response
  std::vector<bool> low_similarity;   // best < kLowSimilarityThreshold
  std::vector<int> counts;            // per label
  std::vector<std::optional<Scalar>> per_label_mean;
  std::vector<std::optional<Scalar>> per_label_std;  // population std
};

template <typename Scalar>
struct LabelStats {
  int label = 0;
  int count = 0;
  std::optional<Scalar> mean;  // absent when nothing was assigned
  std::optional<Scalar> std;
};

template <typename DerivedR, typename DerivedL>
AssignmentMatrix<typename DerivedR::Scalar> build_assignment_matrix(
    const Eigen::MatrixBase<DerivedR>& responses, const Eigen::MatrixBase<DerivedL>& labels) {
  using Scalar = typename DerivedR::Scalar;
  if (responses.rows() == 0 || labels.rows() == 0) {
    throw EmptyInput("build_assignment_matrix: need at least one response and one label");
  }
  if (responses.cols() != labels.cols()) {
    throw DimensionMismatch("build_assignment_matrix: response dimension " +
                            std::to_string(responses.cols()) + " vs label dimension " +
                            std::to_string(labels.cols()));
  }
  AssignmentMatrix<Scalar> a;
  a.values.resize(responses.rows(), labels.rows());
  for (Eigen::Index i = 0; i < responses.rows(); ++i) {
    for (Eigen::Index j = 0; j < labels.rows(); ++j) {
      a.values(i, j) = cosine_similarity(responses.row(i), labels.row(j));
    }
  }
  return a;
}

namespace detail {

template <typename Scalar>
void summarize_labels(AssignmentResult<Scalar>& r, Eigen::Index l) {
  const auto nl = static_cast<std::size_t>(l);
  r.counts.assign(nl, 0);
  std::vector<Scalar> sum(nl, Scalar(0));
  for (std::size_t i = 0; i < r.assigned.size(); ++i) {
    const auto j = static_cast<std::size_t>(r.assigned[i]);
    ++r.counts[j];
    sum[j] += r.best[i];
  }
  r.per_label_mean.assign(nl, std::nullopt);
  r.per_label_std.assign(nl, std::nullopt);
  std::vector<Scalar> sq(nl, Scalar(0));
  for (std::size_t j = 0; j < nl; ++j) {
    if (r.counts[j] > 0) r.per_label_mean[j] = sum[j] / static_cast<Scalar>(r.counts[j]);
  }
  for (std::size_t i = 0; i < r.assigned.size(); ++i) {
    const auto j = static_cast<std::size_t>(r.assigned[i]);
    const Scalar d = r.best[i] - *r.per_label_mean[j];
    sq[j] += d * d;
  }
  for (std::size_t j = 0; j < nl; ++j) {
    if (r.counts[j] > 0) r.per_label_std[j] = std::sqrt(sq[j] / static_cast<Scalar>(r.counts[j]));
  }
}

}  // namespace detail

/// Row-wise argmax of the matrix; exact ties go to the smallest label index.
template <typename Scalar>
AssignmentResult<Scalar> assign_labels(const AssignmentMatrix<Scalar>& a) {
  if (a.responses() == 0 || a.labels() == 0) throw EmptyInput("assign_labels: empty matrix");
  if (!a.values.allFinite()) throw Error("assign_labels: non-finite entry");
  AssignmentResult<Scalar> r;
  const auto m = static_cast<std::size_t>(a.responses());
  r.assigned.resize(m);
  r.best.resize(m);
  r.low_similarity.resize(m);
  for (Eigen::Index i = 0; i < a.responses(); ++i) {
    Eigen::Index best = 0;
    for (Eigen::Index j = 1; j < a.labels(); ++j) {
      if (a.values(i, j) > a.values(i, best)) best = j;
    }
    const auto si = static_cast<std::size_t>(i);
    r.assigned[si] = static_cast<int>(best);
    r.best[si] = a.values(i, best);
    r.low_similarity[si] = r.best[si] < static_cast<Scalar>(kLowSimilarityThreshold);
  }
  detail::summarize_labels(r, a.labels());
  return r;
}

/// Per-label (count, mean, std) table recomputed from `a` and the assignment.
template <typename Scalar>
std::vector<LabelStats<Scalar>> label_similarity_stats(const AssignmentMatrix<Scalar>& a,
                                                       const AssignmentResult<Scalar>& result) {
  if (static_cast<Eigen::Index>(result.assigned.size()) != a.responses()) {
    throw MismatchedInputs("label_similarity_stats: assignment covers " +
                           std::to_string(result.assigned.size()) + " responses, matrix has " +
                           std::to_string(a.responses()));
  }
  AssignmentResult<Scalar> check;
  check.assigned = result.assigned;
  check.best.resize(result.assigned.size());
  for (std::size_t i = 0; i < result.assigned.size(); ++i) {
    const int j = result.assigned[i];
    if (j < 0 || j >= a.labels()) {
      throw MismatchedInputs("label_similarity_stats: label index " + std::to_string(j) +
                             " out of range");
    }
    check.best[i] = a.values(static_cast<Eigen::Index>(i), j);
  }
  detail::summarize_labels(check, a.labels());

  std::vector<LabelStats<Scalar>> table;
  table.reserve(static_cast<std::size_t>(a.labels()));
  for (Eigen::Index j = 0; j < a.labels(); ++j) {
    const auto sj = static_cast<std::size_t>(j);
    table.push_back({static_cast<int>(j), check.counts[sj], check.per_label_mean[sj],
                     check.per_label_std[sj]});
  }
  return table;
}

}  // namespace surveylens

#endif  // SURVEYLENS_ASSIGNMENT_HPP
