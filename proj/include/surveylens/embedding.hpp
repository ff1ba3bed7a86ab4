#ifndef SURVEYLENS_EMBEDDING_HPP
#define SURVEYLENS_EMBEDDING_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <string>

#include "surveylens/errors.hpp"

namespace surveylens {

/// A text's position in semantic space.
template <typename Scalar>
using Embedding = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// One embedding per row.
template <typename Scalar>
using EmbeddingRows =
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

using EmbeddingVector = Embedding<double>;
using EmbeddingMatrix = EmbeddingRows<double>;

inline constexpr Eigen::Index kDefaultDimension = 384;

/// Cosine of the angle between `u` and `v`, clamped to [-1, 1].
///
/// Both arguments may be any Eigen vector expression (rows of a matrix,
/// blocks, ...). Throws DimensionMismatch when lengths differ and ZeroVector
/// when either norm vanishes.
template <typename DerivedU, typename DerivedV>
typename DerivedU::Scalar cosine_similarity(const Eigen::MatrixBase<DerivedU>& u,
                                            const Eigen::MatrixBase<DerivedV>& v) {
  using Scalar = typename DerivedU::Scalar;
  if (u.size() != v.size()) {
    throw DimensionMismatch("cosine_similarity: lengths " + std::to_string(u.size()) +
                            " and " + std::to_string(v.size()));
  }
  const Scalar nu = u.norm();
  const Scalar nv = v.norm();
  if (nu == Scalar(0) || nv == Scalar(0)) {
    throw ZeroVector("cosine_similarity: zero-norm vector");
  }
  const Scalar c = u.dot(v) / (nu * nv);
  return std::clamp(c, Scalar(-1), Scalar(1));
}

/// Elementwise mean of the rows of `rows`.
template <typename Derived>
Embedding<typename Derived::Scalar> mean_embedding(const Eigen::MatrixBase<Derived>& rows) {
  using Scalar = typename Derived::Scalar;
  if (rows.rows() == 0) throw EmptyInput("mean_embedding: no vectors");
  Embedding<Scalar> sum = Embedding<Scalar>::Zero(rows.cols());
  for (Eigen::Index i = 0; i < rows.rows(); ++i) sum += rows.row(i).transpose();
  return sum / static_cast<Scalar>(rows.rows());
}

/// Throws unless every entry of `m` is finite.
template <typename Derived>
void require_finite(const Eigen::MatrixBase<Derived>& m, const char* what) {
  if (!m.allFinite()) throw Error(std::string(what) + ": non-finite value");
}

}  // namespace surveylens

#endif  // SURVEYLENS_EMBEDDING_HPP
