#include <doctest.h>

#include <random>

#include "surveylens/assignment.hpp"

using namespace surveylens;

namespace {

AssignmentMatrix<double> matrix(std::initializer_list<std::initializer_list<double>> rows) {
  AssignmentMatrix<double> a;
  a.values.resize(static_cast<Eigen::Index>(rows.size()),
                  static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    Eigen::Index j = 0;
    for (double v : row) a.values(i, j++) = v;
    ++i;
  }
  return a;
}

}  // namespace

TEST_CASE("build_assignment_matrix on an orthonormal basis") {
  EmbeddingMatrix responses(1, 2), labels(2, 2);
  responses << 1, 0;
  labels << 1, 0, 0, 1;
  const auto a = build_assignment_matrix(responses, labels);
  REQUIRE(a.values.rows() == 1);
  REQUIRE(a.values.cols() == 2);
  CHECK(a.values(0, 0) == 1.0);
  CHECK(a.values(0, 1) == 0.0);
}

TEST_CASE("build_assignment_matrix rows ignore label scaling") {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> n;
  EmbeddingMatrix responses(6, 5), labels(3, 5);
  for (Eigen::Index i = 0; i < responses.size(); ++i) responses.data()[i] = n(rng);
  for (Eigen::Index i = 0; i < labels.size(); ++i) labels.data()[i] = n(rng);
  const auto a = build_assignment_matrix(responses, labels);
  EmbeddingMatrix scaled = labels;
  scaled.row(1) *= 2;
  const auto b = build_assignment_matrix(responses, scaled);
  CHECK((a.values - b.values).cwiseAbs().maxCoeff() <= 1e-15);
}

TEST_CASE("build_assignment_matrix errors") {
  EmbeddingMatrix ok(1, 2), zero(1, 2), wide(1, 3);
  ok << 1, 0;
  zero << 0, 0;
  wide << 1, 0, 0;
  CHECK_THROWS_AS(build_assignment_matrix(ok, zero), ZeroVector);
  CHECK_THROWS_AS(build_assignment_matrix(ok, wide), DimensionMismatch);
  CHECK_THROWS_AS(build_assignment_matrix(EmbeddingMatrix(0, 2), ok), EmptyInput);
}

TEST_CASE("assign_labels picks the dominant column") {
  const auto r = assign_labels(matrix({{1.0, 0.0}}));
  CHECK(r.assigned == std::vector<int>{0});
  CHECK(r.counts == std::vector<int>{1, 0});
  CHECK(r.per_label_mean[0] == 1.0);
  CHECK_FALSE(r.per_label_mean[1].has_value());
  CHECK_FALSE(r.per_label_std[1].has_value());
}

TEST_CASE("assign_labels breaks exact ties toward the smallest index") {
  EmbeddingMatrix responses(1, 2), labels(2, 2);
  responses << 1, 1;
  labels << 1, 0, 0, 1;
  const auto a = build_assignment_matrix(responses, labels);
  CHECK(a.values(0, 0) == a.values(0, 1));
  CHECK(a.values(0, 0) == doctest::Approx(0.70710678));
  CHECK(assign_labels(a).assigned == std::vector<int>{0});

  CHECK(assign_labels(matrix({{0.2, 0.5, 0.5}, {0.3, 0.3, 0.3}})).assigned ==
        std::vector<int>{1, 0});
}

TEST_CASE("assign_labels flags low best similarity") {
  const auto r = assign_labels(matrix({{0.05, 0.09}, {0.5, 0.1}}));
  CHECK(r.low_similarity == std::vector<bool>{true, false});
}

TEST_CASE("assign_labels properties on random matrices") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> n;
  std::uniform_real_distribution<double> alpha(0.01, 100);
  for (int trial = 0; trial < 200; ++trial) {
    const int m = 1 + trial % 17, l = 1 + trial % 6, dim = 2 + trial % 5;
    EmbeddingMatrix responses(m, dim), labels(l, dim);
    for (Eigen::Index i = 0; i < responses.size(); ++i) responses.data()[i] = n(rng);
    for (Eigen::Index i = 0; i < labels.size(); ++i) labels.data()[i] = n(rng);
    const auto a = build_assignment_matrix(responses, labels);
    const auto r = assign_labels(a);

    int total = 0;
    for (int c : r.counts) total += c;
    CHECK(total == m);
    for (int i = 0; i < m; ++i) {
      const int j = r.assigned[static_cast<std::size_t>(i)];
      REQUIRE(j >= 0);
      REQUIRE(j < l);
      for (int o = 0; o < l; ++o) CHECK(a.values(i, j) >= a.values(i, o));
      CHECK(std::abs(a.values(i, j)) <= 1.0);
    }

    const double s = alpha(rng);
    const auto scaled = assign_labels(build_assignment_matrix(EmbeddingMatrix(s * responses),
                                                              EmbeddingMatrix(s * labels)));
    CHECK(scaled.assigned == r.assigned);
  }
}

TEST_CASE("label_similarity_stats") {
  SUBCASE("singleton") {
    const auto a = matrix({{0.8}});
    const auto t = label_similarity_stats(a, assign_labels(a));
    REQUIRE(t.size() == 1);
    CHECK(t[0].count == 1);
    CHECK(*t[0].mean == 0.8);
    CHECK(*t[0].std == 0.0);
  }
  SUBCASE("population standard deviation") {
    const auto a = matrix({{0.6, 0.1}, {0.8, 0.2}});
    const auto t = label_similarity_stats(a, assign_labels(a));
    CHECK(t[0].count == 2);
    CHECK(*t[0].mean == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(*t[0].std == doctest::Approx(0.1).epsilon(1e-12));
  }
  SUBCASE("empty label is absent, not zero") {
    const auto a = matrix({{0.9, 0.1}});
    const auto t = label_similarity_stats(a, assign_labels(a));
    CHECK(t[1].count == 0);
    CHECK_FALSE(t[1].mean.has_value());
    CHECK_FALSE(t[1].std.has_value());
  }
  SUBCASE("matches the result's own statistics") {
    const auto a = matrix({{0.9, 0.1, 0.3}, {0.2, 0.4, 0.1}, {0.5, 0.45, 0.0}});
    const auto r = assign_labels(a);
    const auto t = label_similarity_stats(a, r);
    for (std::size_t j = 0; j < t.size(); ++j) {
      CHECK(t[j].count == r.counts[j]);
      CHECK(t[j].mean == r.per_label_mean[j]);
      CHECK(t[j].std == r.per_label_std[j]);
    }
  }
  SUBCASE("mismatched inputs") {
    const auto a = matrix({{0.9, 0.1}});
    auto r = assign_labels(matrix({{0.9, 0.1}, {0.1, 0.9}}));
    CHECK_THROWS_AS(label_similarity_stats(a, r), MismatchedInputs);
    r = assign_labels(a);
    r.assigned[0] = 5;
    CHECK_THROWS_AS(label_similarity_stats(a, r), MismatchedInputs);
  }
}
