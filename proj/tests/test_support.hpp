#ifndef SURVEYLENS_TEST_SUPPORT_HPP
#define SURVEYLENS_TEST_SUPPORT_HPP

#include <filesystem>
#include <random>
#include <string>

#include "surveylens/embedding.hpp"

namespace test_support {

inline std::filesystem::path source_dir() { return SURVEYLENS_SOURCE_DIR; }

inline std::filesystem::path fixture(const std::string& name) {
  return source_dir() / "data" / "fixtures" / name;
}

inline std::filesystem::path test_data(const std::string& name) {
  return source_dir() / "tests" / "data" / name;
}

/// Fresh empty directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("surveylens_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

/// `per_blob` Gaussian points around each of `centers` (rows).
inline surveylens::EmbeddingMatrix planted_blobs(const surveylens::EmbeddingMatrix& centers,
                                                 int per_blob, double sigma,
                                                 std::mt19937_64& rng) {
  std::normal_distribution<double> noise(0.0, sigma);
  surveylens::EmbeddingMatrix points(centers.rows() * per_blob, centers.cols());
  for (Eigen::Index b = 0; b < centers.rows(); ++b) {
    for (int p = 0; p < per_blob; ++p) {
      for (Eigen::Index d = 0; d < centers.cols(); ++d) {
        points(b * per_blob + p, d) = centers(b, d) + noise(rng);
      }
    }
  }
  return points;
}

}  // namespace test_support

#endif  // SURVEYLENS_TEST_SUPPORT_HPP
