#include <cmath>

#include "surveylens/providers.hpp"
#include "surveylens/text.hpp"

namespace surveylens {

namespace {

constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ULL;
constexpr std::uint64_t kFnvPrime = 0x100000001b3ULL;
constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = kFnvOffset;
  for (unsigned char c : s) {
    h ^= c;
    h *= kFnvPrime;
  }
  return h;
}

// splitmix64 finaliser.
std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

EmbeddingVector token_vector(std::string_view token, Eigen::Index dimension,
                             std::uint64_t seed) {
  const std::uint64_t key = mix64(fnv1a64(token) ^ mix64(seed + kGolden));
  EmbeddingVector v(dimension);
  for (Eigen::Index i = 0; i < dimension; ++i) {
    const std::uint64_t bits = mix64(key + static_cast<std::uint64_t>(i + 1) * kGolden);
    // 53 random bits -> [0, 1) -> [-1, 1)
    const double u = static_cast<double>(bits >> 11) * 0x1.0p-53;
    v[i] = 2.0 * u - 1.0;
  }
  // Probability of an all-zero draw is nil, but keep the function total.
  const double n = v.norm();
  if (n > 0.0) v /= n;
  return v;
}

}  // namespace

EmbeddingVector hash_embed(std::string_view text, Eigen::Index dimension, std::uint64_t seed) {
  if (dimension < 2) throw std::invalid_argument("hash_embed: dimension must be >= 2");
  const auto tokens = split_words(text);
  if (tokens.empty()) return token_vector("", dimension, seed);

  EmbeddingVector sum = EmbeddingVector::Zero(dimension);
  for (const auto& t : tokens) sum += token_vector(t, dimension, seed);
  sum /= static_cast<double>(tokens.size());
  const double n = sum.norm();
  // Opposite token vectors cancelling exactly is not a realistic case.
  if (n == 0.0) return token_vector("", dimension, seed);
  return sum / n;
}

HashEmbedder::HashEmbedder(Eigen::Index dimension, std::uint64_t seed)
    : dimension_(dimension), seed_(seed) {
  if (dimension < 2) throw std::invalid_argument("hash embedder dimension must be >= 2");
}

std::string HashEmbedder::model_id() const { return "hash-fnv1a-splitmix64"; }

EmbeddingMatrix HashEmbedder::embed(std::span<const std::string> texts) const {
  EmbeddingMatrix out(static_cast<Eigen::Index>(texts.size()), dimension_);
  for (std::size_t i = 0; i < texts.size(); ++i) {
    out.row(static_cast<Eigen::Index>(i)) = hash_embed(texts[i], dimension_, seed_).transpose();
  }
  return out;
}

}  // namespace surveylens
