#ifndef SURVEYLENS_PROVIDERS_HPP
#define SURVEYLENS_PROVIDERS_HPP

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>

#include "surveylens/embedding.hpp"

namespace surveylens {

enum class ProviderKind { hash, cache, service };

std::string_view to_string(ProviderKind kind);

/// Source of sentence and token embeddings.
///
/// Implementations are immutable after construction and safe to share across
/// threads. Every vector a provider returns has length `dimension()`.
class EmbeddingProvider {
 public:
  virtual ~EmbeddingProvider() = default;

  virtual ProviderKind kind() const = 0;
  virtual Eigen::Index dimension() const = 0;
  virtual std::string model_id() const = 0;
  /// Only meaningful for the hash kind.
  virtual std::uint64_t seed() const { return 0; }

  /// One row per text, in input order.
  virtual EmbeddingMatrix embed(std::span<const std::string> texts) const = 0;
};

/// Validating front door over `provider.embed`: rejects empty batches (and
/// empty strings for cache/service providers), then checks the returned shape
/// and that every value is finite.
EmbeddingMatrix embed_texts(const EmbeddingProvider& provider,
                            std::span<const std::string> texts);

// ---------------------------------------------------------------------------
// Hash embedder

/// Deterministic stand-in for a sentence encoder.
///
/// Each token (see split_words) maps to a pseudo-random unit vector drawn from
/// a counter-based generator keyed by a 64-bit FNV-1a hash of the token and
/// the seed. A text embeds to the L2-normalised mean of its token vectors, so
/// texts that share tokens land closer together. A text without tokens
/// embeds to the token vector of the empty string.
///
/// Only integer arithmetic and correctly rounded IEEE operations are involved,
/// so the output is bit-identical across platforms.
EmbeddingVector hash_embed(std::string_view text, Eigen::Index dimension, std::uint64_t seed);

class HashEmbedder final : public EmbeddingProvider {
 public:
  HashEmbedder(Eigen::Index dimension, std::uint64_t seed);

  ProviderKind kind() const override { return ProviderKind::hash; }
  Eigen::Index dimension() const override { return dimension_; }
  std::string model_id() const override;
  std::uint64_t seed() const override { return seed_; }
  EmbeddingMatrix embed(std::span<const std::string> texts) const override;

 private:
  Eigen::Index dimension_;
  std::uint64_t seed_;
};

// ---------------------------------------------------------------------------
// Cache

/// Precomputed vectors keyed by exact text.
class EmbeddingCache {
 public:
  explicit EmbeddingCache(Eigen::Index dimension, std::string model_id = {});

  Eigen::Index dimension() const { return dimension_; }
  const std::string& model_id() const { return model_id_; }
  std::size_t size() const { return entries_.size(); }
  const std::map<std::string, EmbeddingVector, std::less<>>& entries() const {
    return entries_;
  }

  /// Throws DimensionMismatch on a wrong-length vector, MalformedCacheFile on
  /// a duplicate key.
  void insert(std::string text, EmbeddingVector vector);
  const EmbeddingVector* find(std::string_view text) const;

  friend bool operator==(const EmbeddingCache&, const EmbeddingCache&) = default;

 private:
  Eigen::Index dimension_;
  std::string model_id_;
  std::map<std::string, EmbeddingVector, std::less<>> entries_;
};

/// JSONL: a header line `{"dimension": V, "model_id": "..."}` followed by one
/// `{"text": "...", "vector": [...]}` per entry. Doubles are written in
/// shortest round-trip form, so load(save(c)) == c bit for bit.
void save_cache(const EmbeddingCache& cache, const std::filesystem::path& path);
EmbeddingCache load_cache(const std::filesystem::path& path);
EmbeddingCache parse_cache(std::string_view contents);
std::string serialize_cache(const EmbeddingCache& cache);

class CacheProvider final : public EmbeddingProvider {
 public:
  explicit CacheProvider(EmbeddingCache cache) : cache_(std::move(cache)) {}

  ProviderKind kind() const override { return ProviderKind::cache; }
  Eigen::Index dimension() const override { return cache_.dimension(); }
  std::string model_id() const override { return cache_.model_id(); }
  /// Throws CacheMiss for the first text not present.
  EmbeddingMatrix embed(std::span<const std::string> texts) const override;

  const EmbeddingCache& cache() const { return cache_; }

 private:
  EmbeddingCache cache_;
};

// ---------------------------------------------------------------------------
// HTTP service client

struct ServiceOptions {
  std::chrono::seconds timeout{30};
  int retries = 1;
  std::size_t batch_size = 64;
};

/// Client for `POST <endpoint>/embed` with body `{"texts": [...]}` answering
/// `{"dim": V, "embeddings": [[...], ...]}`.
class ServiceProvider final : public EmbeddingProvider {
 public:
  ServiceProvider(std::string endpoint_url, Eigen::Index dimension,
                  ServiceOptions options = {});

  ProviderKind kind() const override { return ProviderKind::service; }
  Eigen::Index dimension() const override { return dimension_; }
  std::string model_id() const override { return endpoint_; }
  EmbeddingMatrix embed(std::span<const std::string> texts) const override;

 private:
  EmbeddingMatrix embed_batch(std::span<const std::string> texts) const;

  std::string endpoint_;
  std::string scheme_host_port_;
  std::string path_prefix_;
  Eigen::Index dimension_;
  ServiceOptions options_;
};

/// Builds a provider from a `hash`, `cache:PATH` or `service:URL` spec.
/// `dimension` is the hash dimension, the expected service dimension, and for
/// caches a check applied only when `check_cache_dimension` is set.
/// Throws std::invalid_argument for an unknown spec.
std::unique_ptr<EmbeddingProvider> make_provider(std::string_view spec, Eigen::Index dimension,
                                                 std::uint64_t seed,
                                                 bool check_cache_dimension = false);

}  // namespace surveylens

#endif  // SURVEYLENS_PROVIDERS_HPP
