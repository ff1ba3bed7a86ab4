#include "surveylens/providers.hpp"

#include <httplib.h>

#include <fstream>
#include <json.hpp>
#include <sstream>

namespace surveylens {

using nlohmann::json;
using nlohmann::ordered_json;

std::string_view to_string(ProviderKind kind) {
  switch (kind) {
    case ProviderKind::hash:
      return "hash";
    case ProviderKind::cache:
      return "cache";
    case ProviderKind::service:
      return "service";
  }
  return "unknown";
}

EmbeddingMatrix embed_texts(const EmbeddingProvider& provider,
                            std::span<const std::string> texts) {
  if (texts.empty()) throw EmptyInput("embed_texts: no texts");
  if (provider.kind() != ProviderKind::hash) {
    for (const auto& t : texts) {
      if (t.empty()) throw EmptyInput("embed_texts: empty string");
    }
  }
  EmbeddingMatrix out = provider.embed(texts);
  if (out.rows() != static_cast<Eigen::Index>(texts.size())) {
    throw ProviderError("provider returned " + std::to_string(out.rows()) + " vectors for " +
                        std::to_string(texts.size()) + " texts");
  }
  if (out.cols() != provider.dimension()) {
    throw DimensionMismatch("provider returned dimension " + std::to_string(out.cols()) +
                            ", expected " + std::to_string(provider.dimension()));
  }
  if (!out.allFinite()) throw ProviderError("provider returned non-finite values");
  return out;
}

// ---------------------------------------------------------------------------
// Cache

EmbeddingCache::EmbeddingCache(Eigen::Index dimension, std::string model_id)
    : dimension_(dimension), model_id_(std::move(model_id)) {
  if (dimension < 1) throw std::invalid_argument("cache dimension must be positive");
}

void EmbeddingCache::insert(std::string text, EmbeddingVector vector) {
  if (vector.size() != dimension_) {
    throw DimensionMismatch("cache entry has dimension " + std::to_string(vector.size()) +
                            ", expected " + std::to_string(dimension_));
  }
  auto [it, inserted] = entries_.emplace(std::move(text), std::move(vector));
  if (!inserted) throw MalformedCacheFile("duplicate cache key: \"" + it->first + "\"");
}

const EmbeddingVector* EmbeddingCache::find(std::string_view text) const {
  auto it = entries_.find(text);
  return it == entries_.end() ? nullptr : &it->second;
}

std::string serialize_cache(const EmbeddingCache& cache) {
  std::string out;
  ordered_json header;
  header["dimension"] = cache.dimension();
  header["model_id"] = cache.model_id();
  out += header.dump() + "\n";
  for (const auto& [text, vec] : cache.entries()) {
    ordered_json line;
    line["text"] = text;
    line["vector"] = std::vector<double>(vec.data(), vec.data() + vec.size());
    out += line.dump() + "\n";
  }
  return out;
}

EmbeddingCache parse_cache(std::string_view contents) {
  std::istringstream in{std::string(contents)};
  std::string line;
  std::size_t lineno = 0;
  std::optional<EmbeddingCache> cache;
  auto fail = [&](const std::string& why) -> MalformedCacheFile {
    return MalformedCacheFile("cache line " + std::to_string(lineno) + ": " + why);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw fail(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw fail("expected a JSON object");
    if (!cache) {
      if (!j.contains("dimension") || !j["dimension"].is_number_integer()) {
        throw fail("header lacks an integer \"dimension\"");
      }
      const auto dim = j["dimension"].get<std::int64_t>();
      if (dim < 1) throw fail("dimension must be positive");
      std::string model_id;
      if (j.contains("model_id")) {
        if (!j["model_id"].is_string()) throw fail("\"model_id\" must be a string");
        model_id = j["model_id"].get<std::string>();
      }
      cache.emplace(static_cast<Eigen::Index>(dim), std::move(model_id));
      continue;
    }
    if (!j.contains("text") || !j["text"].is_string()) throw fail("missing \"text\"");
    if (!j.contains("vector") || !j["vector"].is_array()) throw fail("missing \"vector\"");
    const auto& arr = j["vector"];
    if (static_cast<Eigen::Index>(arr.size()) != cache->dimension()) {
      throw fail("vector has length " + std::to_string(arr.size()) + ", header says " +
                 std::to_string(cache->dimension()));
    }
    EmbeddingVector v(cache->dimension());
    for (std::size_t i = 0; i < arr.size(); ++i) {
      if (!arr[i].is_number()) throw fail("non-numeric vector entry");
      v[static_cast<Eigen::Index>(i)] = arr[i].get<double>();
    }
    std::string text = j["text"].get<std::string>();
    if (cache->find(text)) throw fail("duplicate text \"" + text + "\"");
    cache->insert(std::move(text), std::move(v));
  }
  if (!cache) throw MalformedCacheFile("cache file has no header line");
  return std::move(*cache);
}

void save_cache(const EmbeddingCache& cache, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << serialize_cache(cache);
  if (!out.flush()) throw IoError("failed writing " + path.string());
}

EmbeddingCache load_cache(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open cache file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_cache(buf.str());
}

EmbeddingMatrix CacheProvider::embed(std::span<const std::string> texts) const {
  EmbeddingMatrix out(static_cast<Eigen::Index>(texts.size()), cache_.dimension());
  for (std::size_t i = 0; i < texts.size(); ++i) {
    const EmbeddingVector* v = cache_.find(texts[i]);
    if (!v) throw CacheMiss(texts[i]);
    out.row(static_cast<Eigen::Index>(i)) = v->transpose();
  }
  return out;
}

// ---------------------------------------------------------------------------
// Service

ServiceProvider::ServiceProvider(std::string endpoint_url, Eigen::Index dimension,
                                 ServiceOptions options)
    : endpoint_(std::move(endpoint_url)), dimension_(dimension), options_(options) {
  if (dimension < 1) throw std::invalid_argument("service dimension must be positive");
  if (options_.batch_size == 0) throw std::invalid_argument("batch size must be positive");
  const auto scheme = endpoint_.find("://");
  if (scheme == std::string::npos || endpoint_.compare(0, scheme, "http") != 0) {
    throw std::invalid_argument("service URL must start with http://: " + endpoint_);
  }
  const auto slash = endpoint_.find('/', scheme + 3);
  scheme_host_port_ = endpoint_.substr(0, slash);
  if (slash != std::string::npos) path_prefix_ = endpoint_.substr(slash);
  while (!path_prefix_.empty() && path_prefix_.back() == '/') path_prefix_.pop_back();
}

EmbeddingMatrix ServiceProvider::embed(std::span<const std::string> texts) const {
  EmbeddingMatrix out(static_cast<Eigen::Index>(texts.size()), dimension_);
  for (std::size_t start = 0; start < texts.size(); start += options_.batch_size) {
    const std::size_t n = std::min(options_.batch_size, texts.size() - start);
    out.middleRows(static_cast<Eigen::Index>(start), static_cast<Eigen::Index>(n)) =
        embed_batch(texts.subspan(start, n));
  }
  return out;
}

EmbeddingMatrix ServiceProvider::embed_batch(std::span<const std::string> texts) const {
  httplib::Client client(scheme_host_port_);
  const auto secs = static_cast<time_t>(options_.timeout.count());
  client.set_connection_timeout(secs, 0);
  client.set_read_timeout(secs, 0);
  client.set_write_timeout(secs, 0);

  json body;
  body["texts"] = std::vector<std::string>(texts.begin(), texts.end());
  const std::string payload = body.dump();
  const std::string path = path_prefix_ + "/embed";

  std::string failure;
  for (int attempt = 0; attempt <= options_.retries; ++attempt) {
    auto res = client.Post(path, payload, "application/json");
    if (!res) {
      failure = "request to " + endpoint_ + path_prefix_ + "/embed failed: " +
                httplib::to_string(res.error());
      continue;
    }
    if (res->status != 200) {
      failure = "embedding service returned HTTP " + std::to_string(res->status);
      if (res->status >= 500) continue;
      break;
    }
    json j;
    try {
      j = json::parse(res->body);
    } catch (const json::parse_error&) {
      throw ServiceUnavailable("embedding service returned invalid JSON");
    }
    if (!j.contains("dim") || !j["dim"].is_number_integer() || !j.contains("embeddings") ||
        !j["embeddings"].is_array()) {
      throw ServiceUnavailable("embedding service response lacks \"dim\"/\"embeddings\"");
    }
    const auto dim = j["dim"].get<std::int64_t>();
    if (dim != dimension_) {
      throw DimensionMismatch("embedding service dimension " + std::to_string(dim) +
                              ", expected " + std::to_string(dimension_));
    }
    const auto& rows = j["embeddings"];
    if (rows.size() != texts.size()) {
      throw ServiceUnavailable("embedding service returned " + std::to_string(rows.size()) +
                               " vectors for " + std::to_string(texts.size()) + " texts");
    }
    EmbeddingMatrix out(static_cast<Eigen::Index>(texts.size()), dimension_);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const auto& row = rows[r];
      if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != dimension_) {
        throw DimensionMismatch("embedding service vector " + std::to_string(r) +
                                " has the wrong length");
      }
      for (std::size_t c = 0; c < row.size(); ++c) {
        if (!row[c].is_number()) throw ServiceUnavailable("non-numeric embedding value");
        out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = row[c].get<double>();
      }
    }
    return out;
  }
  throw ServiceUnavailable(failure);
}

std::unique_ptr<EmbeddingProvider> make_provider(std::string_view spec, Eigen::Index dimension,
                                                 std::uint64_t seed,
                                                 bool check_cache_dimension) {
  if (spec == "hash") return std::make_unique<HashEmbedder>(dimension, seed);
  if (spec.starts_with("cache:") && spec.size() > 6) {
    auto cache = load_cache(std::filesystem::path(std::string(spec.substr(6))));
    if (check_cache_dimension && cache.dimension() != dimension) {
      throw DimensionMismatch("cache dimension " + std::to_string(cache.dimension()) +
                              " differs from requested " + std::to_string(dimension));
    }
    return std::make_unique<CacheProvider>(std::move(cache));
  }
  if (spec.starts_with("service:") && spec.size() > 8) {
    return std::make_unique<ServiceProvider>(std::string(spec.substr(8)), dimension);
  }
  throw std::invalid_argument("unknown embedder \"" + std::string(spec) +
                              "\" (expected hash, cache:PATH or service:URL)");
}

}  // namespace surveylens
