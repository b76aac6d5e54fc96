#pragma once

#include <chrono>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace kgbench::retrieval {

struct EmbedResult {
  std::vector<float> vec;
  std::optional<std::string> error;
  bool retriable = false;

  bool ok() const { return !error.has_value(); }
};

class EmbeddingProvider {
 public:
  virtual ~EmbeddingProvider() = default;
  // Precondition: text non-empty (throws std::invalid_argument otherwise).
  virtual EmbedResult embed(const std::string& text) = 0;
  virtual size_t dim() const = 0;
  virtual std::string id() const = 0;
};

// Deterministic hashed bag-of-words projection, L2-normalized. Same text
// always yields the same unit vector, which keeps offline runs replayable.
class MockEmbeddingProvider : public EmbeddingProvider {
 public:
  explicit MockEmbeddingProvider(size_t dim = 64) : dim_(dim) {}
  EmbedResult embed(const std::string& text) override;
  size_t dim() const override { return dim_; }
  std::string id() const override { return "mock-bow-" + std::to_string(dim_); }

 private:
  size_t dim_;
};

// POST {endpoint}{path} with {"model":..., "input":...}; accepts either
// {"embedding":[...]} or {"embeddings":[[...]]} in the response.
class HttpEmbeddingProvider : public EmbeddingProvider {
 public:
  HttpEmbeddingProvider(std::string endpoint, std::string model, size_t dim,
                        std::chrono::milliseconds timeout, std::string path = "/api/embeddings");
  EmbedResult embed(const std::string& text) override;
  size_t dim() const override { return dim_; }
  std::string id() const override { return "http:" + model_; }

 private:
  std::string endpoint_;
  std::string model_;
  size_t dim_;
  std::chrono::milliseconds timeout_;
  std::string path_;
};

// File-backed cache keyed by (provider id, text hash); entries are loaded
// at construction and appended on miss.
class CachingEmbedder : public EmbeddingProvider {
 public:
  CachingEmbedder(EmbeddingProvider& provider, std::string cache_path);
  EmbedResult embed(const std::string& text) override;
  size_t dim() const override { return provider_.dim(); }
  std::string id() const override { return provider_.id(); }
  size_t hits() const { return hits_; }
  size_t misses() const { return misses_; }

 private:
  EmbeddingProvider& provider_;
  std::string cache_path_;
  std::map<std::string, std::vector<float>> cache_;
  size_t hits_ = 0;
  size_t misses_ = 0;
};

}  // namespace kgbench::retrieval
