#include "retrieval/embedding.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "httplib.h"
#include "json.hpp"
#include "retrieval/retrieval.hpp"
#include "util/strings.hpp"

namespace kgbench::retrieval {

EmbedResult MockEmbeddingProvider::embed(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("embed: text must be non-empty");
  std::vector<float> vec(dim_, 0.0f);
  for (const std::string& token : tokenize(text)) {
    const uint64_t h = util::fnv1a64(token);
    vec[h % dim_] += 1.0f + static_cast<float>((h >> 32) % 7) * 0.125f;
  }
  double norm = 0;
  for (float v : vec) norm += static_cast<double>(v) * v;
  if (norm > 0) {
    const float inv = static_cast<float>(1.0 / std::sqrt(norm));
    for (float& v : vec) v *= inv;
  }
  return {std::move(vec), std::nullopt, false};
}

HttpEmbeddingProvider::HttpEmbeddingProvider(std::string endpoint, std::string model, size_t dim,
                                             std::chrono::milliseconds timeout, std::string path)
    : endpoint_(std::move(endpoint)), model_(std::move(model)), dim_(dim), timeout_(timeout),
      path_(std::move(path)) {}

EmbedResult HttpEmbeddingProvider::embed(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("embed: text must be non-empty");
  EmbedResult result;
  httplib::Client client(endpoint_);
  client.set_connection_timeout(std::chrono::duration_cast<std::chrono::seconds>(timeout_).count(),
                                (timeout_.count() % 1000) * 1000);
  client.set_read_timeout(std::chrono::duration_cast<std::chrono::seconds>(timeout_).count(),
                          (timeout_.count() % 1000) * 1000);
  nlohmann::json body = {{"model", model_}, {"input", text}};
  auto res = client.Post(path_, body.dump(), "application/json");
  if (!res) {
    result.error = "embedding endpoint unreachable: " + endpoint_;
    result.retriable = true;
    return result;
  }
  if (res->status != 200) {
    result.error = "embedding request failed with status " + std::to_string(res->status);
    result.retriable = res->status >= 500;
    return result;
  }
  try {
    nlohmann::json j = nlohmann::json::parse(res->body);
    if (j.contains("embedding")) {
      result.vec = j["embedding"].get<std::vector<float>>();
    } else if (j.contains("embeddings") && j["embeddings"].is_array() && !j["embeddings"].empty()) {
      result.vec = j["embeddings"][0].get<std::vector<float>>();
    } else {
      result.error = "embedding response missing 'embedding'";
      return result;
    }
  } catch (const std::exception& e) {
    result.error = std::string("embedding response parse error: ") + e.what();
    return result;
  }
  if (dim_ != 0 && result.vec.size() != dim_) {
    result.error = "embedding dimension mismatch: expected " + std::to_string(dim_) + ", got " +
                   std::to_string(result.vec.size());
    result.retriable = false;  // configuration error
    result.vec.clear();
  }
  return result;
}

CachingEmbedder::CachingEmbedder(EmbeddingProvider& provider, std::string cache_path)
    : provider_(provider), cache_path_(std::move(cache_path)) {
  if (cache_path_.empty()) return;
  std::ifstream in(cache_path_, std::ios::binary);
  if (!in) return;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    try {
      nlohmann::json j = nlohmann::json::parse(line);
      cache_[j.at("key").get<std::string>()] = j.at("embedding").get<std::vector<float>>();
    } catch (const std::exception&) {
      // stale or truncated cache line; recomputed on demand
    }
  }
}

EmbedResult CachingEmbedder::embed(const std::string& text) {
  const std::string key =
      provider_.id() + ":" + std::to_string(util::fnv1a64(text)) + ":" + std::to_string(text.size());
  auto it = cache_.find(key);
  if (it != cache_.end()) {
    ++hits_;
    return {it->second, std::nullopt, false};
  }
  EmbedResult result = provider_.embed(text);
  if (result.ok()) {
    ++misses_;
    cache_[key] = result.vec;
    if (!cache_path_.empty()) {
      std::ofstream out(cache_path_, std::ios::binary | std::ios::app);
      if (out) {
        nlohmann::ordered_json j;
        j["key"] = key;
        j["embedding"] = result.vec;
        out << j.dump() << "\n";
      }
    }
  }
  return result;
}

}  // namespace kgbench::retrieval
