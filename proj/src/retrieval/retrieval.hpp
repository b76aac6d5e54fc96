#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "policy/policy.hpp"

namespace kgbench::retrieval {

using policy::Category;

// Lowercased tokens split on Unicode whitespace and ASCII punctuation,
// empties dropped.
std::vector<std::string> tokenize(std::string_view text);
std::set<std::string> token_set(std::string_view text);

// |T(a) ∩ T(b)| / |T(a) ∪ T(b)|; both empty => 1.0.
double jaccard(std::string_view a, std::string_view b);
double jaccard_sets(const std::set<std::string>& a, const std::set<std::string>& b);

double cosine(const std::vector<float>& a, const std::vector<float>& b);

struct SeedExample {
  int64_t record_id = 0;
  std::string question;
  std::string sparql;
  Category category = Category::Generic;
  std::vector<float> embedding;
  int phase_of_origin = 1;
};

struct TopKResult {
  std::vector<std::pair<const SeedExample*, double>> entries;  // scores descending
  bool shortage = false;  // bank held fewer than k entries
};

// Per-category exemplar store. Insertion keeps the no-near-duplicate
// invariant within a category; lookups are safe between writes.
class SeedBank {
 public:
  explicit SeedBank(double dedup_threshold = 0.99) : dedup_threshold_(dedup_threshold) {}

  // False (no-op) when a same-category question at or above the dedup
  // threshold is already present.
  bool insert(SeedExample example);

  const std::vector<SeedExample>& entries(Category c) const;
  size_t size(Category c) const { return entries(c).size(); }
  size_t total_size() const;

  TopKResult top_k(const std::vector<float>& query_embedding, Category c, size_t k) const;

  void save_jsonl_dir(const std::string& dir) const;  // one file per category
  static SeedBank load_jsonl_dir(const std::string& dir, double dedup_threshold);

 private:
  double dedup_threshold_;
  std::map<Category, std::vector<SeedExample>> banks_;
};

class EmbeddingProvider;

// Embeds query_text and ranks the category's exemplars by cosine.
TopKResult top_k(const std::string& query_text, Category category, const SeedBank& bank, size_t k,
                 EmbeddingProvider& provider);

// Global question-level dedup across accepted records.
class DedupIndex {
 public:
  explicit DedupIndex(double threshold) : threshold_(threshold) {}

  bool is_duplicate(std::string_view question) const;
  void add(std::string_view question);
  size_t size() const { return token_sets_.size(); }

 private:
  double threshold_;
  std::vector<std::set<std::string>> token_sets_;
};

}  // namespace kgbench::retrieval
