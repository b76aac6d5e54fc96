#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <filesystem>

#include "retrieval/embedding.hpp"
#include "retrieval/retrieval.hpp"
#include "support/common.hpp"

using namespace kgbench;
using namespace kgbench::retrieval;

TEST_CASE("tokenizer lowercases and splits on whitespace and punctuation") {
  auto tokens = tokenize("How many, COMPANIES are in (Location: Menlo Park)?");
  CHECK(tokens == std::vector<std::string>{"how", "many", "companies", "are", "in", "location",
                                           "menlo", "park"});
  CHECK(tokenize("  ...  ").empty());
  // non-breaking space splits like an ordinary space
  CHECK(tokenize("a\xC2\xA0" "b") == std::vector<std::string>{"a", "b"});
}

TEST_CASE("jaccard follows set semantics") {
  CHECK(jaccard("how many companies", "how many companies") == doctest::Approx(1.0));
  CHECK(jaccard("how many companies", "companies many how") == doctest::Approx(1.0));
  CHECK(jaccard("", "") == doctest::Approx(1.0));  // both empty
  CHECK(jaccard("alpha beta gamma", "alpha beta delta") == doctest::Approx(0.5));  // 2/4
  CHECK(jaccard("alpha", "omega") == doctest::Approx(0.0));
}

TEST_CASE("a 99/101-token near-duplicate scores about 0.980") {
  std::string a, b;
  for (int i = 0; i < 99; ++i) {
    a += "tok" + std::to_string(i) + " ";
    b += "tok" + std::to_string(i) + " ";
  }
  a += "alpha";
  b += "omega";
  const double score = jaccard(a, b);
  CHECK(score == doctest::Approx(99.0 / 101.0).epsilon(1e-9));
  CHECK(score < 0.99);  // passes dedup at the configured threshold
}

TEST_CASE("mock embeddings are deterministic unit vectors") {
  MockEmbeddingProvider provider;
  auto a = provider.embed("Which company has the most employees?");
  auto b = provider.embed("Which company has the most employees?");
  REQUIRE(a.ok());
  CHECK(a.vec == b.vec);
  CHECK(a.vec.size() == 64);
  double norm = 0;
  for (float v : a.vec) norm += static_cast<double>(v) * v;
  CHECK(std::abs(std::sqrt(norm) - 1.0) < 1e-6);

  CHECK_THROWS_AS(provider.embed(""), std::invalid_argument);
}

TEST_CASE("cosine scores stay in range and rank by hand-checked order") {
  MockEmbeddingProvider provider;
  auto q = provider.embed("companies in california").vec;
  auto near = provider.embed("companies located in california").vec;
  auto far = provider.embed("zebra quartz umbrella").vec;
  CHECK(cosine(q, q) == doctest::Approx(1.0));
  CHECK(cosine(q, near) > cosine(q, far));
  CHECK(cosine(q, far) >= 0.0);
  CHECK(cosine(q, near) <= 1.0);
}

namespace {

SeedExample make_seed(int64_t id, const std::string& question, policy::Category cat,
                      MockEmbeddingProvider& provider) {
  SeedExample seed;
  seed.record_id = id;
  seed.question = question;
  seed.sparql = "SELECT ?x WHERE { ?x a dbo:Company . }";
  seed.category = cat;
  seed.embedding = provider.embed(question).vec;
  seed.phase_of_origin = 1;
  return seed;
}

}  // namespace

TEST_CASE("top_k ranks by cosine against a brute-force pass") {
  MockEmbeddingProvider provider;
  SeedBank bank(0.99);
  const std::vector<std::string> questions = {
      "How many companies are in Northfield?",
      "How many companies operate in the Software industry?",
      "Which company has the most employees in Eastvale?",
  };
  for (size_t i = 0; i < questions.size(); ++i) {
    REQUIRE(bank.insert(make_seed(static_cast<int64_t>(i), questions[i],
                                  policy::Category::Counting, provider)));
  }

  const std::string query = "How many companies are in Eastvale?";
  auto ranked = top_k(query, policy::Category::Counting, bank, 2, provider);
  REQUIRE(ranked.entries.size() == 2);
  CHECK_FALSE(ranked.shortage);
  CHECK(ranked.entries[0].second >= ranked.entries[1].second);

  // brute-force cosine ranking over the whole bank agrees
  auto qv = provider.embed(query).vec;
  std::vector<double> scores;
  for (const auto& seed : bank.entries(policy::Category::Counting)) {
    scores.push_back(cosine(qv, seed.embedding));
  }
  double best = *std::max_element(scores.begin(), scores.end());
  CHECK(ranked.entries[0].second == doctest::Approx(best));
}

TEST_CASE("querying with a bank entry's own text puts it first with score 1") {
  MockEmbeddingProvider provider;
  SeedBank bank(0.99);
  bank.insert(make_seed(1, "Where is Amber Analytics located?", policy::Category::Generic, provider));
  bank.insert(make_seed(2, "Which industry does Cobalt Works operate in?", policy::Category::Generic,
                        provider));
  auto ranked = top_k("Where is Amber Analytics located?", policy::Category::Generic, bank, 1,
                      provider);
  REQUIRE(ranked.entries.size() == 1);
  CHECK(ranked.entries[0].first->record_id == 1);
  CHECK(ranked.entries[0].second == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("k larger than the bank returns everything plus a shortage flag") {
  MockEmbeddingProvider provider;
  SeedBank bank(0.99);
  bank.insert(make_seed(1, "only entry", policy::Category::Ordinal, provider));
  auto ranked = top_k("anything", policy::Category::Ordinal, bank, 2, provider);
  CHECK(ranked.entries.size() == 1);
  CHECK(ranked.shortage);
}

TEST_CASE("retrieval is category-isolated") {
  MockEmbeddingProvider provider;
  SeedBank bank(0.99);
  bank.insert(make_seed(1, "counting question", policy::Category::Counting, provider));
  bank.insert(make_seed(2, "generic question", policy::Category::Generic, provider));
  auto ranked = top_k("counting question", policy::Category::Generic, bank, 5, provider);
  REQUIRE(ranked.entries.size() == 1);
  CHECK(ranked.entries[0].first->record_id == 2);
}

TEST_CASE("bank insertion is a no-op for near-duplicates within a category") {
  MockEmbeddingProvider provider;
  SeedBank bank(0.99);
  CHECK(bank.insert(make_seed(1, "How many companies are in Northfield?",
                              policy::Category::Counting, provider)));
  CHECK_FALSE(bank.insert(make_seed(2, "How many companies are in Northfield?",
                                    policy::Category::Counting, provider)));
  CHECK(bank.size(policy::Category::Counting) == 1);
  // the same question in a different category is a separate bank
  CHECK(bank.insert(make_seed(3, "How many companies are in Northfield?",
                              policy::Category::Generic, provider)));
}

TEST_CASE("dedup index applies the threshold globally") {
  DedupIndex dedup(0.99);
  dedup.add("Which companies are located in Northfield?");
  CHECK(dedup.is_duplicate("Which companies are located in Northfield?"));
  CHECK(dedup.is_duplicate("located companies in which Northfield are?"));  // permutation
  CHECK_FALSE(dedup.is_duplicate("Which companies are located in Eastvale?"));
}

TEST_CASE("bank persists and reloads through JSONL files") {
  namespace fs = std::filesystem;
  MockEmbeddingProvider provider;
  SeedBank bank(0.99);
  bank.insert(make_seed(1, "How many companies are in Northfield?", policy::Category::Counting,
                        provider));
  bank.insert(make_seed(2, "Is Amber Analytics located in Eastvale?", policy::Category::YesNo,
                        provider));

  const std::string dir = (fs::temp_directory_path() / "kgbench_bank_test").string();
  fs::remove_all(dir);
  bank.save_jsonl_dir(dir);
  CHECK(fs::exists(fs::path(dir) / "counting.jsonl"));
  CHECK(fs::exists(fs::path(dir) / "yesno.jsonl"));

  SeedBank reloaded = SeedBank::load_jsonl_dir(dir, 0.99);
  CHECK(reloaded.total_size() == 2);
  REQUIRE(reloaded.size(policy::Category::Counting) == 1);
  const auto& seed = reloaded.entries(policy::Category::Counting)[0];
  CHECK(seed.question == "How many companies are in Northfield?");
  CHECK(seed.embedding == bank.entries(policy::Category::Counting)[0].embedding);
  fs::remove_all(dir);
}

TEST_CASE("embedding cache avoids recomputation across instances") {
  namespace fs = std::filesystem;
  const std::string cache = (fs::temp_directory_path() / "kgbench_embed_cache.jsonl").string();
  fs::remove(cache);

  MockEmbeddingProvider provider;
  {
    CachingEmbedder embedder(provider, cache);
    auto a = embedder.embed("some question text");
    REQUIRE(a.ok());
    auto b = embedder.embed("some question text");
    CHECK(a.vec == b.vec);
    CHECK(embedder.misses() == 1);
    CHECK(embedder.hits() == 1);
  }
  {
    CachingEmbedder embedder(provider, cache);
    auto c = embedder.embed("some question text");
    REQUIRE(c.ok());
    CHECK(embedder.hits() == 1);
    CHECK(embedder.misses() == 0);
  }
  fs::remove(cache);
}
