#include "retrieval/retrieval.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>

#include "json.hpp"
#include "retrieval/embedding.hpp"
#include "util/errors.hpp"

namespace kgbench::retrieval {

namespace {

bool is_ascii_punct(char c) {
  return (c >= '!' && c <= '/') || (c >= ':' && c <= '@') || (c >= '[' && c <= '`') ||
         (c >= '{' && c <= '~');
}

// Unicode whitespace beyond ASCII that shows up in real question text.
bool is_unicode_space(uint32_t cp) {
  if (cp == 0xA0 || cp == 0x1680 || cp == 0x2028 || cp == 0x2029 || cp == 0x202F ||
      cp == 0x205F || cp == 0x3000 || cp == 0x200B || cp == 0xFEFF) {
    return true;
  }
  return cp >= 0x2000 && cp <= 0x200A;
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  auto flush = [&] {
    if (!current.empty()) {
      tokens.push_back(current);
      current.clear();
    }
  };
  size_t i = 0;
  while (i < text.size()) {
    unsigned char c = text[i];
    if (c < 0x80) {
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v' ||
          is_ascii_punct(static_cast<char>(c))) {
        flush();
      } else {
        char lower = static_cast<char>(c);
        if (lower >= 'A' && lower <= 'Z') lower = static_cast<char>(lower - 'A' + 'a');
        current.push_back(lower);
      }
      ++i;
      continue;
    }
    // decode one UTF-8 sequence; malformed bytes pass through as-is
    uint32_t cp = 0;
    size_t len = 1;
    if ((c & 0xE0) == 0xC0) {
      cp = c & 0x1F;
      len = 2;
    } else if ((c & 0xF0) == 0xE0) {
      cp = c & 0x0F;
      len = 3;
    } else if ((c & 0xF8) == 0xF0) {
      cp = c & 0x07;
      len = 4;
    } else {
      current.push_back(static_cast<char>(c));
      ++i;
      continue;
    }
    if (i + len > text.size()) {
      current.push_back(static_cast<char>(c));
      ++i;
      continue;
    }
    bool valid = true;
    for (size_t j = 1; j < len; ++j) {
      unsigned char cc = text[i + j];
      if ((cc & 0xC0) != 0x80) {
        valid = false;
        break;
      }
      cp = (cp << 6) | (cc & 0x3F);
    }
    if (!valid) {
      current.push_back(static_cast<char>(c));
      ++i;
      continue;
    }
    if (is_unicode_space(cp)) {
      flush();
    } else {
      current.append(text.substr(i, len));
    }
    i += len;
  }
  flush();
  return tokens;
}

std::set<std::string> token_set(std::string_view text) {
  auto tokens = tokenize(text);
  return {tokens.begin(), tokens.end()};
}

double jaccard_sets(const std::set<std::string>& a, const std::set<std::string>& b) {
  if (a.empty() && b.empty()) return 1.0;
  size_t intersection = 0;
  for (const std::string& t : a) {
    if (b.count(t)) ++intersection;
  }
  size_t uni = a.size() + b.size() - intersection;
  return static_cast<double>(intersection) / static_cast<double>(uni);
}

double jaccard(std::string_view a, std::string_view b) {
  return jaccard_sets(token_set(a), token_set(b));
}

double cosine(const std::vector<float>& a, const std::vector<float>& b) {
  if (a.empty() || a.size() != b.size()) return 0.0;
  double dot = 0, na = 0, nb = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    dot += static_cast<double>(a[i]) * b[i];
    na += static_cast<double>(a[i]) * a[i];
    nb += static_cast<double>(b[i]) * b[i];
  }
  if (na == 0 || nb == 0) return 0.0;
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

bool SeedBank::insert(SeedExample example) {
  auto& bank = banks_[example.category];
  for (const SeedExample& existing : bank) {
    if (jaccard(existing.question, example.question) >= dedup_threshold_) return false;
  }
  bank.push_back(std::move(example));
  return true;
}

const std::vector<SeedExample>& SeedBank::entries(Category c) const {
  static const std::vector<SeedExample> kEmpty;
  auto it = banks_.find(c);
  return it == banks_.end() ? kEmpty : it->second;
}

size_t SeedBank::total_size() const {
  size_t n = 0;
  for (const auto& [_, bank] : banks_) n += bank.size();
  return n;
}

TopKResult SeedBank::top_k(const std::vector<float>& query_embedding, Category c, size_t k) const {
  TopKResult result;
  const auto& bank = entries(c);
  // ties broken by insertion order: stable sort over descending score
  std::vector<std::pair<const SeedExample*, double>> scored;
  scored.reserve(bank.size());
  for (const SeedExample& e : bank) {
    scored.emplace_back(&e, cosine(query_embedding, e.embedding));
  }
  std::stable_sort(scored.begin(), scored.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  if (scored.size() > k) scored.resize(k);
  result.shortage = bank.size() < k;
  result.entries = std::move(scored);
  return result;
}

void SeedBank::save_jsonl_dir(const std::string& dir) const {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  for (const policy::CategoryInfo& info : policy::category_registry()) {
    std::ofstream out(fs::path(dir) / (info.id + ".jsonl"), std::ios::binary);
    if (!out) throw IoError("cannot write seed bank file in " + dir);
    for (const SeedExample& e : entries(info.category)) {
      nlohmann::ordered_json j;
      j["record_id"] = e.record_id;
      j["question"] = e.question;
      j["sparql"] = e.sparql;
      j["category"] = policy::category_info(e.category).id;
      j["phase_of_origin"] = e.phase_of_origin;
      j["embedding"] = e.embedding;
      out << j.dump() << "\n";
    }
  }
}

SeedBank SeedBank::load_jsonl_dir(const std::string& dir, double dedup_threshold) {
  namespace fs = std::filesystem;
  SeedBank bank(dedup_threshold);
  for (const policy::CategoryInfo& info : policy::category_registry()) {
    fs::path path = fs::path(dir) / (info.id + ".jsonl");
    std::ifstream in(path, std::ios::binary);
    if (!in) continue;
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      nlohmann::json j = nlohmann::json::parse(line);
      SeedExample e;
      e.record_id = j.value("record_id", int64_t{0});
      e.question = j.at("question").get<std::string>();
      e.sparql = j.at("sparql").get<std::string>();
      auto cat = policy::category_from_id(j.at("category").get<std::string>());
      e.category = cat.value_or(info.category);
      e.phase_of_origin = j.value("phase_of_origin", 1);
      e.embedding = j.at("embedding").get<std::vector<float>>();
      bank.insert(std::move(e));
    }
  }
  return bank;
}

TopKResult top_k(const std::string& query_text, Category category, const SeedBank& bank, size_t k,
                 EmbeddingProvider& provider) {
  EmbedResult embedded = provider.embed(query_text);
  if (!embedded.ok()) {
    TopKResult shortfall;
    shortfall.shortage = true;
    return shortfall;
  }
  return bank.top_k(embedded.vec, category, k);
}

bool DedupIndex::is_duplicate(std::string_view question) const {
  const auto tokens = token_set(question);
  for (const auto& prior : token_sets_) {
    if (jaccard_sets(tokens, prior) >= threshold_) return true;
  }
  return false;
}

void DedupIndex::add(std::string_view question) {
  token_sets_.push_back(token_set(question));
}

}  // namespace kgbench::retrieval
