#include "pipeline/config.hpp"

#include <yaml-cpp/yaml.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "util/errors.hpp"
#include "util/strings.hpp"

namespace kgbench::pipeline {

namespace {

namespace fs = std::filesystem;

std::chrono::milliseconds parse_duration(const std::string& raw, const std::string& key) {
  std::string v = util::trim(raw);
  try {
    if (util::ends_with(v, "ms")) return std::chrono::milliseconds(std::stoll(v.substr(0, v.size() - 2)));
    if (util::ends_with(v, "s")) {
      return std::chrono::milliseconds(static_cast<long long>(std::stod(v.substr(0, v.size() - 1)) * 1000));
    }
    // bare numbers are seconds, matching the published configuration table
    return std::chrono::milliseconds(static_cast<long long>(std::stod(v) * 1000));
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': cannot parse duration '" + raw + "'");
  }
}

bool parse_bool(const std::string& raw, const std::string& key) {
  std::string v = util::to_lower_ascii(util::trim(raw));
  if (v == "true" || v == "on" || v == "yes" || v == "1") return true;
  if (v == "false" || v == "off" || v == "no" || v == "0") return false;
  throw ConfigError("config key '" + key + "': cannot parse boolean '" + raw + "'");
}

uint64_t parse_count(const std::string& raw, const std::string& key) {
  try {
    long long v = std::stoll(util::trim(raw));
    if (v < 0) throw std::out_of_range("negative");
    return static_cast<uint64_t>(v);
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': cannot parse count '" + raw + "'");
  }
}

double parse_fraction(const std::string& raw, const std::string& key) {
  try {
    return std::stod(util::trim(raw));
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': cannot parse number '" + raw + "'");
  }
}

// Flat key=value application shared by env and CLI overrides. Provider
// fields use dotted keys (chat_provider.kind, embedding_provider.model).
void apply_override(RunConfig& cfg, const std::string& key, const std::string& value,
                    const std::string& base_dir) {
  auto path_resolved = [&](const std::string& p) {
    if (p.empty() || p.front() == '/' || base_dir.empty()) return p;
    return (fs::path(base_dir) / p).string();
  };
  if (key == "templates_per_category") cfg.templates_per_category = parse_count(value, key);
  else if (key == "seeds_per_template") cfg.seeds_per_template = parse_count(value, key);
  else if (key == "phase2_seeds_per_category") cfg.phase2_seeds_per_category = parse_count(value, key);
  else if (key == "phase3_targets_per_category") cfg.phase3_targets_per_category = parse_count(value, key);
  else if (key == "reverse_row_cap") cfg.reverse_row_cap = parse_count(value, key);
  else if (key == "retrieval_k") cfg.retrieval_k = parse_count(value, key);
  else if (key == "result_cap") cfg.result_cap = parse_count(value, key);
  else if (key == "dedup_threshold") cfg.dedup_threshold = parse_fraction(value, key);
  else if (key == "reverse_timeout") cfg.reverse_timeout = parse_duration(value, key);
  else if (key == "seed") cfg.seed = parse_count(value, key);
  else if (key == "stall_limit") cfg.stall_limit = parse_count(value, key);
  else if (key == "repair_budget") cfg.repair_budget = parse_count(value, key);
  else if (key == "enforce_patterns") cfg.enforce_patterns = parse_bool(value, key);
  else if (key == "parallelism") cfg.parallelism = parse_count(value, key);
  else if (key == "paraphrase") cfg.paraphrase = parse_bool(value, key);
  else if (key == "review_gate") cfg.review_gate = parse_bool(value, key);
  else if (key == "slice") cfg.slice_path = path_resolved(value);
  else if (key == "embedding_cache") cfg.embedding_cache = path_resolved(value);
  else if (key == "chat_provider.kind") cfg.chat.kind = util::trim(value);
  else if (key == "chat_provider.endpoint") cfg.chat.endpoint = util::trim(value);
  else if (key == "chat_provider.model") cfg.chat.model = util::trim(value);
  else if (key == "chat_provider.timeout") cfg.chat.timeout = parse_duration(value, key);
  else if (key == "chat_provider.fault_rate") cfg.chat.fault_rate = parse_fraction(value, key);
  else if (key == "embedding_provider.kind") cfg.embedding.kind = util::trim(value);
  else if (key == "embedding_provider.endpoint") cfg.embedding.endpoint = util::trim(value);
  else if (key == "embedding_provider.model") cfg.embedding.model = util::trim(value);
  else if (key == "embedding_provider.timeout") cfg.embedding.timeout = parse_duration(value, key);
  else if (key == "embedding_provider.dim") cfg.embedding.dim = parse_count(value, key);
  else throw ConfigError("unknown config key '" + key + "'");
}

void apply_yaml(RunConfig& cfg, const YAML::Node& root, const std::string& base_dir) {
  if (!root.IsMap()) throw ConfigError("config root must be a mapping");
  for (const auto& entry : root) {
    const std::string key = entry.first.as<std::string>();
    const YAML::Node& node = entry.second;
    if (key == "chat_provider" || key == "embedding_provider") {
      if (!node.IsMap()) throw ConfigError("config key '" + key + "' must be a mapping");
      for (const auto& sub : node) {
        apply_override(cfg, key + "." + sub.first.as<std::string>(), sub.second.as<std::string>(),
                       base_dir);
      }
      continue;
    }
    apply_override(cfg, key, node.as<std::string>(), base_dir);
  }
}

void apply_env(RunConfig& cfg, const std::string& base_dir) {
  // SEED is honored bare; everything else uses the KGBENCH_ prefix.
  if (const char* seed = std::getenv("SEED")) apply_override(cfg, "seed", seed, base_dir);
  static const std::vector<std::pair<std::string, std::string>> mapped = {
      {"KGBENCH_SEED", "seed"},
      {"KGBENCH_SLICE", "slice"},
      {"KGBENCH_ENFORCE_PATTERNS", "enforce_patterns"},
      {"KGBENCH_STALL_LIMIT", "stall_limit"},
      {"KGBENCH_REPAIR_BUDGET", "repair_budget"},
      {"KGBENCH_PARALLELISM", "parallelism"},
      {"KGBENCH_CHAT_ENDPOINT", "chat_provider.endpoint"},
      {"KGBENCH_CHAT_MODEL", "chat_provider.model"},
      {"KGBENCH_CHAT_KIND", "chat_provider.kind"},
      {"KGBENCH_EMBED_ENDPOINT", "embedding_provider.endpoint"},
      {"KGBENCH_EMBED_MODEL", "embedding_provider.model"},
      {"KGBENCH_EMBED_KIND", "embedding_provider.kind"},
  };
  for (const auto& [env, key] : mapped) {
    if (const char* value = std::getenv(env.c_str())) apply_override(cfg, key, value, base_dir);
  }
}

}  // namespace

void RunConfig::validate() const {
  auto require = [](bool ok, const std::string& what) {
    if (!ok) throw ConfigError("invalid config: " + what);
  };
  require(templates_per_category >= 1, "templates_per_category must be >= 1");
  require(seeds_per_template >= 1, "seeds_per_template must be >= 1");
  require(phase2_seeds_per_category >= 1, "phase2_seeds_per_category must be >= 1");
  require(phase3_targets_per_category >= 1, "phase3_targets_per_category must be >= 1");
  require(reverse_row_cap >= 1, "reverse_row_cap must be >= 1");
  require(retrieval_k >= 1, "retrieval_k must be >= 1");
  require(result_cap >= 1, "result_cap must be >= 1");
  require(stall_limit >= 1, "stall_limit must be >= 1");
  require(parallelism >= 1, "parallelism must be >= 1");
  require(dedup_threshold > 0.0 && dedup_threshold <= 1.0, "dedup_threshold must be in (0,1]");
  require(chat.fault_rate >= 0.0 && chat.fault_rate <= 1.0, "fault_rate must be in [0,1]");
  require(chat.kind == "mock" || chat.kind == "http", "chat_provider.kind must be mock or http");
  require(embedding.kind == "mock" || embedding.kind == "http",
          "embedding_provider.kind must be mock or http");
}

RunConfig RunConfig::load(const std::string& yaml_path, const std::vector<std::string>& overrides) {
  std::ifstream in(yaml_path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file: " + yaml_path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return from_yaml_text(text, fs::path(yaml_path).parent_path().string(), overrides);
}

RunConfig RunConfig::from_yaml_text(const std::string& text, const std::string& base_dir,
                                    const std::vector<std::string>& overrides) {
  RunConfig cfg;
  try {
    YAML::Node root = YAML::Load(text);
    if (!root.IsNull()) apply_yaml(cfg, root, base_dir);
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
  apply_env(cfg, base_dir);
  for (const std::string& entry : overrides) {
    auto eq = entry.find('=');
    if (eq == std::string::npos) throw ConfigError("override must be key=value: " + entry);
    // CLI override paths resolve against the working directory
    apply_override(cfg, entry.substr(0, eq), entry.substr(eq + 1), "");
  }
  cfg.validate();
  return cfg;
}

}  // namespace kgbench::pipeline
