#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "core/schema.hpp"
#include "policy/policy.hpp"

namespace kgbench::llm {

// Prompt = task description + schema summary + retrieved exemplars +
// target instruction. Rendering is deterministic; the rendered length is
// what gets logged per record.
struct Prompt {
  std::string kind;  // "template-gen" | "pair-gen" | "repair"
  policy::Category category = policy::Category::Generic;
  int want_templates = 0;
  std::string task_description;
  std::string schema_summary;
  std::vector<std::pair<std::string, std::string>> exemplars;  // (question, sparql)
  std::string target;

  std::string render() const;
  size_t rendered_length() const { return render().size(); }
};

std::string schema_summary_text(const rdf::SchemaProfile& profile);

Prompt build_template_prompt(const rdf::SchemaProfile& profile, policy::Category category, int n);
Prompt build_pair_prompt(const rdf::SchemaProfile& profile, policy::Category category,
                         const std::vector<std::pair<std::string, std::string>>& exemplars);
Prompt build_repair_prompt(const rdf::SchemaProfile& profile, policy::Category category,
                           const std::string& question, const std::string& failing_sparql,
                           const std::string& diagnostic);

struct ExtractedPair {
  std::string question;
  std::string sparql;
};

// Fenced-block or labeled-section extraction of one QUESTION/SPARQL pair.
std::optional<ExtractedPair> extract_pair(const std::string& raw);

}  // namespace kgbench::llm
