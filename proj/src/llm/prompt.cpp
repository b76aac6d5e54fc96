#include "llm/prompt.hpp"

#include <set>

#include "sparql/parser.hpp"
#include "util/strings.hpp"

namespace kgbench::llm {

namespace {

std::string joined(const std::set<std::string>& iris) {
  std::string out;
  for (const std::string& iri : iris) {
    if (!out.empty()) out += ", ";
    // shorten through the canonical prefix table for readability
    std::string shortened = iri;
    for (const auto& [prefix, base] : sparql::default_prefixes()) {
      if (util::starts_with(iri, base)) {
        shortened = prefix + ":" + iri.substr(base.size());
        break;
      }
    }
    out += shortened;
  }
  return out;
}

}  // namespace

std::string schema_summary_text(const rdf::SchemaProfile& profile) {
  std::string out;
  out += "Classes: " + joined(profile.classes) + "\n";
  out += "Predicates: " + joined(profile.predicate_whitelist) + "\n";
  out += "Labels: " + joined(profile.label_predicates()) + "\n";
  out += "Prefixes:\n";
  for (const auto& [prefix, base] : sparql::default_prefixes()) {
    out += "  " + prefix + ": <" + base + ">\n";
  }
  return out;
}

std::string Prompt::render() const {
  std::string out;
  out += "Task: " + task_description + "\n\n";
  out += "Schema:\n" + schema_summary + "\n";
  if (!exemplars.empty()) {
    out += "Examples:\n";
    for (size_t i = 0; i < exemplars.size(); ++i) {
      out += "Example " + std::to_string(i + 1) + ":\nQ: " + exemplars[i].first + "\nSPARQL:\n" +
             exemplars[i].second;
      if (!util::ends_with(exemplars[i].second, "\n")) out += "\n";
      out += "\n";
    }
  }
  out += target;
  if (!util::ends_with(target, "\n")) out += "\n";
  return out;
}

Prompt build_template_prompt(const rdf::SchemaProfile& profile, policy::Category category, int n) {
  const auto& info = policy::category_info(category);
  Prompt p;
  p.kind = "template-gen";
  p.category = category;
  p.want_templates = n;
  p.task_description =
      "Write natural-language question templates with typed {slot} placeholders and a matching "
      "SPARQL skeleton for each, using only the schema below. Slots must use the kinds company, "
      "location, person or industry, and each skeleton must use a variable named after its slot. "
      "Answer with one block per template in the form:\n"
      "TEMPLATE\nNL: <pattern>\nSLOTS: <slot>=<kind>, ...\nSPARQL:\n<query>\nEND";
  p.schema_summary = schema_summary_text(profile);
  p.target = "Category: " + info.id + "\nCategory pattern: " + info.example_pattern + "\nProduce " +
             std::to_string(n) + " templates.";
  return p;
}

Prompt build_pair_prompt(const rdf::SchemaProfile& profile, policy::Category category,
                         const std::vector<std::pair<std::string, std::string>>& exemplars) {
  const auto& info = policy::category_info(category);
  Prompt p;
  p.kind = "pair-gen";
  p.category = category;
  p.task_description =
      "Write one new natural-language question and the SPARQL query that answers it over the "
      "schema below. Stay within the predicate whitelist, pin entities with VALUES clauses, and "
      "answer in the form:\nQUESTION: <question>\n```sparql\n<query>\n```";
  p.schema_summary = schema_summary_text(profile);
  p.exemplars = exemplars;
  p.target = "Category: " + info.id + "\nCategory pattern: " + info.example_pattern +
             "\nProduce one new pair, different from the examples.";
  return p;
}

Prompt build_repair_prompt(const rdf::SchemaProfile& profile, policy::Category category,
                           const std::string& question, const std::string& failing_sparql,
                           const std::string& diagnostic) {
  const auto& info = policy::category_info(category);
  Prompt p;
  p.kind = "repair";
  p.category = category;
  p.task_description =
      "The SPARQL query below failed validation. Fix its syntax and predicate usage without "
      "changing the question, and answer in the form:\nQUESTION: <question>\n```sparql\n<query>\n```";
  p.schema_summary = schema_summary_text(profile);
  p.target = "Category: " + info.id + "\nQUESTION: " + question + "\nFailing query:\n" +
             failing_sparql + "\nDiagnostic: " + diagnostic + "\nReturn the corrected pair.";
  return p;
}

std::optional<ExtractedPair> extract_pair(const std::string& raw) {
  ExtractedPair pair;
  const auto lines = util::split(raw, '\n');
  size_t i = 0;
  for (; i < lines.size(); ++i) {
    std::string t = util::trim(lines[i]);
    if (util::starts_with(t, "QUESTION:")) {
      pair.question = util::trim(t.substr(9));
      ++i;
      break;
    }
    if (util::starts_with(t, "Q:")) {
      pair.question = util::trim(t.substr(2));
      ++i;
      break;
    }
  }
  if (pair.question.empty()) return std::nullopt;

  // fenced block first
  bool in_fence = false;
  std::string sparql;
  for (size_t j = i; j < lines.size(); ++j) {
    std::string t = util::trim(lines[j]);
    if (!in_fence && (t == "```sparql" || t == "```")) {
      in_fence = true;
      continue;
    }
    if (in_fence) {
      if (t == "```") break;
      sparql += lines[j];
      sparql += "\n";
    }
  }
  if (util::trim(sparql).empty()) {
    // labeled section fallback
    bool in_sparql = false;
    sparql.clear();
    for (size_t j = i; j < lines.size(); ++j) {
      std::string t = util::trim(lines[j]);
      if (!in_sparql && util::starts_with(t, "SPARQL:")) {
        in_sparql = true;
        std::string rest = util::trim(t.substr(7));
        if (!rest.empty()) {
          sparql += rest;
          sparql += "\n";
        }
        continue;
      }
      if (in_sparql) {
        if (t == "END") break;
        sparql += lines[j];
        sparql += "\n";
      }
    }
  }
  if (util::trim(sparql).empty()) return std::nullopt;
  pair.sparql = sparql;
  return pair;
}

}  // namespace kgbench::llm
