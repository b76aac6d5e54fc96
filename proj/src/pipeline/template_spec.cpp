#include "pipeline/template_spec.hpp"

#include "sparql/parser.hpp"
#include "sparql/serialize.hpp"
#include "util/strings.hpp"

namespace kgbench::pipeline {

std::vector<std::string> TemplateSpec::slot_order() const {
  std::vector<std::string> order;
  size_t pos = 0;
  while (true) {
    size_t open = nl_pattern.find('{', pos);
    if (open == std::string::npos) break;
    size_t close = nl_pattern.find('}', open);
    if (close == std::string::npos) break;
    order.push_back(nl_pattern.substr(open + 1, close - open - 1));
    pos = close + 1;
  }
  return order;
}

std::string slot_kind_display(const std::string& kind) {
  if (kind.empty()) return kind;
  std::string out = kind;
  if (out[0] >= 'a' && out[0] <= 'z') out[0] = static_cast<char>(out[0] - 'a' + 'A');
  return out;
}

std::string render_question(const TemplateSpec& tpl, const std::map<std::string, std::string>& labels) {
  std::string out = tpl.nl_pattern;
  for (const auto& [slot, kind] : tpl.slot_types) {
    auto it = labels.find(slot);
    if (it == labels.end()) continue;
    out = util::replace_all(std::move(out), "{" + slot + "}",
                            "(" + slot_kind_display(kind) + ": " + it->second + ")");
  }
  return out;
}

std::optional<InstantiatedQuery> render_query(const TemplateSpec& tpl,
                                              const std::map<std::string, rdf::Term>& bindings,
                                              std::string* error) {
  auto parsed = sparql::parse_query(tpl.sparql_skeleton);
  if (!parsed.ok()) {
    if (error) *error = "skeleton parse error: " + parsed.error->to_string();
    return std::nullopt;
  }
  InstantiatedQuery out;
  out.ast = std::move(*parsed.ast);
  // Slots are pinned with VALUES clauses, in slot order, ahead of any
  // VALUES the skeleton already carries.
  std::vector<sparql::ValuesClause> pinned;
  for (const std::string& slot : tpl.slot_order()) {
    auto it = bindings.find(slot);
    if (it == bindings.end()) {
      if (error) *error = "binding missing slot '" + slot + "'";
      return std::nullopt;
    }
    pinned.push_back({slot, {it->second}});
  }
  pinned.insert(pinned.end(), out.ast.values.begin(), out.ast.values.end());
  out.ast.values = std::move(pinned);
  out.text = sparql::serialize(out.ast);
  return out;
}

std::string render_template_block(const TemplateSpec& tpl) {
  std::string out = "TEMPLATE\n";
  out += "NL: " + tpl.nl_pattern + "\n";
  out += "SLOTS:";
  bool first = true;
  for (const auto& [slot, kind] : tpl.slot_types) {
    out += first ? " " : ", ";
    out += slot + "=" + kind;
    first = false;
  }
  out += "\nSPARQL:\n" + tpl.sparql_skeleton;
  if (!util::ends_with(tpl.sparql_skeleton, "\n")) out += "\n";
  out += "END\n";
  return out;
}

std::vector<TemplateSpec> parse_template_blocks(const std::string& raw, Category category,
                                                std::vector<std::string>* errors) {
  std::vector<TemplateSpec> templates;
  const auto lines = util::split(raw, '\n');
  size_t i = 0;
  int ordinal = 0;
  while (i < lines.size()) {
    if (util::trim(lines[i]) != "TEMPLATE") {
      ++i;
      continue;
    }
    ++i;
    TemplateSpec tpl;
    tpl.category = category;
    bool in_sparql = false;
    bool closed = false;
    std::string sparql;
    for (; i < lines.size(); ++i) {
      std::string trimmed = util::trim(lines[i]);
      if (trimmed == "END") {
        closed = true;
        ++i;
        break;
      }
      if (in_sparql) {
        sparql += lines[i];
        sparql += "\n";
        continue;
      }
      if (util::starts_with(trimmed, "NL:")) {
        tpl.nl_pattern = util::trim(trimmed.substr(3));
      } else if (util::starts_with(trimmed, "SLOTS:")) {
        for (const std::string& part : util::split(trimmed.substr(6), ',')) {
          std::string entry = util::trim(part);
          if (entry.empty()) continue;
          auto eq = entry.find('=');
          if (eq == std::string::npos) {
            if (errors) errors->push_back("malformed slot entry: " + entry);
            continue;
          }
          tpl.slot_types[util::trim(entry.substr(0, eq))] = util::trim(entry.substr(eq + 1));
        }
      } else if (util::starts_with(trimmed, "SPARQL:")) {
        in_sparql = true;
      }
    }
    if (!closed || tpl.nl_pattern.empty() || util::trim(sparql).empty()) {
      if (errors) errors->push_back("incomplete template block");
      continue;
    }
    tpl.sparql_skeleton = sparql;
    tpl.id = policy::category_info(category).id + "-t" + std::to_string(++ordinal);
    templates.push_back(std::move(tpl));
  }
  return templates;
}

}  // namespace kgbench::pipeline
