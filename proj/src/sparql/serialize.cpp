#include "sparql/serialize.hpp"

#include <set>

#include "core/schema.hpp"
#include "sparql/parser.hpp"

namespace kgbench::sparql {

namespace {

// Ontology namespaces are shortened; resource IRIs stay full, matching
// the house query style.
const std::vector<std::pair<std::string, std::string>>& shortenable_prefixes() {
  static const std::vector<std::pair<std::string, std::string>> table = [] {
    std::vector<std::pair<std::string, std::string>> t;
    for (const auto& [prefix, base] : default_prefixes()) {
      if (prefix == "dbr") continue;
      t.emplace_back(prefix, base);
    }
    return t;
  }();
  return table;
}

bool pname_local_ok(std::string_view local) {
  if (local.empty()) return false;
  for (size_t i = 0; i < local.size(); ++i) {
    char c = local[i];
    bool word = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                c == '_' || c == '-';
    if (word) continue;
    if (c == '.' && i > 0 && i + 1 < local.size()) continue;
    return false;
  }
  return true;
}

struct Shortener {
  std::set<std::string> used;

  std::string iri_text(const std::string& iri) {
    for (const auto& [prefix, base] : shortenable_prefixes()) {
      if (iri.size() > base.size() && iri.compare(0, base.size(), base) == 0) {
        std::string local = iri.substr(base.size());
        if (pname_local_ok(local)) {
          used.insert(prefix);
          return prefix + ":" + local;
        }
      }
    }
    return "<" + iri + ">";
  }

  std::string term(const Term& t) {
    switch (t.kind) {
      case rdf::TermKind::Iri:
        return iri_text(t.value);
      case rdf::TermKind::Blank:
        return "_:" + t.value;
      case rdf::TermKind::Literal: {
        if (t.lang.empty() && t.datatype == rdf::vocab::kXsdInteger && t.integer_castable()) {
          return t.value;
        }
        std::string out = "\"" + rdf::escape_ntriples_string(t.value) + "\"";
        if (!t.lang.empty()) return out + "@" + t.lang;
        if (!t.datatype.empty()) return out + "^^" + iri_text(t.datatype);
        return out;
      }
    }
    return {};
  }

  std::string node(const NodeOrVar& n) { return n.is_var ? "?" + n.var : term(n.term); }

  std::string verb(const NodeOrVar& n) {
    if (!n.is_var && n.term.is_iri() && n.term.value == rdf::vocab::kRdfType) return "a";
    return node(n);
  }
};

}  // namespace

std::string term_text(const Term& term) {
  Shortener s;
  return s.term(term);
}

std::string serialize(const QueryAst& ast) {
  Shortener sh;
  std::string body;

  std::string head;
  if (ast.form == QueryForm::Ask) {
    head = "ASK {\n";
  } else {
    head = "SELECT";
    if (ast.distinct) head += " DISTINCT";
    if (ast.aggregate) {
      const Aggregate& a = *ast.aggregate;
      head += " (COUNT(";
      if (a.distinct) head += "DISTINCT ";
      head += "?" + a.var + ") AS ?" + a.alias + ")";
    }
    for (const std::string& v : ast.projection) head += " ?" + v;
    head += "\nWHERE {\n";
  }

  for (const ValuesClause& v : ast.values) {
    body += "  VALUES ?" + v.var + " {";
    for (const Term& t : v.terms) body += " " + sh.term(t);
    body += " }\n";
  }
  for (const TriplePattern& p : ast.patterns) {
    body += "  " + sh.node(p.subject) + " " + sh.verb(p.predicate) + " " + sh.node(p.object) + " .\n";
  }
  for (const ComparisonFilter& f : ast.filters) {
    auto operand = [&](const Operand& op) { return op.is_var ? "?" + op.var : sh.term(op.literal); };
    body += "  FILTER (" + operand(f.lhs) + " " + compare_op_text(f.op) + " " + operand(f.rhs) + ")\n";
  }
  for (const auto& block : ast.not_exists) {
    body += "  FILTER NOT EXISTS {\n";
    for (const TriplePattern& p : block) {
      body += "    " + sh.node(p.subject) + " " + sh.verb(p.predicate) + " " + sh.node(p.object) + " .\n";
    }
    body += "  }\n";
  }
  body += "}\n";

  std::string tail;
  if (!ast.order_keys.empty()) {
    tail += "ORDER BY";
    for (const OrderKey& k : ast.order_keys) {
      tail += k.descending ? " DESC(?" + k.var + ")" : " ?" + k.var;
    }
    tail += "\n";
  }
  if (ast.limit) tail += "LIMIT " + std::to_string(*ast.limit) + "\n";

  std::string prologue;
  for (const std::string& prefix : sh.used) {
    prologue += "PREFIX " + prefix + ": <" + default_prefixes().at(prefix) + ">\n";
  }
  return prologue + head + body + tail;
}

}  // namespace kgbench::sparql
