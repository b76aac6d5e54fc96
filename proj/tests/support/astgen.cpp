#include "support/astgen.hpp"

#include <algorithm>
#include <set>

namespace kgbench::testsupport {

namespace {

using rdf::Term;
using sparql::NodeOrVar;
using sparql::QueryAst;

size_t pick(std::mt19937_64& rng, size_t n) {
  return std::uniform_int_distribution<size_t>(0, n - 1)(rng);
}

bool chance(std::mt19937_64& rng, double p) {
  return std::uniform_real_distribution<double>(0, 1)(rng) < p;
}

Term entity(size_t i) { return Term::iri("http://example.org/e" + std::to_string(i)); }
Term predicate(size_t i) { return Term::iri("http://example.org/p" + std::to_string(i)); }

Term random_object(std::mt19937_64& rng) {
  switch (pick(rng, 3)) {
    case 0: return entity(pick(rng, 10));
    case 1: return Term::integer(static_cast<long long>(pick(rng, 10)));
    default: return Term::literal("s" + std::to_string(pick(rng, 4)));
  }
}

const std::vector<std::string>& var_pool() {
  static const std::vector<std::string> pool = {"a", "b", "c", "d"};
  return pool;
}

}  // namespace

rdf::Graph random_graph(std::mt19937_64& rng, size_t max_triples) {
  rdf::Graph g;
  const size_t n = 5 + pick(rng, max_triples - 4);
  for (size_t i = 0; i < n; ++i) {
    g.insert({entity(pick(rng, 10)), predicate(pick(rng, 5)), random_object(rng)});
  }
  return g;
}

sparql::QueryAst random_query(std::mt19937_64& rng) {
  QueryAst ast;
  std::vector<std::string> used_vars;
  auto fresh_or_used_var = [&](double reuse_p) -> std::string {
    if (!used_vars.empty() && chance(rng, reuse_p)) return used_vars[pick(rng, used_vars.size())];
    const std::string v = var_pool()[pick(rng, var_pool().size())];
    if (std::find(used_vars.begin(), used_vars.end(), v) == used_vars.end()) used_vars.push_back(v);
    return v;
  };

  const size_t n_patterns = 1 + pick(rng, 4);
  for (size_t i = 0; i < n_patterns; ++i) {
    // the first subject is always a variable so projection never runs dry
    NodeOrVar subject = (i == 0 || chance(rng, 0.8))
                            ? NodeOrVar::of_var(fresh_or_used_var(i == 0 ? 0.0 : 0.7))
                            : NodeOrVar::of_term(entity(pick(rng, 10)));
    NodeOrVar pred = chance(rng, 0.85) ? NodeOrVar::of_term(predicate(pick(rng, 5)))
                                       : NodeOrVar::of_var(fresh_or_used_var(0.3));
    NodeOrVar object = chance(rng, 0.5) ? NodeOrVar::of_var(fresh_or_used_var(0.4))
                                        : NodeOrVar::of_term(random_object(rng));
    ast.patterns.push_back({subject, pred, object});
  }

  if (!used_vars.empty() && chance(rng, 0.4)) {
    sparql::ValuesClause values;
    values.var = used_vars[pick(rng, used_vars.size())];
    const size_t n_terms = 1 + pick(rng, 3);
    std::set<std::string> seen;
    for (size_t i = 0; i < n_terms; ++i) {
      Term t = chance(rng, 0.7) ? entity(pick(rng, 10)) : random_object(rng);
      if (seen.insert(t.ntriples()).second) values.terms.push_back(t);
    }
    ast.values.push_back(std::move(values));
  }

  const size_t n_filters = chance(rng, 0.5) ? 1 + pick(rng, 2) : 0;
  for (size_t i = 0; i < n_filters && !used_vars.empty(); ++i) {
    sparql::ComparisonFilter filter;
    filter.op = static_cast<sparql::CompareOp>(pick(rng, 6));
    filter.lhs = sparql::Operand::of_var(used_vars[pick(rng, used_vars.size())]);
    filter.rhs = chance(rng, 0.5)
                     ? sparql::Operand::of_var(used_vars[pick(rng, used_vars.size())])
                     : sparql::Operand::of_literal(Term::integer(static_cast<long long>(pick(rng, 10))));
    ast.filters.push_back(std::move(filter));
  }

  if (chance(rng, 0.3) && !used_vars.empty()) {
    std::vector<sparql::TriplePattern> block;
    const size_t n_inner = 1 + pick(rng, 2);
    for (size_t i = 0; i < n_inner; ++i) {
      NodeOrVar subject = NodeOrVar::of_var(used_vars[pick(rng, used_vars.size())]);
      NodeOrVar pred = NodeOrVar::of_term(predicate(pick(rng, 5)));
      NodeOrVar object = chance(rng, 0.5) ? NodeOrVar::of_var("x")  // inner existential
                                          : NodeOrVar::of_term(random_object(rng));
      block.push_back({subject, pred, object});
    }
    ast.not_exists.push_back(std::move(block));
  }

  if (chance(rng, 0.2)) {
    sparql::Aggregate agg;
    agg.distinct = chance(rng, 0.5);
    agg.var = used_vars[pick(rng, used_vars.size())];
    agg.alias = "cnt";
    ast.aggregate = agg;
  } else {
    const size_t n_proj = 1 + pick(rng, std::min<size_t>(3, used_vars.size()));
    std::set<std::string> proj;
    while (proj.size() < n_proj) proj.insert(used_vars[pick(rng, used_vars.size())]);
    ast.projection.assign(proj.begin(), proj.end());
    ast.distinct = chance(rng, 0.3);

    if (chance(rng, 0.4)) {
      const std::string primary = ast.projection[pick(rng, ast.projection.size())];
      ast.order_keys.push_back({primary, chance(rng, 0.5)});
      // total order over projected rows: append every projected variable
      for (const std::string& v : ast.projection) ast.order_keys.push_back({v, false});
      if (chance(rng, 0.6)) ast.limit = pick(rng, 6);
    } else if (chance(rng, 0.3)) {
      ast.limit = pick(rng, 6);
    }
  }
  return ast;
}

}  // namespace kgbench::testsupport
