#include "sparql/ast.hpp"

#include <set>

namespace kgbench::sparql {

std::string compare_op_text(CompareOp op) {
  switch (op) {
    case CompareOp::Eq: return "=";
    case CompareOp::Ne: return "!=";
    case CompareOp::Lt: return "<";
    case CompareOp::Le: return "<=";
    case CompareOp::Gt: return ">";
    case CompareOp::Ge: return ">=";
  }
  return "=";
}

std::vector<std::string> QueryAst::bound_variables() const {
  std::set<std::string> vars;
  for (const TriplePattern& p : patterns) {
    if (p.subject.is_var) vars.insert(p.subject.var);
    if (p.predicate.is_var) vars.insert(p.predicate.var);
    if (p.object.is_var) vars.insert(p.object.var);
  }
  for (const ValuesClause& v : values) vars.insert(v.var);
  return {vars.begin(), vars.end()};
}

ComplexityMetrics complexity_metrics(const QueryAst& ast) {
  ComplexityMetrics m;
  m.triple_count = ast.patterns.size();
  for (const auto& block : ast.not_exists) m.triple_count += block.size();
  m.filter_count = ast.filters.size() + ast.not_exists.size();
  m.uses_count = ast.aggregate.has_value();
  m.uses_order = !ast.order_keys.empty();
  return m;
}

}  // namespace kgbench::sparql
