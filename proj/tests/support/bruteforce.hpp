#pragma once

// Independent nested-loop reference evaluator. Deliberately shares no code
// with sparql::evaluate: it enumerates triple assignments per pattern and
// re-implements filter, ordering and aggregation semantics from their
// documented rules.

#include <string>
#include <vector>

#include "core/graph.hpp"
#include "sparql/ast.hpp"

namespace kgbench::testsupport {

struct OracleResult {
  bool is_boolean = false;
  bool boolean = false;
  std::vector<std::string> columns;
  std::vector<std::vector<rdf::Term>> rows;
};

OracleResult brute_force_evaluate(const sparql::QueryAst& ast, const rdf::Graph& graph);

// Order-insensitive comparison helpers.
std::string row_text(const std::vector<rdf::Term>& row);
bool same_multiset(const std::vector<std::vector<rdf::Term>>& a,
                   const std::vector<std::vector<rdf::Term>>& b);

}  // namespace kgbench::testsupport
