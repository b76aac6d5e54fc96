#pragma once

#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "core/graph.hpp"
#include "sparql/ast.hpp"

namespace kgbench::sparql {

using rdf::Graph;

struct ExecMetrics {
  double exec_ms = 0;
  uint64_t rows = 0;
  bool timed_out = false;
  uint64_t cast_failures = 0;  // solutions dropped by non-numeric operands in <,<=,>,>=
};

struct ResultSet {
  enum class Kind { Rows, Boolean };
  Kind kind = Kind::Rows;
  std::vector<std::string> columns;
  std::vector<std::vector<Term>> rows;
  bool boolean = false;

  // ASK false counts as empty so the empty-rate metric is uniform.
  bool empty() const { return kind == Kind::Boolean ? !boolean : rows.empty(); }
  uint64_t answer_count() const { return kind == Kind::Boolean ? (boolean ? 1 : 0) : rows.size(); }
  std::string to_tsv() const;
};

struct EvalOutcome {
  std::optional<ResultSet> result;
  ExecMetrics metrics;
  std::optional<std::string> error;  // "execution-timeout"

  bool ok() const { return result.has_value(); }
};

// Index-backed left-to-right join over the basic graph pattern; VALUES
// restricts bindings up front, FILTER NOT EXISTS removes solutions with
// any inner match, ORDER BY applies keys left to right, then LIMIT.
// timeout <= 0 means no deadline.
EvalOutcome evaluate(const QueryAst& ast, const Graph& graph, std::chrono::milliseconds timeout);

// ORDER BY comparator, exposed for tests: integers compare numerically,
// IRIs/strings by codepoint, mixed kinds by (type rank, value) with
// literals before IRIs before blanks.
int order_compare(const Term& a, const Term& b);

}  // namespace kgbench::sparql
