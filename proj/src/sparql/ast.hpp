#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "core/term.hpp"

namespace kgbench::sparql {

using rdf::Term;

// A pattern slot: either a concrete term or a variable (name without '?').
struct NodeOrVar {
  bool is_var = false;
  Term term;
  std::string var;

  static NodeOrVar of_term(Term t) { return {false, std::move(t), {}}; }
  static NodeOrVar of_var(std::string name) { return {true, {}, std::move(name)}; }

  bool operator==(const NodeOrVar&) const = default;
  auto operator<=>(const NodeOrVar&) const = default;
};

struct TriplePattern {
  NodeOrVar subject;
  NodeOrVar predicate;
  NodeOrVar object;

  bool operator==(const TriplePattern&) const = default;
};

enum class CompareOp { Eq, Ne, Lt, Le, Gt, Ge };

std::string compare_op_text(CompareOp op);

// FILTER (<operand> <op> <operand>); operands are variables or literals.
struct Operand {
  bool is_var = false;
  Term literal;
  std::string var;

  static Operand of_var(std::string name) { return {true, {}, std::move(name)}; }
  static Operand of_literal(Term t) { return {false, std::move(t), {}}; }

  bool operator==(const Operand&) const = default;
};

struct ComparisonFilter {
  CompareOp op = CompareOp::Eq;
  Operand lhs;
  Operand rhs;

  bool operator==(const ComparisonFilter&) const = default;
};

// COUNT([DISTINCT] ?var) AS ?alias — the only aggregate in the subset.
struct Aggregate {
  bool distinct = false;
  std::string var;
  std::string alias;

  bool operator==(const Aggregate&) const = default;
};

struct ValuesClause {
  std::string var;
  std::vector<Term> terms;

  bool operator==(const ValuesClause&) const = default;
};

struct OrderKey {
  std::string var;
  bool descending = false;

  bool operator==(const OrderKey&) const = default;
};

enum class QueryForm { Select, Ask };

// Parsed query. Equality is semantic: the prefix table is presentation
// only (all IRIs are stored resolved) and is ignored by operator==.
struct QueryAst {
  QueryForm form = QueryForm::Select;
  bool distinct = false;
  std::vector<std::string> projection;  // empty when aggregate is set
  std::optional<Aggregate> aggregate;
  std::vector<TriplePattern> patterns;
  std::vector<ComparisonFilter> filters;
  std::vector<std::vector<TriplePattern>> not_exists;
  std::vector<ValuesClause> values;
  std::vector<OrderKey> order_keys;
  std::optional<uint64_t> limit;
  std::map<std::string, std::string> prefixes;

  bool operator==(const QueryAst& other) const {
    return form == other.form && distinct == other.distinct && projection == other.projection &&
           aggregate == other.aggregate && patterns == other.patterns && filters == other.filters &&
           not_exists == other.not_exists && values == other.values && order_keys == other.order_keys &&
           limit == other.limit;
  }

  // Variables bound by the outer group (patterns + VALUES), sorted.
  std::vector<std::string> bound_variables() const;
};

struct ComplexityMetrics {
  uint64_t triple_count = 0;  // includes patterns inside NOT EXISTS
  uint64_t filter_count = 0;  // each FILTER once; FILTER NOT EXISTS counts as one
  bool uses_count = false;
  bool uses_order = false;
};

ComplexityMetrics complexity_metrics(const QueryAst& ast);

}  // namespace kgbench::sparql
