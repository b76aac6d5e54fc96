#include "sparql/eval.hpp"

#include <algorithm>
#include <set>

namespace kgbench::sparql {

namespace {

using Binding = std::map<std::string, Term>;
using Clock = std::chrono::steady_clock;

struct Deadline {
  bool armed = false;
  Clock::time_point at;
  uint64_t steps = 0;
  bool expired = false;

  bool hit() {
    if (!armed || expired) return expired;
    if ((++steps & 0xFF) == 0 && Clock::now() >= at) expired = true;
    return expired;
  }
};

std::optional<Term> slot_value(const NodeOrVar& n, const Binding& binding) {
  if (!n.is_var) return n.term;
  auto it = binding.find(n.var);
  if (it != binding.end()) return it->second;
  return std::nullopt;
}

bool extend(const TriplePattern& pattern, const rdf::Triple& triple, Binding& binding) {
  const NodeOrVar* slots[3] = {&pattern.subject, &pattern.predicate, &pattern.object};
  const Term* parts[3] = {&triple.subject, &triple.predicate, &triple.object};
  for (int i = 0; i < 3; ++i) {
    if (!slots[i]->is_var) continue;
    auto [it, inserted] = binding.emplace(slots[i]->var, *parts[i]);
    if (!inserted && it->second != *parts[i]) return false;
  }
  return true;
}

std::vector<Binding> join_patterns(const std::vector<TriplePattern>& patterns, const Graph& graph,
                                   std::vector<Binding> current, Deadline& deadline) {
  for (const TriplePattern& pattern : patterns) {
    std::vector<Binding> next;
    for (const Binding& binding : current) {
      if (deadline.hit()) return {};
      auto s = slot_value(pattern.subject, binding);
      auto p = slot_value(pattern.predicate, binding);
      auto o = slot_value(pattern.object, binding);
      graph.scan(s, p, o, [&](const rdf::Triple& triple) {
        if (deadline.hit()) return false;
        Binding extended = binding;
        if (extend(pattern, triple, extended)) next.push_back(std::move(extended));
        return true;
      });
    }
    current = std::move(next);
    if (current.empty()) break;
  }
  return current;
}

enum class FilterVerdict { Keep, Drop, CastFailure };

// Both operands integer-castable: numeric comparison. Otherwise = and !=
// fall back to structural term equality, and the ordering operators drop
// the solution as a cast failure.
FilterVerdict apply_filter(const ComparisonFilter& f, const Binding& binding) {
  auto value = [&](const Operand& op) -> Term {
    if (!op.is_var) return op.literal;
    return binding.at(op.var);
  };
  const Term lhs = value(f.lhs);
  const Term rhs = value(f.rhs);
  const auto li = lhs.as_integer();
  const auto ri = rhs.as_integer();
  if (li && ri) {
    bool keep = false;
    switch (f.op) {
      case CompareOp::Eq: keep = *li == *ri; break;
      case CompareOp::Ne: keep = *li != *ri; break;
      case CompareOp::Lt: keep = *li < *ri; break;
      case CompareOp::Le: keep = *li <= *ri; break;
      case CompareOp::Gt: keep = *li > *ri; break;
      case CompareOp::Ge: keep = *li >= *ri; break;
    }
    return keep ? FilterVerdict::Keep : FilterVerdict::Drop;
  }
  switch (f.op) {
    case CompareOp::Eq: return lhs == rhs ? FilterVerdict::Keep : FilterVerdict::Drop;
    case CompareOp::Ne: return lhs != rhs ? FilterVerdict::Keep : FilterVerdict::Drop;
    default: return FilterVerdict::CastFailure;
  }
}

}  // namespace

int order_compare(const Term& a, const Term& b) {
  auto rank = [](const Term& t) {
    switch (t.kind) {
      case rdf::TermKind::Literal: return t.as_integer() ? 0 : 1;
      case rdf::TermKind::Iri: return 2;
      case rdf::TermKind::Blank: return 3;
    }
    return 3;
  };
  int ra = rank(a), rb = rank(b);
  if (ra != rb) return ra < rb ? -1 : 1;
  if (ra == 0) {
    long long ia = *a.as_integer(), ib = *b.as_integer();
    if (ia != ib) return ia < ib ? -1 : 1;
    return 0;
  }
  if (int c = a.value.compare(b.value); c != 0) return c < 0 ? -1 : 1;
  if (int c = a.datatype.compare(b.datatype); c != 0) return c < 0 ? -1 : 1;
  if (int c = a.lang.compare(b.lang); c != 0) return c < 0 ? -1 : 1;
  return 0;
}

EvalOutcome evaluate(const QueryAst& ast, const Graph& graph, std::chrono::milliseconds timeout) {
  EvalOutcome outcome;
  const auto started = Clock::now();
  Deadline deadline;
  if (timeout.count() > 0) {
    deadline.armed = true;
    deadline.at = started + timeout;
  }

  // VALUES product seeds the join; clauses over the same variable intersect.
  std::vector<Binding> solutions = {Binding{}};
  for (const ValuesClause& clause : ast.values) {
    std::vector<Binding> next;
    for (const Binding& binding : solutions) {
      for (const Term& term : clause.terms) {
        auto it = binding.find(clause.var);
        if (it != binding.end()) {
          if (it->second == term) next.push_back(binding);
        } else {
          Binding extended = binding;
          extended.emplace(clause.var, term);
          next.push_back(std::move(extended));
        }
      }
    }
    solutions = std::move(next);
  }

  solutions = join_patterns(ast.patterns, graph, std::move(solutions), deadline);

  if (!deadline.expired) {
    std::vector<Binding> kept;
    kept.reserve(solutions.size());
    for (Binding& binding : solutions) {
      bool keep = true;
      for (const ComparisonFilter& f : ast.filters) {
        FilterVerdict v = apply_filter(f, binding);
        if (v == FilterVerdict::CastFailure) ++outcome.metrics.cast_failures;
        if (v != FilterVerdict::Keep) {
          keep = false;
          break;
        }
      }
      if (keep) {
        for (const auto& block : ast.not_exists) {
          if (!join_patterns(block, graph, {binding}, deadline).empty()) {
            keep = false;
            break;
          }
          if (deadline.expired) break;
        }
      }
      if (deadline.expired) break;
      if (keep) kept.push_back(std::move(binding));
    }
    solutions = std::move(kept);
  }

  if (deadline.expired) {
    outcome.metrics.timed_out = true;
    outcome.metrics.exec_ms =
        std::chrono::duration<double, std::milli>(Clock::now() - started).count();
    outcome.error = "execution-timeout";
    return outcome;
  }

  ResultSet rs;
  if (ast.form == QueryForm::Ask) {
    rs.kind = ResultSet::Kind::Boolean;
    rs.boolean = !solutions.empty();
  } else if (ast.aggregate) {
    rs.kind = ResultSet::Kind::Rows;
    rs.columns = {ast.aggregate->alias};
    uint64_t count = 0;
    if (ast.aggregate->distinct) {
      std::set<Term> seen;
      for (const Binding& b : solutions) seen.insert(b.at(ast.aggregate->var));
      count = seen.size();
    } else {
      count = solutions.size();
    }
    rs.rows.push_back({Term::integer(static_cast<long long>(count))});
  } else {
    rs.kind = ResultSet::Kind::Rows;
    rs.columns = ast.projection;
    if (!ast.order_keys.empty()) {
      std::stable_sort(solutions.begin(), solutions.end(), [&](const Binding& a, const Binding& b) {
        for (const OrderKey& key : ast.order_keys) {
          int c = order_compare(a.at(key.var), b.at(key.var));
          if (key.descending) c = -c;
          if (c != 0) return c < 0;
        }
        return false;
      });
    }
    for (const Binding& binding : solutions) {
      std::vector<Term> row;
      row.reserve(ast.projection.size());
      for (const std::string& var : ast.projection) row.push_back(binding.at(var));
      rs.rows.push_back(std::move(row));
    }
    if (ast.distinct) {
      std::set<std::vector<Term>> seen;
      std::vector<std::vector<Term>> unique;
      for (auto& row : rs.rows) {
        if (seen.insert(row).second) unique.push_back(std::move(row));
      }
      rs.rows = std::move(unique);
    }
  }
  if (rs.kind == ResultSet::Kind::Rows && ast.limit && rs.rows.size() > *ast.limit) {
    rs.rows.resize(*ast.limit);
  }

  outcome.metrics.rows = rs.kind == ResultSet::Kind::Rows ? rs.rows.size() : 0;
  outcome.metrics.exec_ms = std::chrono::duration<double, std::milli>(Clock::now() - started).count();
  outcome.result = std::move(rs);
  return outcome;
}

std::string ResultSet::to_tsv() const {
  if (kind == Kind::Boolean) return boolean ? "true\n" : "false\n";
  std::string out;
  for (size_t i = 0; i < columns.size(); ++i) {
    if (i) out += '\t';
    out += "?" + columns[i];
  }
  out += '\n';
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      if (i) out += '\t';
      out += row[i].ntriples();
    }
    out += '\n';
  }
  return out;
}

}  // namespace kgbench::sparql
