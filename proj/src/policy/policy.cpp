#include "policy/policy.hpp"

#include <algorithm>

#include "retrieval/retrieval.hpp"

namespace kgbench::policy {

namespace {

using sparql::QueryForm;
using sparql::TriplePattern;

CategoryPolicy select_policy(bool distinct, std::optional<uint64_t> limit) {
  CategoryPolicy p;
  p.require_distinct = distinct;
  p.default_limit = limit;
  return p;
}

}  // namespace

const std::array<CategoryInfo, kCategoryCount>& category_registry() {
  static const std::array<CategoryInfo, kCategoryCount> registry = [] {
    CategoryPolicy counting;
    counting.require_count_distinct = true;

    CategoryPolicy ordered;
    ordered.require_order_and_limit1 = true;

    CategoryPolicy yesno;
    yesno.required_form = QueryForm::Ask;

    return std::array<CategoryInfo, kCategoryCount>{{
        {Category::Generic, "generic", "Generic", "Who is a key person at {company}?", 'S',
         select_policy(true, 5)},
        {Category::Counting, "counting", "Counting", "How many companies are in {location}?", 'S',
         counting},
        {Category::Comparative, "comparative", "Comparative",
         "Do {company1} and {company2} differ in size?", 'S', select_policy(false, 5)},
        {Category::Superlative, "superlative", "Superlative", "Which company has most employees?", 'S',
         ordered},
        {Category::Ordinal, "ordinal", "Ordinal", "What year was {company} founded?", 'S', ordered},
        {Category::MultiHop, "multihop", "Multi-hop",
         "Which location has companies with key persons?", 'C', select_policy(true, 5)},
        {Category::Intersection, "intersection", "Intersection",
         "Which companies are in {location} and {industry}?", 'C', select_policy(true, 5)},
        {Category::Difference, "difference", "Difference", "Which companies are in {A} but not {B}?",
         'C', select_policy(true, 5)},
        {Category::YesNo, "yesno", "Yes/No", "Is {company} located in {location}?", 'N', yesno},
    }};
  }();
  return registry;
}

const CategoryInfo& category_info(Category c) {
  return category_registry()[static_cast<size_t>(c)];
}

std::optional<Category> category_from_id(const std::string& id) {
  for (const CategoryInfo& info : category_registry()) {
    if (info.id == id) return info.category;
  }
  return std::nullopt;
}

std::string strategy_tag_text(StrategyTag tag) {
  switch (tag) {
    case StrategyTag::Join: return "JOIN";
    case StrategyTag::Filter: return "FILTER";
    case StrategyTag::Count: return "COUNT";
    case StrategyTag::Order: return "ORDER";
    case StrategyTag::Negation: return "NEGATION";
    case StrategyTag::Ask: return "ASK";
    case StrategyTag::Rag: return "RAG";
  }
  return "JOIN";
}

std::optional<StrategyTag> strategy_tag_from_text(const std::string& text) {
  for (StrategyTag tag : kAllStrategyTags) {
    if (strategy_tag_text(tag) == text) return tag;
  }
  return std::nullopt;
}

std::vector<Violation> validate_schema(const QueryAst& ast, const SchemaProfile& profile) {
  std::vector<Violation> violations;
  auto check = [&](const TriplePattern& p) {
    if (p.predicate.is_var || !p.predicate.term.is_iri()) return;
    const std::string& pred = p.predicate.term.value;
    if (!profile.predicate_allowed(pred)) {
      violations.push_back({"predicate", pred});
      return;
    }
    if (pred == rdf::vocab::kRdfType && !p.object.is_var && p.object.term.is_iri() &&
        !profile.class_allowed(p.object.term.value)) {
      violations.push_back({"class", p.object.term.value});
    }
  };
  for (const TriplePattern& p : ast.patterns) check(p);
  for (const auto& block : ast.not_exists) {
    for (const TriplePattern& p : block) check(p);
  }
  return violations;
}

std::optional<std::string> tiebreak_variable(const QueryAst& ast) {
  auto is_entity_var = [&](const std::string& var) {
    for (const TriplePattern& p : ast.patterns) {
      if (p.subject.is_var && p.subject.var == var) return true;
    }
    for (const sparql::ValuesClause& v : ast.values) {
      if (v.var != var) continue;
      for (const rdf::Term& t : v.terms) {
        if (t.is_iri()) return true;
      }
    }
    return false;
  };
  for (const std::string& var : ast.projection) {
    if (is_entity_var(var)) return var;
  }
  std::optional<std::string> first_subject;
  for (const TriplePattern& p : ast.patterns) {
    if (p.subject.is_var && (!first_subject || p.subject.var < *first_subject)) {
      first_subject = p.subject.var;
    }
  }
  return first_subject;
}

EnforceResult enforce_category_pattern(const QueryAst& ast, Category category) {
  EnforceResult result;
  result.ast = ast;
  QueryAst& q = result.ast;
  const CategoryPolicy& policy = category_info(category).policy;
  auto log = [&](std::string kind, std::string detail = {}) {
    result.rewrites.push_back({std::move(kind), std::move(detail)});
  };

  if (policy.required_form == QueryForm::Ask && q.form == QueryForm::Select) {
    q.form = QueryForm::Ask;
    q.projection.clear();
    q.aggregate.reset();
    q.distinct = false;
    q.order_keys.clear();
    q.limit.reset();
    log("converted-select-to-ask");
  }

  if (policy.require_count_distinct) {
    if (q.form == QueryForm::Ask) {
      result.error = "unenforceable: counting pattern requires a SELECT form";
      return result;
    }
    if (!q.aggregate) {
      if (q.projection.empty()) {
        result.error = "unenforceable: counting query has no candidate count variable";
        return result;
      }
      sparql::Aggregate agg;
      agg.distinct = true;
      agg.var = q.projection.front();
      std::string alias = "count";
      const auto bound = q.bound_variables();
      while (std::find(bound.begin(), bound.end(), alias) != bound.end()) alias += "_";
      agg.alias = alias;
      q.aggregate = agg;
      q.projection.clear();
      q.distinct = false;
      log("wrapped-projection-in-count-distinct", "?" + agg.var);
    } else if (!q.aggregate->distinct) {
      q.aggregate->distinct = true;
      log("count-distinct-injected", "?" + q.aggregate->var);
    }
  }

  if (policy.require_order_and_limit1) {
    if (q.form == QueryForm::Ask || q.aggregate) {
      result.error = "unenforceable: ordered pattern requires a plain SELECT form";
      return result;
    }
    std::optional<std::string> entity = tiebreak_variable(q);
    if (entity) {
      bool already = !q.order_keys.empty() && !q.order_keys.back().descending &&
                     q.order_keys.back().var == *entity;
      if (!already) {
        q.order_keys.push_back({*entity, false});
        log("appended-entity-tiebreak", "?" + *entity);
      }
    } else if (q.order_keys.empty()) {
      result.error = "unenforceable: no candidate entity variable for deterministic ordering";
      return result;
    }
    if (!q.limit || *q.limit != 1) {
      q.limit = 1;
      log("limit-set-to-1");
    }
  }

  if (policy.require_distinct && q.form == QueryForm::Select && !q.aggregate && !q.distinct) {
    q.distinct = true;
    log("distinct-injected");
  }
  if (policy.default_limit && q.form == QueryForm::Select && !q.aggregate && !q.limit) {
    q.limit = *policy.default_limit;
    log("default-limit-injected", std::to_string(*policy.default_limit));
  }
  return result;
}

std::set<StrategyTag> tag_strategies(const QueryAst& ast, bool used_retrieval_context) {
  std::set<StrategyTag> tags;

  std::vector<const TriplePattern*> all;
  for (const TriplePattern& p : ast.patterns) all.push_back(&p);
  for (const auto& block : ast.not_exists) {
    for (const TriplePattern& p : block) all.push_back(&p);
  }
  std::map<std::string, int> var_pattern_count;
  for (const TriplePattern* p : all) {
    std::set<std::string> vars;
    if (p->subject.is_var) vars.insert(p->subject.var);
    if (p->predicate.is_var) vars.insert(p->predicate.var);
    if (p->object.is_var) vars.insert(p->object.var);
    for (const std::string& v : vars) ++var_pattern_count[v];
  }
  bool shared = false;
  for (const auto& [var, count] : var_pattern_count) {
    if (count >= 2) {
      shared = true;
      break;
    }
  }
  if (all.size() >= 2 && shared) tags.insert(StrategyTag::Join);

  const auto metrics = sparql::complexity_metrics(ast);
  if (metrics.filter_count >= 1) tags.insert(StrategyTag::Filter);
  if (metrics.uses_count) tags.insert(StrategyTag::Count);
  if (metrics.uses_order) tags.insert(StrategyTag::Order);
  if (!ast.not_exists.empty()) tags.insert(StrategyTag::Negation);
  if (ast.form == QueryForm::Ask) tags.insert(StrategyTag::Ask);
  if (used_retrieval_context) tags.insert(StrategyTag::Rag);
  return tags;
}

std::vector<GuardViolation> guard_checks(const std::string& question, const QueryAst& ast,
                                         Category category, const sparql::ResultSet& result,
                                         const std::vector<std::string>& retrieved_questions,
                                         double dedup_threshold) {
  std::vector<GuardViolation> violations;

  if (category == Category::Comparative) {
    for (size_t i = 0; i < ast.values.size(); ++i) {
      for (size_t j = i + 1; j < ast.values.size(); ++j) {
        const auto& a = ast.values[i];
        const auto& b = ast.values[j];
        if (a.terms.size() == 1 && a.terms == b.terms && a.terms.front().is_iri()) {
          violations.push_back({"self-comparison",
                                "?" + a.var + " and ?" + b.var + " both bind " + a.terms.front().value});
        }
      }
    }
  }

  for (const std::string& retrieved : retrieved_questions) {
    if (retrieval::jaccard(question, retrieved) >= dedup_threshold) {
      violations.push_back({"retrieval-self-reference", retrieved});
      break;
    }
  }

  const bool is_boolean = result.kind == sparql::ResultSet::Kind::Boolean;
  if (category == Category::YesNo) {
    if (!is_boolean) violations.push_back({"answer-type-mismatch", "expected boolean result"});
  } else if (category == Category::Counting) {
    bool ok = !is_boolean && result.rows.size() == 1 && result.columns.size() == 1 &&
              result.rows.front().size() == 1 && result.rows.front().front().integer_castable();
    if (!ok) violations.push_back({"answer-type-mismatch", "expected a single integer count row"});
  } else {
    if (is_boolean) violations.push_back({"answer-type-mismatch", "expected entity/value rows"});
  }
  return violations;
}

}  // namespace kgbench::policy
