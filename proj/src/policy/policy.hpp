#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "core/schema.hpp"
#include "sparql/ast.hpp"
#include "sparql/eval.hpp"

namespace kgbench::policy {

using rdf::SchemaProfile;
using sparql::QueryAst;

enum class Category {
  Generic,
  Counting,
  Comparative,
  Superlative,
  Ordinal,
  MultiHop,
  Intersection,
  Difference,
  YesNo,
};

inline constexpr size_t kCategoryCount = 9;

struct CategoryPolicy {
  sparql::QueryForm required_form = sparql::QueryForm::Select;
  bool require_count_distinct = false;
  bool require_order_and_limit1 = false;
  bool require_distinct = false;
  std::optional<uint64_t> default_limit;
};

struct CategoryInfo {
  Category category;
  std::string id;               // stable machine name ("yesno", "multihop", ...)
  std::string display;          // table rendering ("Yes/No", "Multi-hop", ...)
  std::string example_pattern;  // canonical question pattern for the category
  char profile_type;            // S = simple lookup, C = compositional, N = negative/boolean
  CategoryPolicy policy;
};

const std::array<CategoryInfo, kCategoryCount>& category_registry();
const CategoryInfo& category_info(Category c);
std::optional<Category> category_from_id(const std::string& id);

enum class StrategyTag { Join, Filter, Count, Order, Negation, Ask, Rag };

inline constexpr std::array<StrategyTag, 7> kAllStrategyTags = {
    StrategyTag::Join, StrategyTag::Filter, StrategyTag::Count, StrategyTag::Order,
    StrategyTag::Negation, StrategyTag::Ask, StrategyTag::Rag};

std::string strategy_tag_text(StrategyTag tag);
std::optional<StrategyTag> strategy_tag_from_text(const std::string& text);

struct Violation {
  std::string kind;  // "predicate" | "class"
  std::string detail;
};

// Empty iff every concrete predicate (incl. NOT EXISTS) is whitelisted and
// every class used with rdf:type is a profile class.
std::vector<Violation> validate_schema(const QueryAst& ast, const SchemaProfile& profile);

struct Rewrite {
  std::string kind;
  std::string detail;
};

struct EnforceResult {
  QueryAst ast;
  std::vector<Rewrite> rewrites;
  std::optional<std::string> error;  // "unenforceable: ..."

  bool ok() const { return !error.has_value(); }
};

// Rewrites the query into the category's canonical form: COUNT(DISTINCT)
// for counting, ASK for yes/no, entity tie-break + LIMIT 1 for
// superlative/ordinal, DISTINCT and a default LIMIT for set-returning
// categories. Idempotent: a second application is a no-op.
EnforceResult enforce_category_pattern(const QueryAst& ast, Category category);

// The variable used for deterministic tie-breaks: first projected variable
// that looks entity-typed, else the lexicographically first subject variable.
std::optional<std::string> tiebreak_variable(const QueryAst& ast);

std::set<StrategyTag> tag_strategies(const QueryAst& ast, bool used_retrieval_context);

struct GuardViolation {
  std::string kind;  // "self-comparison" | "retrieval-self-reference" | "answer-type-mismatch"
  std::string detail;
};

std::vector<GuardViolation> guard_checks(const std::string& question, const QueryAst& ast,
                                         Category category, const sparql::ResultSet& result,
                                         const std::vector<std::string>& retrieved_questions,
                                         double dedup_threshold);

}  // namespace kgbench::policy
