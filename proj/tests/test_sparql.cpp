#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "sparql/parser.hpp"
#include "sparql/serialize.hpp"
#include "support/common.hpp"

using namespace kgbench;
using namespace kgbench::sparql;
using kgbench::testsupport::query_text;

namespace {

QueryAst must_parse(const std::string& text) {
  auto result = parse_query(text);
  REQUIRE_MESSAGE(result.ok(), (result.error ? result.error->to_string() : std::string("no error")));
  return *result.ast;
}

const std::vector<std::string> kCategories = {"generic",    "counting",     "comparative",
                                              "superlative", "ordinal",      "multihop",
                                              "intersection", "difference",  "yesno"};

}  // namespace

TEST_CASE("all nine category example queries parse") {
  for (const std::string& cat : kCategories) {
    CAPTURE(cat);
    auto result = parse_query(query_text(cat));
    CHECK_MESSAGE(result.ok(), (result.error ? result.error->to_string() : std::string()));
  }
}

TEST_CASE("yes/no example: ASK form with semicolon list flattened to 2 patterns") {
  QueryAst ast = must_parse(query_text("yesno"));
  CHECK(ast.form == QueryForm::Ask);
  CHECK(ast.patterns.size() == 2);
  CHECK(ast.projection.empty());
  CHECK_FALSE(ast.limit.has_value());
  CHECK(ast.order_keys.empty());
  // both patterns share the inline subject
  CHECK(ast.patterns[0].subject == ast.patterns[1].subject);
  CHECK_FALSE(ast.patterns[0].subject.is_var);
}

TEST_CASE("counting example: one COUNT(DISTINCT) aggregate, 3 patterns, 1 VALUES") {
  QueryAst ast = must_parse(query_text("counting"));
  REQUIRE(ast.aggregate.has_value());
  CHECK(ast.aggregate->distinct);
  CHECK(ast.aggregate->var == "company");
  CHECK(ast.aggregate->alias == "count");
  CHECK(ast.patterns.size() == 3);
  CHECK(ast.values.size() == 1);
  CHECK(ast.projection.empty());
}

TEST_CASE("prefixed names resolve through the default prefix table") {
  QueryAst ast = must_parse(query_text("counting"));
  bool saw_company_class = false;
  for (const auto& p : ast.patterns) {
    if (!p.object.is_var && p.object.term.value == "http://dbpedia.org/ontology/Company") {
      saw_company_class = true;
      // 'a' expands to rdf:type
      CHECK(p.predicate.term.value == "http://www.w3.org/1999/02/22-rdf-syntax-ns#type");
    }
  }
  CHECK(saw_company_class);
}

TEST_CASE("explicit PREFIX declarations override the defaults") {
  QueryAst ast = must_parse(
      "PREFIX dbo: <http://other.example/ns#>\n"
      "SELECT ?x WHERE { ?x a dbo:Company . }");
  REQUIRE(ast.patterns.size() == 1);
  CHECK(ast.patterns[0].object.term.value == "http://other.example/ns#Company");
}

TEST_CASE("unbound projection is rejected") {
  auto result = parse_query("SELECT ?x WHERE { }");
  REQUIRE_FALSE(result.ok());
  CHECK(result.error->cls == ParseErrorClass::Semantic);
}

TEST_CASE("syntax errors carry a position") {
  auto result = parse_query("SELECT ?x WHERE { ?x <http://x/p ?y . }");
  REQUIRE_FALSE(result.ok());
  CHECK(result.error->cls == ParseErrorClass::Syntax);
  CHECK(result.error->line >= 1);
}

TEST_CASE("unsupported SPARQL features are a distinct error class") {
  const std::vector<std::string> cases = {
      "SELECT ?x WHERE { ?x a ?c . OPTIONAL { ?x <http://x/p> ?y . } }",
      "SELECT ?x WHERE { { ?x a ?c . } UNION { ?x <http://x/p> ?y . } }",
      "SELECT ?x WHERE { ?x <http://x/p>/<http://x/q> ?y . }",
      "SELECT * WHERE { ?x a ?c . }",
      "SELECT ?x WHERE { ?x a ?c . } OFFSET 5",
      "CONSTRUCT { ?x a ?c . } WHERE { ?x a ?c . }",
      "SELECT ?x WHERE { ?x a ?c . MINUS { ?x <http://x/p> ?y . } }",
  };
  for (const std::string& text : cases) {
    CAPTURE(text);
    auto result = parse_query(text);
    REQUIRE_FALSE(result.ok());
    CHECK(result.error->cls == ParseErrorClass::UnsupportedFeature);
  }
}

TEST_CASE("ASK rejects solution modifiers") {
  auto result = parse_query("ASK { ?x a ?c . } LIMIT 5");
  REQUIRE_FALSE(result.ok());
  CHECK(result.error->cls == ParseErrorClass::Semantic);
}

TEST_CASE("FILTER operands must be variables or literals") {
  auto result = parse_query("SELECT ?x WHERE { ?x a ?c . FILTER (?x = <http://x/e>) }");
  REQUIRE_FALSE(result.ok());
  CHECK(result.error->cls == ParseErrorClass::Semantic);
}

TEST_CASE("serialize-parse round-trips every category example") {
  for (const std::string& cat : kCategories) {
    CAPTURE(cat);
    QueryAst ast = must_parse(query_text(cat));
    const std::string once = serialize(ast);
    QueryAst again = must_parse(once);
    CHECK(again == ast);
    // canonical text is a fixpoint after one round
    CHECK(serialize(again) == once);
  }
}

TEST_CASE("whitespace-only differences serialize identically") {
  const std::string a = "SELECT ?x WHERE { ?x a dbo:Company . } LIMIT 5";
  const std::string b = "SELECT   ?x\nWHERE {\n\n  ?x a dbo:Company    .\n}\nLIMIT 5\n";
  CHECK(serialize(must_parse(a)) == serialize(must_parse(b)));
}

TEST_CASE("VALUES term order is preserved through a round-trip") {
  QueryAst ast = must_parse(
      "SELECT ?x WHERE { VALUES ?x { <http://x/b> <http://x/a> } ?x a dbo:Company . }");
  REQUIRE(ast.values.size() == 1);
  REQUIRE(ast.values[0].terms.size() == 2);
  CHECK(ast.values[0].terms[0].value == "http://x/b");
  QueryAst again = must_parse(serialize(ast));
  CHECK(again.values[0].terms == ast.values[0].terms);
}

TEST_CASE("complexity metrics follow the stated counting rules") {
  SUBCASE("difference example: inner NOT EXISTS patterns count as triples and one filter") {
    auto m = complexity_metrics(must_parse(query_text("difference")));
    CHECK(m.triple_count == 3);  // 2 outer + 1 inner
    CHECK(m.filter_count == 1);  // FILTER NOT EXISTS counts once
    CHECK_FALSE(m.uses_count);
    CHECK_FALSE(m.uses_order);
  }
  SUBCASE("superlative example uses ORDER but not COUNT") {
    auto m = complexity_metrics(must_parse(query_text("superlative")));
    CHECK(m.uses_order);
    CHECK_FALSE(m.uses_count);
    CHECK(m.filter_count == 0);
  }
  SUBCASE("degenerate ASK {} is all zeros") {
    auto m = complexity_metrics(must_parse("ASK { }"));
    CHECK(m.triple_count == 0);
    CHECK(m.filter_count == 0);
    CHECK_FALSE(m.uses_count);
    CHECK_FALSE(m.uses_order);
  }
}

TEST_CASE("comparative example parses filters and VALUES pairs") {
  QueryAst ast = must_parse(query_text("comparative"));
  CHECK(ast.values.size() == 2);
  REQUIRE(ast.filters.size() == 1);
  CHECK(ast.filters[0].op == CompareOp::Ne);
  CHECK(ast.limit == 5);
}

TEST_CASE("integer literals in queries are typed xsd:integer") {
  QueryAst ast = must_parse("SELECT ?x WHERE { ?x <http://x/p> ?n . FILTER (?n > 100) }");
  REQUIRE(ast.filters.size() == 1);
  CHECK_FALSE(ast.filters[0].rhs.is_var);
  CHECK(ast.filters[0].rhs.literal.as_integer() == 100);
}
