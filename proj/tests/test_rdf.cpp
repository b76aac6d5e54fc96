#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sstream>

#include "core/graph.hpp"
#include "core/ntriples.hpp"
#include "core/schema.hpp"
#include "support/common.hpp"

using namespace kgbench;
using namespace kgbench::rdf;
using kgbench::testsupport::data_path;

namespace {

Term iri(const std::string& v) { return Term::iri(v); }

}  // namespace

TEST_CASE("graph indexes agree and insertion is idempotent") {
  Graph g;
  Triple t{iri("http://x/s"), iri("http://x/p"), Term::integer(5)};
  CHECK(g.insert(t));
  CHECK_FALSE(g.insert(t));  // duplicate collapses
  CHECK(g.size() == 1);
  CHECK(g.contains(t));

  // all three index paths report the triple
  CHECK(g.find(t.subject, std::nullopt, std::nullopt).size() == 1);
  CHECK(g.find(std::nullopt, t.predicate, std::nullopt).size() == 1);
  CHECK(g.find(std::nullopt, std::nullopt, t.object).size() == 1);
  CHECK(g.find(t.subject, t.predicate, t.object).size() == 1);
}

TEST_CASE("load_ntriples parses a typed literal line") {
  auto result = load_ntriples_string(
      "<http://x/a> <http://x/p> \"5\"^^<http://www.w3.org/2001/XMLSchema#integer> .\n");
  REQUIRE(result.rejected.empty());
  REQUIRE(result.graph.size() == 1);
  auto triples = result.graph.triples();
  CHECK(triples[0].object.is_literal());
  CHECK(triples[0].object.as_integer() == 5);
}

TEST_CASE("load_ntriples on empty input yields an empty graph") {
  auto result = load_ntriples_string("");
  CHECK(result.graph.size() == 0);
  CHECK(result.rejected.empty());
}

TEST_CASE("load_ntriples records malformed lines and keeps going") {
  const std::string text =
      "<http://x/a> <http://x/p> <http://x/b> .\n"
      "this is not a triple\n"
      "<http://x/a> <http://x/p> .\n"
      "# a comment\n"
      "<http://x/c> <http://x/p> \"ok\" .\n";
  auto result = load_ntriples_string(text);
  CHECK(result.graph.size() == 2);
  REQUIRE(result.rejected.size() == 2);
  CHECK(result.rejected[0].line == 2);
  CHECK(result.rejected[1].line == 3);
}

TEST_CASE("xsd:integer literals must have integer lexical forms") {
  auto result = load_ntriples_string(
      "<http://x/a> <http://x/p> \"abc\"^^<http://www.w3.org/2001/XMLSchema#integer> .\n");
  CHECK(result.graph.size() == 0);
  REQUIRE(result.rejected.size() == 1);
}

TEST_CASE("string escapes round-trip") {
  const std::string text = "<http://x/a> <http://x/p> \"line\\nbreak \\\"q\\\" \\\\\" .\n";
  auto result = load_ntriples_string(text);
  REQUIRE(result.graph.size() == 1);
  CHECK(result.graph.triples()[0].object.value == "line\nbreak \"q\" \\");

  // serialize -> load is a fixpoint on the triple set
  auto again = load_ntriples_string(result.graph.to_ntriples());
  CHECK(again.graph.triples() == result.graph.triples());
}

TEST_CASE("appendix fixture loads with the hand-counted size") {
  auto loaded = load_ntriples_file(data_path("appendix_fixture.nt"));
  CHECK(loaded.rejected.empty());
  CHECK(loaded.graph.size() == 39);  // fixture lines minus comments
}

TEST_CASE("serialize-load-serialize is a fixpoint on the fixture") {
  auto loaded = load_ntriples_file(data_path("appendix_fixture.nt"));
  const std::string once = loaded.graph.to_ntriples();
  auto reloaded = load_ntriples_string(once);
  CHECK(reloaded.graph.to_ntriples() == once);
}

TEST_CASE("label resolution follows per-class priority") {
  auto g = testsupport::load_fixture("appendix_fixture.nt");
  const auto& profile = SchemaProfile::default_profile();

  SUBCASE("persons prefer foaf:name over rdfs:label") {
    auto r = label_of(iri("http://dbpedia.org/resource/Herbert_Diess"), g, profile);
    REQUIRE(r.label.has_value());
    CHECK(*r.label == "Herbert Diess");  // not the rdfs:label "Dr. Herbert Diess"
    CHECK_FALSE(r.used_global_fallback);
  }
  SUBCASE("locations prefer spb:prefLabel") {
    auto r = label_of(iri("http://dbpedia.org/resource/California"), g, profile);
    REQUIRE(r.label.has_value());
    CHECK(*r.label == "California");
  }
  SUBCASE("entity with no labels yields none") {
    Graph tiny;
    tiny.insert({iri("http://x/e"), iri(std::string(vocab::kRdfType)),
                 iri(std::string(vocab::kCompany))});
    auto r = label_of(iri("http://x/e"), tiny, profile);
    CHECK_FALSE(r.label.has_value());
  }
  SUBCASE("location with only rdfs:label falls back within its priority list") {
    Graph tiny;
    tiny.insert({iri("http://x/loc"), iri(std::string(vocab::kRdfType)),
                 iri(std::string(vocab::kFeature))});
    tiny.insert({iri("http://x/loc"), iri(std::string(vocab::kRdfsLabel)), Term::literal("Loc")});
    auto r = label_of(iri("http://x/loc"), tiny, profile);
    REQUIRE(r.label.has_value());
    CHECK(*r.label == "Loc");
    CHECK_FALSE(r.used_global_fallback);
  }
  SUBCASE("untyped entity uses the global order and flags the fallback") {
    auto r = label_of(iri("http://dbpedia.org/resource/Software"), g, profile);
    REQUIRE(r.label.has_value());
    CHECK(*r.label == "Software");
    CHECK(r.used_global_fallback);
  }
}

TEST_CASE("extract_slice keeps qualifying companies only") {
  Graph src;
  auto company = [&](const std::string& name, bool with_core) {
    Term c = iri("http://x/" + name);
    src.insert({c, iri(std::string(vocab::kRdfType)), iri(std::string(vocab::kCompany))});
    src.insert({c, iri(std::string(vocab::kRdfsLabel)), Term::literal(name)});
    if (with_core) src.insert({c, iri(std::string(vocab::kFoundingYear)), Term::integer(1990)});
    return c;
  };
  company("a", true);
  company("b", false);  // no core predicate
  company("c", true);

  SliceOptions options;
  options.max_companies = 10;
  Graph slice = extract_slice(src, SchemaProfile::default_profile(), options);

  auto slice_companies = slice.subjects_with(iri(std::string(vocab::kRdfType)),
                                             iri(std::string(vocab::kCompany)));
  CHECK(slice_companies.size() == 2);

  SUBCASE("max_companies = 0 violates the precondition") {
    SliceOptions bad;
    bad.max_companies = 0;
    CHECK_THROWS_AS(extract_slice(src, SchemaProfile::default_profile(), bad),
                    std::invalid_argument);
  }
}

TEST_CASE("slice of a schema-pure source is the source") {
  auto g = testsupport::load_fixture("appendix_fixture.nt");
  SliceOptions options;
  options.max_companies = 100;
  Graph slice = extract_slice(g, SchemaProfile::default_profile(), options);
  CHECK(slice.to_ntriples() == g.to_ntriples());
}

TEST_CASE("slice output is closed under whitelist plus labels plus rdf:type") {
  auto g = testsupport::load_fixture("appendix_fixture.nt");
  SliceOptions options;
  options.max_companies = 2;
  Graph slice = extract_slice(g, SchemaProfile::default_profile(), options);
  const auto& profile = SchemaProfile::default_profile();
  for (const Triple& t : slice.triples()) {
    CHECK(profile.predicate_allowed(t.predicate.value));
  }
  CHECK(slice.size() > 0);
}

TEST_CASE("slice cap picks first-N in subject order; shuffle reorders deterministically") {
  auto g = testsupport::load_fixture("appendix_fixture.nt");
  SliceOptions first_n;
  first_n.max_companies = 2;
  Graph a = extract_slice(g, SchemaProfile::default_profile(), first_n);
  auto companies = a.subjects_with(iri(std::string(vocab::kRdfType)),
                                   iri(std::string(vocab::kCompany)));
  REQUIRE(companies.size() == 2);
  // subjects sort ascending: Airbus before FileMaker/Facebook/Volkswagen
  CHECK(companies[0].value == "http://dbpedia.org/resource/Airbus");

  SliceOptions shuffled;
  shuffled.max_companies = 2;
  shuffled.order = SliceOrder::Shuffled;
  shuffled.shuffle_seed = 7;
  Graph b1 = extract_slice(g, SchemaProfile::default_profile(), shuffled);
  Graph b2 = extract_slice(g, SchemaProfile::default_profile(), shuffled);
  CHECK(b1.to_ntriples() == b2.to_ntriples());
}

TEST_CASE("blank nodes load but stay out of slices") {
  const std::string text =
      "_:b1 <http://www.w3.org/1999/02/22-rdf-syntax-ns#type> <http://dbpedia.org/ontology/Company> .\n"
      "_:b1 <http://dbpedia.org/ontology/foundingYear> \"1990\"^^<http://www.w3.org/2001/XMLSchema#integer> .\n";
  auto loaded = load_ntriples_string(text);
  CHECK(loaded.graph.size() == 2);
  SliceOptions options;
  options.max_companies = 5;
  Graph slice = extract_slice(loaded.graph, SchemaProfile::default_profile(), options);
  CHECK(slice.size() == 0);
}
