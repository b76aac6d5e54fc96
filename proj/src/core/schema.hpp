#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "core/graph.hpp"
#include "core/term.hpp"

namespace kgbench::rdf {

namespace vocab {

inline constexpr std::string_view kDbo = "http://dbpedia.org/ontology/";
inline constexpr std::string_view kDbr = "http://dbpedia.org/resource/";
inline constexpr std::string_view kRdf = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline constexpr std::string_view kRdfs = "http://www.w3.org/2000/01/rdf-schema#";
inline constexpr std::string_view kFoaf = "http://xmlns.com/foaf/0.1/";
inline constexpr std::string_view kGn = "http://www.geonames.org/ontology#";
inline constexpr std::string_view kSpb = "http://www.ldbcouncil.org/spb#";
inline constexpr std::string_view kXsd = "http://www.w3.org/2001/XMLSchema#";

inline constexpr std::string_view kRdfType = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
inline constexpr std::string_view kCompany = "http://dbpedia.org/ontology/Company";
inline constexpr std::string_view kIndustryClass = "http://dbpedia.org/ontology/Industry";
inline constexpr std::string_view kFeature = "http://www.geonames.org/ontology#Feature";
inline constexpr std::string_view kPerson = "http://xmlns.com/foaf/0.1/Person";

inline constexpr std::string_view kLocation = "http://dbpedia.org/ontology/location";
inline constexpr std::string_view kIndustry = "http://dbpedia.org/ontology/industry";
inline constexpr std::string_view kKeyPerson = "http://dbpedia.org/ontology/keyPerson";
inline constexpr std::string_view kFoundingYear = "http://dbpedia.org/ontology/foundingYear";
inline constexpr std::string_view kNumEmployees = "http://dbpedia.org/ontology/numberOfEmployees";

inline constexpr std::string_view kRdfsLabel = "http://www.w3.org/2000/01/rdf-schema#label";
inline constexpr std::string_view kPrefLabel = "http://www.ldbcouncil.org/spb#prefLabel";
inline constexpr std::string_view kFoafName = "http://xmlns.com/foaf/0.1/name";

inline constexpr std::string_view kXsdInteger = "http://www.w3.org/2001/XMLSchema#integer";

}  // namespace vocab

// Fixed-schema description of the company/location/person mini-slice:
// which classes and predicates are legal, how question slots map to
// classes, and which label predicate wins per class.
struct SchemaProfile {
  std::set<std::string> classes;
  std::set<std::string> predicate_whitelist;
  std::map<std::string, std::string> slot_types;  // slot kind -> class IRI
  std::map<std::string, std::vector<std::string>> label_priority;  // class IRI -> label predicates
  std::set<std::string> numeric_predicates;

  static const SchemaProfile& default_profile();

  std::set<std::string> label_predicates() const;
  // whitelist ∪ labels ∪ rdf:type
  bool predicate_allowed(const std::string& iri) const;
  bool class_allowed(const std::string& iri) const { return classes.count(iri) > 0; }
};

struct LabelResult {
  std::optional<std::string> label;
  bool used_global_fallback = false;  // entity had no rdf:type in the profile's classes
};

// Picks the first label following the entity class's priority list
// (persons: foaf:name first; companies: rdfs:label; locations: spb:prefLabel).
LabelResult label_of(const Term& entity, const Graph& graph, const SchemaProfile& profile);

enum class SliceOrder { FirstN, Shuffled };

struct SliceOptions {
  uint64_t max_companies = 0;  // must be >= 1
  SliceOrder order = SliceOrder::FirstN;
  uint64_t shuffle_seed = 0;
};

// Keeps up to max_companies companies that carry at least one core
// predicate, plus their core/label triples and the type+label triples of
// linked locations, persons and industries. Blank nodes are dropped.
Graph extract_slice(const Graph& source, const SchemaProfile& profile, const SliceOptions& options);

}  // namespace kgbench::rdf
