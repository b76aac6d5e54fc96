// Writes the deterministic desk-scale slice used by the integration and
// acceptance suites: 60 companies over 40 locations, 60 key persons and
// 15 industries, every entity labeled. Regenerate with:
//   gen_fixture data/desk_slice.nt
#include <cstdio>
#include <string>
#include <vector>

#include "core/graph.hpp"
#include "core/ntriples.hpp"
#include "core/schema.hpp"

using namespace kgbench::rdf;

namespace {

const std::vector<std::string> kAdjectives = {
    "Amber",  "Borealis", "Cobalt",  "Drift",   "Ember",   "Falcon",
    "Granite", "Harbor",  "Indigo",  "Juniper", "Kestrel", "Lumen"};
const std::vector<std::string> kNouns = {"Analytics", "Dynamics", "Logistics", "Systems", "Works"};

const std::vector<std::string> kLocations = {
    "Northfield", "Eastvale",  "Westbrook", "Southgate", "Riverton",  "Lakewood",  "Hillmont",
    "Stonebridge", "Fairhaven", "Maplewood", "Cedarview", "Oakridge",  "Pinehurst", "Elmsworth",
    "Ashford",     "Briarton",  "Claymore",  "Dunmore",   "Eldergrove", "Foxglen",  "Greenford",
    "Hazelmere",   "Ironwood",  "Jasperville", "Kingsmere", "Larkspur", "Millbrook", "Nettlebay",
    "Ortonville",  "Penrose",   "Quarrytown", "Redcliff",  "Silverlake", "Thornbury", "Umberfield",
    "Vantage",     "Willowmere", "Yarrowdale", "Zephyrton", "Bellhaven"};

const std::vector<std::string> kFirstNames = {
    "Ada",    "Bruno", "Clara", "Dmitri", "Elena",  "Farid", "Greta", "Hugo",  "Iris",   "Jonas",
    "Khadija", "Liam", "Mira",  "Noah",   "Odette", "Pavel", "Quinn", "Rosa",  "Stefan", "Tessa"};
const std::vector<std::string> kLastNames = {"Almeida", "Brandt", "Castellanos", "Duarte",
                                             "Eriksen", "Fontaine", "Grimaldi",  "Hoffmann",
                                             "Ivanova", "Jansen",   "Kowalski",  "Lindqvist"};

const std::vector<std::string> kIndustries = {
    "Software",  "Aerospace", "Automotive", "Biotechnology", "Energy",
    "Finance",   "Healthcare", "Insurance", "Logistics",     "Manufacturing",
    "Media",     "Mining",    "Retail",    "Telecommunications", "Agriculture"};

std::string resource_iri(const std::string& label) {
  std::string local;
  for (char c : label) local.push_back(c == ' ' ? '_' : c);
  return std::string(vocab::kDbr) + local;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::fprintf(stderr, "usage: gen_fixture <output.nt>\n");
    return 2;
  }

  Graph g;
  const Term rdf_type = Term::iri(std::string(vocab::kRdfType));
  const Term company_cls = Term::iri(std::string(vocab::kCompany));
  const Term feature_cls = Term::iri(std::string(vocab::kFeature));
  const Term person_cls = Term::iri(std::string(vocab::kPerson));

  std::vector<Term> locations, persons, industries;
  for (const std::string& name : kLocations) {
    Term loc = Term::iri(resource_iri(name));
    g.insert({loc, rdf_type, feature_cls});
    g.insert({loc, Term::iri(std::string(vocab::kPrefLabel)), Term::literal(name)});
    locations.push_back(loc);
  }
  for (size_t i = 0; i < 60; ++i) {
    const std::string name = kFirstNames[i % kFirstNames.size()] + " " +
                             kLastNames[(i / kFirstNames.size() + i) % kLastNames.size()];
    Term person = Term::iri(resource_iri(name));
    g.insert({person, rdf_type, person_cls});
    g.insert({person, Term::iri(std::string(vocab::kFoafName)), Term::literal(name)});
    persons.push_back(person);
  }
  for (const std::string& name : kIndustries) {
    Term industry = Term::iri(resource_iri(name));
    g.insert({industry, Term::iri(std::string(vocab::kRdfsLabel)), Term::literal(name)});
    industries.push_back(industry);
  }

  for (size_t i = 0; i < 60; ++i) {
    const std::string name =
        kAdjectives[i % kAdjectives.size()] + " " + kNouns[(i / kAdjectives.size()) % kNouns.size()];
    Term company = Term::iri(resource_iri(name));
    g.insert({company, rdf_type, company_cls});
    g.insert({company, Term::iri(std::string(vocab::kRdfsLabel)), Term::literal(name)});
    g.insert({company, Term::iri(std::string(vocab::kLocation)), locations[i % locations.size()]});
    if (i % 4 == 0) {
      g.insert({company, Term::iri(std::string(vocab::kLocation)),
                locations[(i + 7) % locations.size()]});
    }
    g.insert({company, Term::iri(std::string(vocab::kIndustry)), industries[i % industries.size()]});
    g.insert({company, Term::iri(std::string(vocab::kKeyPerson)), persons[i]});
    g.insert({company, Term::iri(std::string(vocab::kFoundingYear)),
              Term::integer(1900 + static_cast<long long>(i * 7 % 120))});
    g.insert({company, Term::iri(std::string(vocab::kNumEmployees)),
              Term::integer(120 + static_cast<long long>((i * 997) % 8999) * 7)});
  }

  kgbench::rdf::save_ntriples_file(g, argv[1]);
  std::printf("wrote %zu triples to %s\n", g.size(), argv[1]);
  return 0;
}
