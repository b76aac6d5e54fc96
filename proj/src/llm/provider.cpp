#include "llm/provider.hpp"

#include <algorithm>
#include <chrono>
#include <random>
#include <set>

#include "httplib.h"
#include "json.hpp"
#include "util/strings.hpp"

namespace kgbench::llm {

namespace {

using pipeline::TemplateSpec;
using policy::Category;

uint64_t splitmix64(uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

TemplateSpec make_template(Category cat, int ordinal, std::string nl,
                           std::map<std::string, std::string> slots, std::string skeleton) {
  TemplateSpec tpl;
  tpl.category = cat;
  tpl.id = policy::category_info(cat).id + "-t" + std::to_string(ordinal);
  tpl.nl_pattern = std::move(nl);
  tpl.slot_types = std::move(slots);
  tpl.sparql_skeleton = std::move(skeleton);
  return tpl;
}

std::map<Category, std::vector<TemplateSpec>> build_library() {
  std::map<Category, std::vector<TemplateSpec>> lib;

  lib[Category::Generic] = {
      make_template(Category::Generic, 1, "Who is a key person at {company}?", {{"company", "company"}},
                    "SELECT ?name\nWHERE {\n  ?company rdf:type dbo:Company .\n"
                    "  ?company dbo:keyPerson ?person .\n  ?person rdf:type foaf:Person .\n"
                    "  ?person foaf:name ?name .\n}\nLIMIT 5\n"),
      make_template(Category::Generic, 2, "Where is {company} located?", {{"company", "company"}},
                    "SELECT DISTINCT ?location\nWHERE {\n  ?company a dbo:Company .\n"
                    "  ?company dbo:location ?location .\n  ?location a gn:Feature .\n}\nLIMIT 5\n"),
      make_template(Category::Generic, 3, "Which industry does {company} operate in?",
                    {{"company", "company"}},
                    "SELECT DISTINCT ?industry\nWHERE {\n  ?company a dbo:Company .\n"
                    "  ?company dbo:industry ?industry .\n}\nLIMIT 5\n"),
      make_template(Category::Generic, 4, "What is the employee count recorded for {company}?",
                    {{"company", "company"}},
                    "SELECT ?employees\nWHERE {\n  ?company a dbo:Company .\n"
                    "  ?company dbo:numberOfEmployees ?employees .\n}\nLIMIT 5\n"),
      make_template(Category::Generic, 5, "Who leads {company} as a key person?",
                    {{"company", "company"}},
                    "SELECT ?name\nWHERE {\n  ?company a dbo:Company .\n"
                    "  ?company dbo:keyPerson ?person .\n  ?person foaf:name ?name .\n}\nLIMIT 5\n"),
  };

  lib[Category::Counting] = {
      make_template(Category::Counting, 1, "How many companies are located in {location}?",
                    {{"location", "location"}},
                    "SELECT (COUNT(DISTINCT ?company) AS ?count)\nWHERE {\n"
                    "  ?company a dbo:Company .\n  ?company dbo:location ?location .\n"
                    "  ?location a gn:Feature .\n}\n"),
      make_template(Category::Counting, 2, "How many companies are in {location}?",
                    {{"location", "location"}},
                    "SELECT (COUNT(DISTINCT ?company) AS ?count)\nWHERE {\n"
                    "  ?company a dbo:Company .\n  ?company dbo:location ?location .\n}\n"),
      make_template(Category::Counting, 3, "How many companies operate in the {industry} industry?",
                    {{"industry", "industry"}},
                    "SELECT (COUNT(DISTINCT ?company) AS ?count)\nWHERE {\n"
                    "  ?company a dbo:Company .\n  ?company dbo:industry ?industry .\n}\n"),
      make_template(Category::Counting, 4, "How many companies count {person} as a key person?",
                    {{"person", "person"}},
                    "SELECT (COUNT(DISTINCT ?company) AS ?count)\nWHERE {\n"
                    "  ?company a dbo:Company .\n  ?company dbo:keyPerson ?person .\n}\n"),
      make_template(Category::Counting, 5, "How many locations does {company} operate in?",
                    {{"company", "company"}},
                    "SELECT (COUNT(DISTINCT ?location) AS ?count)\nWHERE {\n"
                    "  ?company a dbo:Company .\n  ?company dbo:location ?location .\n}\n"),
  };

  const std::string cmp_emp =
      "WHERE {\n  ?company1 a dbo:Company .\n  ?company2 a dbo:Company .\n"
      "  ?company1 dbo:numberOfEmployees ?n1 .\n  ?company2 dbo:numberOfEmployees ?n2 .\n";
  const std::string cmp_year =
      "WHERE {\n  ?company1 a dbo:Company .\n  ?company2 a dbo:Company .\n"
      "  ?company1 dbo:foundingYear ?y1 .\n  ?company2 dbo:foundingYear ?y2 .\n";
  const std::map<std::string, std::string> two_companies = {{"company1", "company"},
                                                            {"company2", "company"}};
  lib[Category::Comparative] = {
      make_template(Category::Comparative, 1,
                    "Do {company1} and {company2} have different numbers of employees?", two_companies,
                    "SELECT ?company1 ?n1 ?company2 ?n2\n" + cmp_emp + "  FILTER (?n1 != ?n2)\n}\nLIMIT 5\n"),
      make_template(Category::Comparative, 2, "Does {company1} employ more people than {company2}?",
                    two_companies,
                    "SELECT ?company1 ?n1 ?company2 ?n2\n" + cmp_emp + "  FILTER (?n1 > ?n2)\n}\nLIMIT 5\n"),
      make_template(Category::Comparative, 3, "Was {company1} founded earlier than {company2}?",
                    two_companies,
                    "SELECT ?company1 ?y1 ?company2 ?y2\n" + cmp_year + "  FILTER (?y1 < ?y2)\n}\nLIMIT 5\n"),
      make_template(Category::Comparative, 4, "Do {company1} and {company2} share an industry?",
                    two_companies,
                    "SELECT DISTINCT ?industry\nWHERE {\n  ?company1 a dbo:Company .\n"
                    "  ?company2 a dbo:Company .\n  ?company1 dbo:industry ?industry .\n"
                    "  ?company2 dbo:industry ?industry .\n}\nLIMIT 5\n"),
      make_template(Category::Comparative, 5, "Were {company1} and {company2} founded in the same year?",
                    two_companies,
                    "SELECT ?company1 ?y1 ?company2 ?y2\n" + cmp_year + "  FILTER (?y1 = ?y2)\n}\nLIMIT 5\n"),
  };

  lib[Category::Superlative] = {
      make_template(Category::Superlative, 1, "Which company has the most employees?", {},
                    "SELECT ?company ?employees\nWHERE {\n  ?company a dbo:Company .\n"
                    "  ?company dbo:numberOfEmployees ?employees .\n}\n"
                    "ORDER BY DESC(?employees) ?company\nLIMIT 1\n"),
      make_template(Category::Superlative, 2, "Which company in {location} has the most employees?",
                    {{"location", "location"}},
                    "SELECT ?company ?employees\nWHERE {\n  ?company a dbo:Company .\n"
                    "  ?company dbo:location ?location .\n  ?company dbo:numberOfEmployees ?employees .\n}\n"
                    "ORDER BY DESC(?employees) ?company\nLIMIT 1\n"),
      make_template(Category::Superlative, 3, "Which company in {location} has the fewest employees?",
                    {{"location", "location"}},
                    "SELECT ?company ?employees\nWHERE {\n  ?company a dbo:Company .\n"
                    "  ?company dbo:location ?location .\n  ?company dbo:numberOfEmployees ?employees .\n}\n"
                    "ORDER BY ?employees ?company\nLIMIT 1\n"),
      make_template(Category::Superlative, 4,
                    "Which company in the {industry} industry has the most employees?",
                    {{"industry", "industry"}},
                    "SELECT ?company ?employees\nWHERE {\n  ?company a dbo:Company .\n"
                    "  ?company dbo:industry ?industry .\n  ?company dbo:numberOfEmployees ?employees .\n}\n"
                    "ORDER BY DESC(?employees) ?company\nLIMIT 1\n"),
      make_template(Category::Superlative, 5, "Which company in {location} was founded most recently?",
                    {{"location", "location"}},
                    "SELECT ?company ?year\nWHERE {\n  ?company a dbo:Company .\n"
                    "  ?company dbo:location ?location .\n  ?company dbo:foundingYear ?year .\n}\n"
                    "ORDER BY DESC(?year) ?company\nLIMIT 1\n"),
  };

  lib[Category::Ordinal] = {
      make_template(Category::Ordinal, 1, "What is the founding year of {company}?",
                    {{"company", "company"}},
                    "SELECT ?year\nWHERE {\n  ?company a dbo:Company .\n"
                    "  ?company dbo:foundingYear ?year .\n}\nLIMIT 1\n"),
      make_template(Category::Ordinal, 2, "Which company in {location} was founded first?",
                    {{"location", "location"}},
                    "SELECT ?company ?year\nWHERE {\n  ?company a dbo:Company .\n"
                    "  ?company dbo:location ?location .\n  ?company dbo:foundingYear ?year .\n}\n"
                    "ORDER BY ?year ?company\nLIMIT 1\n"),
      make_template(Category::Ordinal, 3, "Which company in the {industry} industry was founded first?",
                    {{"industry", "industry"}},
                    "SELECT ?company ?year\nWHERE {\n  ?company a dbo:Company .\n"
                    "  ?company dbo:industry ?industry .\n  ?company dbo:foundingYear ?year .\n}\n"
                    "ORDER BY ?year ?company\nLIMIT 1\n"),
      make_template(Category::Ordinal, 4, "Which company in {location} was established last?",
                    {{"location", "location"}},
                    "SELECT ?company ?year\nWHERE {\n  ?company a dbo:Company .\n"
                    "  ?company dbo:location ?location .\n  ?company dbo:foundingYear ?year .\n}\n"
                    "ORDER BY DESC(?year) ?company\nLIMIT 1\n"),
      make_template(Category::Ordinal, 5, "In which year was {company} established?",
                    {{"company", "company"}},
                    "SELECT ?year\nWHERE {\n  ?company a dbo:Company .\n"
                    "  ?company dbo:foundingYear ?year .\n}\nLIMIT 1\n"),
  };

  lib[Category::MultiHop] = {
      make_template(Category::MultiHop, 1, "Which location contains companies that have a key person?",
                    {},
                    "SELECT DISTINCT ?location\nWHERE {\n  ?company a dbo:Company .\n"
                    "  ?company dbo:keyPerson ?person .\n  ?person rdf:type foaf:Person .\n"
                    "  ?company dbo:location ?location .\n  ?location a gn:Feature .\n}\nLIMIT 5\n"),
      make_template(Category::MultiHop, 2, "In which locations are companies led by {person}?",
                    {{"person", "person"}},
                    "SELECT DISTINCT ?location\nWHERE {\n  ?company a dbo:Company .\n"
                    "  ?company dbo:keyPerson ?person .\n  ?company dbo:location ?location .\n"
                    "  ?location a gn:Feature .\n}\nLIMIT 5\n"),
      make_template(Category::MultiHop, 3, "Which locations host companies in the {industry} industry?",
                    {{"industry", "industry"}},
                    "SELECT DISTINCT ?location\nWHERE {\n  ?company a dbo:Company .\n"
                    "  ?company dbo:industry ?industry .\n  ?company dbo:location ?location .\n"
                    "  ?location a gn:Feature .\n}\nLIMIT 5\n"),
      make_template(Category::MultiHop, 4,
                    "Which people serve as key persons at companies located in {location}?",
                    {{"location", "location"}},
                    "SELECT DISTINCT ?name\nWHERE {\n  ?company a dbo:Company .\n"
                    "  ?company dbo:location ?location .\n  ?company dbo:keyPerson ?person .\n"
                    "  ?person foaf:name ?name .\n}\nLIMIT 5\n"),
      make_template(Category::MultiHop, 5, "Which industries are represented by companies in {location}?",
                    {{"location", "location"}},
                    "SELECT DISTINCT ?industry\nWHERE {\n  ?company a dbo:Company .\n"
                    "  ?company dbo:location ?location .\n  ?company dbo:industry ?industry .\n}\nLIMIT 5\n"),
  };

  lib[Category::Intersection] = {
      make_template(Category::Intersection, 1,
                    "Which companies are located in {location} and are in the {industry}?",
                    {{"location", "location"}, {"industry", "industry"}},
                    "SELECT DISTINCT ?company\nWHERE {\n  ?company a dbo:Company .\n"
                    "  ?company dbo:location ?location .\n  ?company dbo:industry ?industry .\n}\nLIMIT 5\n"),
      make_template(Category::Intersection, 2, "Which companies are in {location} and led by {person}?",
                    {{"location", "location"}, {"person", "person"}},
                    "SELECT DISTINCT ?company\nWHERE {\n  ?company a dbo:Company .\n"
                    "  ?company dbo:location ?location .\n  ?company dbo:keyPerson ?person .\n}\nLIMIT 5\n"),
      make_template(Category::Intersection, 3,
                    "Which firms from {location} operate in the {industry} industry?",
                    {{"location", "location"}, {"industry", "industry"}},
                    "SELECT DISTINCT ?company\nWHERE {\n  ?company a dbo:Company .\n"
                    "  ?company dbo:location ?location .\n  ?company dbo:industry ?industry .\n}\nLIMIT 5\n"),
      make_template(Category::Intersection, 4,
                    "Which companies in {location} have both a key person and a founding year?",
                    {{"location", "location"}},
                    "SELECT DISTINCT ?company\nWHERE {\n  ?company a dbo:Company .\n"
                    "  ?company dbo:location ?location .\n  ?company dbo:keyPerson ?person .\n"
                    "  ?company dbo:foundingYear ?year .\n}\nLIMIT 5\n"),
      make_template(Category::Intersection, 5, "Which companies are located in both {locationa} and {locationb}?",
                    {{"locationa", "location"}, {"locationb", "location"}},
                    "SELECT DISTINCT ?company\nWHERE {\n  ?company a dbo:Company .\n"
                    "  ?company dbo:location ?locationa .\n  ?company dbo:location ?locationb .\n}\nLIMIT 5\n"),
  };

  lib[Category::Difference] = {
      make_template(Category::Difference, 1,
                    "Which companies are located in {locationa} but not in {locationb}?",
                    {{"locationa", "location"}, {"locationb", "location"}},
                    "SELECT DISTINCT ?company\nWHERE {\n  ?company a dbo:Company .\n"
                    "  ?company dbo:location ?locationa .\n  FILTER NOT EXISTS {\n"
                    "    ?company dbo:location ?locationb .\n  }\n}\nLIMIT 5\n"),
      make_template(Category::Difference, 2,
                    "Which companies in {location} are not in the {industry} industry?",
                    {{"location", "location"}, {"industry", "industry"}},
                    "SELECT DISTINCT ?company\nWHERE {\n  ?company a dbo:Company .\n"
                    "  ?company dbo:location ?location .\n  FILTER NOT EXISTS {\n"
                    "    ?company dbo:industry ?industry .\n  }\n}\nLIMIT 5\n"),
      make_template(Category::Difference, 3, "Which companies in {location} have no key person on record?",
                    {{"location", "location"}},
                    "SELECT DISTINCT ?company\nWHERE {\n  ?company a dbo:Company .\n"
                    "  ?company dbo:location ?location .\n  FILTER NOT EXISTS {\n"
                    "    ?company dbo:keyPerson ?person .\n  }\n}\nLIMIT 5\n"),
      make_template(Category::Difference, 4,
                    "Which companies in the {industry} industry are not located in {location}?",
                    {{"industry", "industry"}, {"location", "location"}},
                    "SELECT DISTINCT ?company\nWHERE {\n  ?company a dbo:Company .\n"
                    "  ?company dbo:industry ?industry .\n  FILTER NOT EXISTS {\n"
                    "    ?company dbo:location ?location .\n  }\n}\nLIMIT 5\n"),
      make_template(Category::Difference, 5,
                    "Which companies in {location} report a founding year but no employee count?",
                    {{"location", "location"}},
                    "SELECT DISTINCT ?company\nWHERE {\n  ?company a dbo:Company .\n"
                    "  ?company dbo:location ?location .\n  ?company dbo:foundingYear ?year .\n"
                    "  FILTER NOT EXISTS {\n    ?company dbo:numberOfEmployees ?n .\n  }\n}\nLIMIT 5\n"),
  };

  lib[Category::YesNo] = {
      make_template(Category::YesNo, 1, "Is {company} located in {location}?",
                    {{"company", "company"}, {"location", "location"}},
                    "ASK {\n  ?company a dbo:Company ;\n    dbo:location ?location .\n}\n"),
      make_template(Category::YesNo, 2, "Does {company} operate in the {industry} industry?",
                    {{"company", "company"}, {"industry", "industry"}},
                    "ASK {\n  ?company a dbo:Company .\n  ?company dbo:industry ?industry .\n}\n"),
      make_template(Category::YesNo, 3, "Is {person} a key person at {company}?",
                    {{"person", "person"}, {"company", "company"}},
                    "ASK {\n  ?company a dbo:Company .\n  ?company dbo:keyPerson ?person .\n}\n"),
      make_template(Category::YesNo, 4, "Was {companya} founded before {companyb}?",
                    {{"companya", "company"}, {"companyb", "company"}},
                    "ASK {\n  ?companya a dbo:Company .\n  ?companyb a dbo:Company .\n"
                    "  ?companya dbo:foundingYear ?ya .\n  ?companyb dbo:foundingYear ?yb .\n"
                    "  FILTER (?ya < ?yb)\n}\n"),
      make_template(Category::YesNo, 5, "Does {company} have an employee count on record?",
                    {{"company", "company"}},
                    "ASK {\n  ?company a dbo:Company .\n  ?company dbo:numberOfEmployees ?employees .\n}\n"),
  };

  return lib;
}

}  // namespace

const std::map<Category, std::vector<TemplateSpec>>& mock_template_library() {
  static const std::map<Category, std::vector<TemplateSpec>> lib = build_library();
  return lib;
}

MockCatalog MockCatalog::from_graph(const rdf::Graph& graph, const rdf::SchemaProfile& profile) {
  MockCatalog catalog;
  auto collect_typed = [&](std::string_view cls, const std::string& kind) {
    for (const rdf::Term& subj :
         graph.subjects_with(rdf::Term::iri(std::string(rdf::vocab::kRdfType)),
                             rdf::Term::iri(std::string(cls)))) {
      auto label = rdf::label_of(subj, graph, profile);
      if (label.label) catalog.by_kind[kind].push_back({subj.value, *label.label});
    }
  };
  collect_typed(rdf::vocab::kCompany, "company");
  collect_typed(rdf::vocab::kFeature, "location");
  collect_typed(rdf::vocab::kPerson, "person");

  std::set<rdf::Term> industries;
  graph.scan(std::nullopt, rdf::Term::iri(std::string(rdf::vocab::kIndustry)), std::nullopt,
             [&](const rdf::Triple& t) {
               if (t.object.is_iri()) industries.insert(t.object);
               return true;
             });
  for (const rdf::Term& industry : industries) {
    auto label = rdf::label_of(industry, graph, profile);
    if (label.label) catalog.by_kind["industry"].push_back({industry.value, *label.label});
  }
  return catalog;
}

MockChatProvider::MockChatProvider(uint64_t seed, double fault_rate, MockCatalog catalog)
    : seed_(seed), fault_rate_(fault_rate), catalog_(std::move(catalog)) {}

void MockChatProvider::script_fault(uint64_t pair_gen_ordinal, FaultKind kind) {
  scripted_faults_[pair_gen_ordinal] = kind;
}

void MockChatProvider::script_template_fault(uint64_t template_gen_ordinal) {
  scripted_template_faults_[template_gen_ordinal] = true;
}

bool MockChatProvider::fault_due(uint64_t ordinal) const {
  if (fault_rate_ <= 0) return false;
  if (fault_rate_ >= 1) return true;
  const uint64_t u = splitmix64(seed_ ^ (0xFA0517C0DEULL + ordinal * 0x9E3779B97F4A7C15ULL));
  return static_cast<double>(u) / 18446744073709551616.0 < fault_rate_;
}

MockChatProvider::TemplateCursor& MockChatProvider::cursor_for(Category category, size_t tpl_idx) {
  auto key = std::make_pair(category, tpl_idx);
  auto it = cursors_.find(key);
  if (it != cursors_.end()) return it->second;

  TemplateCursor cursor;
  const TemplateSpec& tpl = mock_template_library().at(category)[tpl_idx];
  for (const std::string& slot : tpl.slot_order()) {
    const std::string kind = tpl.slot_types.at(slot);
    auto cit = catalog_.by_kind.find(kind);
    const uint32_t n = cit == catalog_.by_kind.end() ? 0 : static_cast<uint32_t>(cit->second.size());
    std::vector<uint32_t> perm(n);
    for (uint32_t i = 0; i < n; ++i) perm[i] = i;
    std::mt19937_64 rng(seed_ ^ util::fnv1a64(tpl.id + "/" + slot));
    std::shuffle(perm.begin(), perm.end(), rng);
    cursor.slot_perms.push_back(std::move(perm));
    cursor.slot_sizes.push_back(n);
    cursor.space *= n;
  }
  return cursors_.emplace(key, std::move(cursor)).first->second;
}

std::optional<std::pair<std::string, std::string>> MockChatProvider::next_pair(Category category) {
  const auto& lib = mock_template_library().at(category);
  for (int pass = 0; pass < 2; ++pass) {
    for (size_t tried = 0; tried < lib.size(); ++tried) {
      const size_t tpl_idx = static_cast<size_t>(round_robin_[category]++ % lib.size());
      const TemplateSpec& tpl = lib[tpl_idx];
      TemplateCursor& cursor = cursor_for(category, tpl_idx);
      const auto slots = tpl.slot_order();
      while (cursor.next_tuple < cursor.space) {
        uint64_t j = cursor.next_tuple++;
        std::map<std::string, rdf::Term> bindings;
        std::map<std::string, std::string> labels;
        std::set<std::string> used_iris;
        bool ok = true;
        for (size_t s = 0; s < slots.size(); ++s) {
          const uint32_t n = cursor.slot_sizes[s];
          const uint32_t idx = cursor.slot_perms[s][j % n];
          j /= n;
          const auto& entity = catalog_.by_kind.at(tpl.slot_types.at(slots[s]))[idx];
          if (!used_iris.insert(entity.iri).second) {
            ok = false;  // same entity in two slots; skip tuple
            break;
          }
          bindings[slots[s]] = rdf::Term::iri(entity.iri);
          labels[slots[s]] = entity.label;
        }
        if (!ok) continue;
        std::string error;
        auto query = pipeline::render_query(tpl, bindings, &error);
        if (!query) continue;
        return std::make_pair(pipeline::render_question(tpl, labels), query->text);
      }
    }
    // every template space consumed: wrap around (duplicates will be
    // rejected downstream by dedup)
    for (auto& [key, cursor] : cursors_) {
      if (key.first == category) cursor.next_tuple = 0;
    }
  }
  return std::nullopt;
}

GenResult MockChatProvider::respond_templates(const Prompt& prompt) {
  const uint64_t ordinal = template_gen_calls_++;
  const auto& lib = mock_template_library().at(prompt.category);
  const size_t n = std::min<size_t>(lib.size(), std::max(1, prompt.want_templates));
  GenResult result;
  bool inject_bad = scripted_template_faults_.count(ordinal) > 0;
  for (size_t i = 0; i < n; ++i) {
    if (inject_bad && i == 0) {
      TemplateSpec bad;
      bad.category = prompt.category;
      bad.nl_pattern = "Which {widget} relates to a company?";
      bad.slot_types = {{"widget", "widget"}};
      bad.sparql_skeleton =
          "SELECT DISTINCT ?widget\nWHERE {\n  ?company a dbo:Company .\n"
          "  ?company dbo:location ?widget .\n}\nLIMIT 5\n";
      result.raw_text += pipeline::render_template_block(bad);
      continue;
    }
    result.raw_text += pipeline::render_template_block(lib[i]);
  }
  return result;
}

GenResult MockChatProvider::respond_pair(const Prompt& prompt) {
  const uint64_t ordinal = pair_gen_calls_++;
  GenResult result;
  auto pair = next_pair(prompt.category);
  if (!pair) {
    result.error = "mock catalog cannot ground category " + policy::category_info(prompt.category).id;
    return result;
  }
  const std::string good = "QUESTION: " + pair->first + "\n```sparql\n" + pair->second + "```\n";

  FaultKind kind = FaultKind::DropBrace;
  bool faulted = false;
  if (auto it = scripted_faults_.find(ordinal); it != scripted_faults_.end()) {
    faulted = true;
    kind = it->second;
  } else if (fault_due(ordinal)) {
    faulted = true;
    switch (ordinal % 3) {
      case 0: kind = FaultKind::DropBrace; break;
      case 1: kind = FaultKind::InjectOptional; break;
      default: kind = FaultKind::AppendUnion; break;
    }
  }
  if (!faulted) {
    result.raw_text = good;
    return result;
  }

  ++faults_injected_;
  std::string corrupted = pair->second;
  switch (kind) {
    case FaultKind::DropBrace:
    case FaultKind::Unrepairable: {
      size_t pos = corrupted.rfind('}');
      if (pos != std::string::npos) corrupted.erase(pos, 1);
      break;
    }
    case FaultKind::InjectOptional:
      corrupted = "OPTIONAL " + corrupted;
      break;
    case FaultKind::AppendUnion:
      corrupted += "UNION\n";
      break;
    case FaultKind::OffWhitelistPredicate: {
      size_t pos = corrupted.find("{\n");
      if (pos != std::string::npos) {
        corrupted.insert(pos + 2, "  ?offender dbo:revenue ?amount .\n");
      }
      break;
    }
    case FaultKind::BadTemplateSlot:
      break;  // template-gen only
  }
  if (kind != FaultKind::Unrepairable) {
    repair_stash_.emplace_back(corrupted, good);
  }
  result.raw_text = "QUESTION: " + pair->first + "\n```sparql\n" + corrupted + "```\n";
  return result;
}

GenResult MockChatProvider::respond_repair(const Prompt& prompt) {
  GenResult result;
  for (auto it = repair_stash_.begin(); it != repair_stash_.end(); ++it) {
    if (prompt.target.find(it->first) != std::string::npos) {
      result.raw_text = it->second;
      repair_stash_.erase(it);
      return result;
    }
  }
  // nothing stashed for this query: emit a deterministically broken reply
  result.raw_text = "QUESTION: repair unavailable\n```sparql\nSELECT ?x WHERE {\n```\n";
  return result;
}

GenResult MockChatProvider::generate(const Prompt& prompt) {
  const auto started = std::chrono::steady_clock::now();
  GenResult result;
  const uint64_t index = requests_++;
  if (prompt.kind == "template-gen") {
    result = respond_templates(prompt);
  } else if (prompt.kind == "pair-gen") {
    const uint64_t faults_before = faults_injected_;
    result = respond_pair(prompt);
    if (faults_injected_ > faults_before) fault_request_indices_.push_back(index);
  } else if (prompt.kind == "repair") {
    result = respond_repair(prompt);
  } else {
    result.error = "mock provider: unknown prompt kind '" + prompt.kind + "'";
  }
  result.request_index = index;
  result.llm_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
  return result;
}

HttpChatProvider::HttpChatProvider(std::string endpoint, std::string model,
                                   std::chrono::milliseconds timeout)
    : endpoint_(std::move(endpoint)), model_(std::move(model)), timeout_(timeout) {}

GenResult HttpChatProvider::generate(const Prompt& prompt) {
  const auto started = std::chrono::steady_clock::now();
  GenResult result;
  result.request_index = requests_++;
  httplib::Client client(endpoint_);
  const auto secs = std::chrono::duration_cast<std::chrono::seconds>(timeout_).count();
  client.set_connection_timeout(secs, (timeout_.count() % 1000) * 1000);
  client.set_read_timeout(secs, (timeout_.count() % 1000) * 1000);

  nlohmann::json body = {
      {"model", model_},
      {"messages", nlohmann::json::array({{{"role", "user"}, {"content", prompt.render()}}})},
      {"stream", false},
  };
  auto res = client.Post("/api/chat", body.dump(), "application/json");
  result.llm_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
  if (!res) {
    result.error = "chat endpoint unreachable: " + endpoint_;
    result.retriable = true;
    return result;
  }
  if (res->status != 200) {
    result.error = "chat request failed with status " + std::to_string(res->status);
    result.retriable = res->status >= 500;
    return result;
  }
  try {
    nlohmann::json j = nlohmann::json::parse(res->body);
    if (j.contains("message")) {
      result.raw_text = j["message"].value("content", "");
    } else if (j.contains("choices") && !j["choices"].empty()) {
      result.raw_text = j["choices"][0]["message"].value("content", "");
    }
  } catch (const std::exception& e) {
    result.error = std::string("chat response parse error: ") + e.what();
    return result;
  }
  if (result.raw_text.empty()) result.error = "chat response carried no content";
  return result;
}

}  // namespace kgbench::llm
