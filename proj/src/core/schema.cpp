#include "core/schema.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace kgbench::rdf {

namespace {

std::string str(std::string_view v) { return std::string(v); }

const std::vector<std::string>& global_label_priority() {
  static const std::vector<std::string> order = {
      str(vocab::kRdfsLabel), str(vocab::kPrefLabel), str(vocab::kFoafName)};
  return order;
}

}  // namespace

const SchemaProfile& SchemaProfile::default_profile() {
  static const SchemaProfile profile = [] {
    SchemaProfile p;
    p.classes = {str(vocab::kCompany), str(vocab::kFeature), str(vocab::kPerson)};
    p.predicate_whitelist = {str(vocab::kLocation), str(vocab::kIndustry), str(vocab::kKeyPerson),
                             str(vocab::kFoundingYear), str(vocab::kNumEmployees)};
    p.slot_types = {{"company", str(vocab::kCompany)},
                    {"location", str(vocab::kFeature)},
                    {"person", str(vocab::kPerson)},
                    {"industry", str(vocab::kIndustryClass)}};
    p.label_priority = {
        {str(vocab::kCompany), {str(vocab::kRdfsLabel), str(vocab::kPrefLabel), str(vocab::kFoafName)}},
        {str(vocab::kFeature), {str(vocab::kPrefLabel), str(vocab::kRdfsLabel), str(vocab::kFoafName)}},
        {str(vocab::kPerson), {str(vocab::kFoafName), str(vocab::kRdfsLabel), str(vocab::kPrefLabel)}},
        {str(vocab::kIndustryClass), {str(vocab::kRdfsLabel), str(vocab::kPrefLabel), str(vocab::kFoafName)}},
    };
    p.numeric_predicates = {str(vocab::kFoundingYear), str(vocab::kNumEmployees)};
    return p;
  }();
  return profile;
}

std::set<std::string> SchemaProfile::label_predicates() const {
  return {str(vocab::kRdfsLabel), str(vocab::kPrefLabel), str(vocab::kFoafName)};
}

bool SchemaProfile::predicate_allowed(const std::string& iri) const {
  if (iri == vocab::kRdfType) return true;
  if (predicate_whitelist.count(iri)) return true;
  return label_predicates().count(iri) > 0;
}

LabelResult label_of(const Term& entity, const Graph& graph, const SchemaProfile& profile) {
  LabelResult result;
  const std::vector<std::string>* order = nullptr;
  for (const Term& type : graph.types_of(entity)) {
    if (!type.is_iri()) continue;
    auto it = profile.label_priority.find(type.value);
    if (it != profile.label_priority.end()) {
      order = &it->second;
      break;
    }
  }
  if (!order) {
    order = &global_label_priority();
    result.used_global_fallback = true;
  }
  for (const std::string& pred : *order) {
    std::vector<Term> labels = graph.objects(entity, Term::iri(pred));
    for (const Term& label : labels) {
      if (label.is_literal()) {
        result.label = label.value;
        return result;
      }
    }
  }
  return result;
}

Graph extract_slice(const Graph& source, const SchemaProfile& profile, const SliceOptions& options) {
  if (options.max_companies < 1) {
    throw std::invalid_argument("extract_slice: max_companies must be >= 1");
  }

  const Term rdf_type = Term::iri(str(vocab::kRdfType));
  const Term company_class = Term::iri(str(vocab::kCompany));
  const auto label_preds = profile.label_predicates();

  std::vector<Term> companies;
  for (const Term& subj : source.subjects_with(rdf_type, company_class)) {
    if (subj.is_blank()) continue;
    bool has_core = false;
    for (const std::string& pred : profile.predicate_whitelist) {
      if (!source.objects(subj, Term::iri(pred)).empty()) {
        has_core = true;
        break;
      }
    }
    if (has_core) companies.push_back(subj);
  }

  std::sort(companies.begin(), companies.end());
  if (options.order == SliceOrder::Shuffled) {
    std::mt19937_64 rng(options.shuffle_seed);
    std::shuffle(companies.begin(), companies.end(), rng);
  }
  if (companies.size() > options.max_companies) companies.resize(options.max_companies);

  Graph slice;
  std::set<Term> linked;
  for (const Term& company : companies) {
    for (const Term& type : source.types_of(company)) {
      if (type.is_iri() && profile.class_allowed(type.value)) {
        slice.insert({company, rdf_type, type});
      }
    }
    for (const std::string& pred : profile.predicate_whitelist) {
      const Term p = Term::iri(pred);
      for (const Term& obj : source.objects(company, p)) {
        if (obj.is_blank()) continue;
        slice.insert({company, p, obj});
        if (obj.is_iri()) linked.insert(obj);
      }
    }
    for (const std::string& pred : label_preds) {
      const Term p = Term::iri(pred);
      for (const Term& obj : source.objects(company, p)) {
        if (obj.is_literal()) slice.insert({company, p, obj});
      }
    }
  }

  // Linked entities carry only their type and label triples.
  for (const Term& entity : linked) {
    for (const Term& type : source.types_of(entity)) {
      if (type.is_iri() && profile.class_allowed(type.value)) {
        slice.insert({entity, rdf_type, type});
      }
    }
    for (const std::string& pred : label_preds) {
      const Term p = Term::iri(pred);
      for (const Term& obj : source.objects(entity, p)) {
        if (obj.is_literal()) slice.insert({entity, p, obj});
      }
    }
  }
  return slice;
}

}  // namespace kgbench::rdf
