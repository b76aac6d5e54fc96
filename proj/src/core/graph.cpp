#include "core/graph.hpp"

#include "core/schema.hpp"

namespace kgbench::rdf {

bool Graph::insert(const Triple& t) {
  auto& objs = spo_[t.subject][t.predicate];
  if (!objs.insert(t.object).second) return false;
  pos_[t.predicate][t.object].insert(t.subject);
  osp_[t.object][t.subject].insert(t.predicate);
  ++size_;
  return true;
}

bool Graph::contains(const Triple& t) const {
  auto s = spo_.find(t.subject);
  if (s == spo_.end()) return false;
  auto p = s->second.find(t.predicate);
  if (p == s->second.end()) return false;
  return p->second.count(t.object) > 0;
}

void Graph::scan(const TermPattern& s, const TermPattern& p, const TermPattern& o,
                 const std::function<bool(const Triple&)>& visit) const {
  // Picks the index whose leading components are bound.
  if (s) {
    auto si = spo_.find(*s);
    if (si == spo_.end()) return;
    if (p) {
      auto pi = si->second.find(*p);
      if (pi == si->second.end()) return;
      if (o) {
        if (pi->second.count(*o)) visit({*s, *p, *o});
        return;
      }
      for (const Term& obj : pi->second) {
        if (!visit({*s, *p, obj})) return;
      }
      return;
    }
    for (const auto& [pred, objs] : si->second) {
      for (const Term& obj : objs) {
        if (o && obj != *o) continue;
        if (!visit({*s, pred, obj})) return;
      }
    }
    return;
  }
  if (p) {
    auto pi = pos_.find(*p);
    if (pi == pos_.end()) return;
    for (const auto& [obj, subjs] : pi->second) {
      if (o && obj != *o) continue;
      for (const Term& subj : subjs) {
        if (!visit({subj, *p, obj})) return;
      }
    }
    return;
  }
  if (o) {
    auto oi = osp_.find(*o);
    if (oi == osp_.end()) return;
    for (const auto& [subj, preds] : oi->second) {
      for (const Term& pred : preds) {
        if (!visit({subj, pred, *o})) return;
      }
    }
    return;
  }
  for (const auto& [subj, pmap] : spo_) {
    for (const auto& [pred, objs] : pmap) {
      for (const Term& obj : objs) {
        if (!visit({subj, pred, obj})) return;
      }
    }
  }
}

std::vector<Triple> Graph::find(const TermPattern& s, const TermPattern& p, const TermPattern& o) const {
  std::vector<Triple> out;
  scan(s, p, o, [&](const Triple& t) {
    out.push_back(t);
    return true;
  });
  return out;
}

std::vector<Term> Graph::objects(const Term& subject, const Term& predicate) const {
  std::vector<Term> out;
  scan(subject, predicate, std::nullopt, [&](const Triple& t) {
    out.push_back(t.object);
    return true;
  });
  return out;
}

std::vector<Term> Graph::subjects_with(const Term& predicate, const Term& object) const {
  std::vector<Term> out;
  scan(std::nullopt, predicate, object, [&](const Triple& t) {
    out.push_back(t.subject);
    return true;
  });
  return out;
}

std::vector<Term> Graph::types_of(const Term& subject) const {
  return objects(subject, Term::iri(std::string(vocab::kRdfType)));
}

bool Graph::has_type(const Term& subject, const Term& cls) const {
  return contains({subject, Term::iri(std::string(vocab::kRdfType)), cls});
}

std::vector<Term> Graph::subjects() const {
  std::vector<Term> out;
  out.reserve(spo_.size());
  for (const auto& [subj, _] : spo_) out.push_back(subj);
  return out;
}

std::vector<Term> Graph::all_terms() const {
  std::set<Term> terms;
  for (const auto& [subj, pmap] : spo_) {
    terms.insert(subj);
    for (const auto& [pred, objs] : pmap) {
      terms.insert(pred);
      for (const Term& obj : objs) terms.insert(obj);
    }
  }
  return {terms.begin(), terms.end()};
}

std::string Graph::to_ntriples() const {
  std::string out;
  for (const auto& [subj, pmap] : spo_) {
    for (const auto& [pred, objs] : pmap) {
      for (const Term& obj : objs) {
        out += subj.ntriples();
        out += ' ';
        out += pred.ntriples();
        out += ' ';
        out += obj.ntriples();
        out += " .\n";
      }
    }
  }
  return out;
}

std::vector<Triple> Graph::triples() const {
  std::vector<Triple> out;
  out.reserve(size_);
  for (const auto& [subj, pmap] : spo_) {
    for (const auto& [pred, objs] : pmap) {
      for (const Term& obj : objs) out.push_back({subj, pred, obj});
    }
  }
  return out;
}

}  // namespace kgbench::rdf
