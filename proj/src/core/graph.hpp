#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "core/term.hpp"

namespace kgbench::rdf {

// Append-only in-memory triple store with SPO, POS and OSP indexes.
// Insertion is idempotent; iteration order is the term ordering, so every
// scan is deterministic. Immutable once loading/slicing is done, which is
// what makes concurrent readers safe.
class Graph {
 public:
  using TermPattern = std::optional<Term>;  // nullopt = wildcard

  bool insert(const Triple& t);
  bool contains(const Triple& t) const;
  size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }

  // Visits matches in deterministic index order; return false to stop.
  void scan(const TermPattern& s, const TermPattern& p, const TermPattern& o,
            const std::function<bool(const Triple&)>& visit) const;
  std::vector<Triple> find(const TermPattern& s, const TermPattern& p, const TermPattern& o) const;

  std::vector<Term> objects(const Term& subject, const Term& predicate) const;
  std::vector<Term> subjects_with(const Term& predicate, const Term& object) const;
  std::vector<Term> types_of(const Term& subject) const;
  bool has_type(const Term& subject, const Term& cls) const;

  // All subjects, in index order.
  std::vector<Term> subjects() const;
  // Every distinct term appearing in any position, in term order.
  std::vector<Term> all_terms() const;

  // Sorted (s, p, o) N-Triples serialization; load(to_ntriples()) is a
  // fixpoint on the triple set.
  std::string to_ntriples() const;

  // Flat view in (s, p, o) order.
  std::vector<Triple> triples() const;

 private:
  using Inner = std::map<Term, std::set<Term>>;
  using Index = std::map<Term, Inner>;

  Index spo_;
  Index pos_;
  Index osp_;
  size_t size_ = 0;
};

}  // namespace kgbench::rdf
