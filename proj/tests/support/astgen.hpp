#pragma once

// Random graph and query generator for the oracle-equivalence and
// enforcement-idempotence properties. Queries stay inside the supported
// grammar; when ORDER BY + LIMIT are emitted, every projected variable is
// appended as a tie-break key so limited prefixes compare exactly.

#include <random>

#include "core/graph.hpp"
#include "sparql/ast.hpp"

namespace kgbench::testsupport {

rdf::Graph random_graph(std::mt19937_64& rng, size_t max_triples = 50);
sparql::QueryAst random_query(std::mt19937_64& rng);

}  // namespace kgbench::testsupport
