#pragma once

#include <string>

#include "sparql/ast.hpp"

namespace kgbench::sparql {

// Deterministic canonical text: PREFIX declarations for the well-known
// prefixes actually used, rdf:type printed as 'a', VALUES first, then
// patterns, FILTERs and NOT EXISTS blocks. parse_query(serialize(ast))
// round-trips to an equal AST.
std::string serialize(const QueryAst& ast);

std::string term_text(const Term& term);  // query syntax for one term

}  // namespace kgbench::sparql
