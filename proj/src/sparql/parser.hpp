#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "sparql/ast.hpp"

namespace kgbench::sparql {

enum class ParseErrorClass {
  Syntax,
  UnsupportedFeature,  // recognized SPARQL outside the subset (OPTIONAL, UNION, ...)
  Semantic,
};

std::string parse_error_class_text(ParseErrorClass cls);

struct ParseError {
  ParseErrorClass cls = ParseErrorClass::Syntax;
  size_t line = 1;
  size_t col = 1;
  std::string message;

  std::string to_string() const;
};

struct ParseResult {
  std::optional<QueryAst> ast;
  std::optional<ParseError> error;

  bool ok() const { return ast.has_value(); }
};

// Parses the SPARQL subset: SELECT/ASK, basic graph patterns with ';'
// predicate lists, FILTER comparisons, FILTER NOT EXISTS, single-variable
// VALUES, COUNT aggregates, ORDER BY and LIMIT. Well-known prefixes
// (dbo, dbr, rdf, rdfs, foaf, gn, spb, xsd) are predeclared; PREFIX
// declarations in the text override them.
ParseResult parse_query(std::string_view text);

// The predeclared prefix table used by parse and canonical serialization.
const std::map<std::string, std::string>& default_prefixes();

}  // namespace kgbench::sparql
