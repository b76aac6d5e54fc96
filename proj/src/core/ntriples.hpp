#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "core/graph.hpp"

namespace kgbench::rdf {

struct LoadDiagnostic {
  size_t line = 0;  // 1-based
  std::string reason;
};

struct LoadResult {
  Graph graph;
  std::vector<LoadDiagnostic> rejected;
  size_t lines_total = 0;
};

// Line-oriented N-Triples. Malformed lines are recorded and skipped;
// loading always continues. Empty input is an empty graph.
LoadResult load_ntriples(std::istream& in);
LoadResult load_ntriples_string(std::string_view text);
LoadResult load_ntriples_file(const std::string& path);  // throws IoError if unreadable

void save_ntriples_file(const Graph& graph, const std::string& path);

}  // namespace kgbench::rdf
