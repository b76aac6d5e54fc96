#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "core/ntriples.hpp"

namespace kgbench::testsupport {

inline std::string data_path(const std::string& name) {
  return std::string(KGBENCH_TEST_DATA_DIR) + "/" + name;
}

inline std::string repo_path(const std::string& name) {
  return std::string(KGBENCH_REPO_DIR) + "/" + name;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

inline rdf::Graph load_fixture(const std::string& name) {
  auto loaded = rdf::load_ntriples_file(data_path(name));
  return std::move(loaded.graph);
}

inline std::string query_text(const std::string& category) {
  return read_file(data_path("queries/" + category + ".rq"));
}

}  // namespace kgbench::testsupport
