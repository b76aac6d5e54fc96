#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace kgbench::util {

// RFC-4180 style: fields with commas, quotes or newlines are quoted,
// embedded quotes doubled. Rows end with '\n'.
std::string csv_escape(std::string_view field);
std::string csv_row(const std::vector<std::string>& fields);

// Parses a full CSV document (handles quoted fields spanning lines).
std::vector<std::vector<std::string>> csv_parse(std::string_view text);

}  // namespace kgbench::util
