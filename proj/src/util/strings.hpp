#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace kgbench::util {

std::string to_lower_ascii(std::string_view s);
bool starts_with(std::string_view s, std::string_view prefix);
bool ends_with(std::string_view s, std::string_view suffix);
std::string trim(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);
std::string join(const std::vector<std::string>& parts, std::string_view sep);
std::string replace_all(std::string s, std::string_view from, std::string_view to);

// FNV-1a, used for deterministic hashing of tokens and cache keys.
uint64_t fnv1a64(std::string_view s);

// Shortest round-trippable decimal form of a double.
std::string format_double(double v);

// UTF-8 encode a single codepoint, appended to out.
void utf8_append(std::string& out, uint32_t codepoint);

}  // namespace kgbench::util
