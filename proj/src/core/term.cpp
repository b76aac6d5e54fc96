#include "core/term.hpp"

#include <charconv>
#include <cstdio>

namespace kgbench::rdf {

Term Term::iri(std::string v) {
  Term t;
  t.kind = TermKind::Iri;
  t.value = std::move(v);
  return t;
}

Term Term::literal(std::string v, std::string datatype, std::string lang) {
  Term t;
  t.kind = TermKind::Literal;
  t.value = std::move(v);
  t.datatype = std::move(datatype);
  t.lang = std::move(lang);
  return t;
}

Term Term::integer(long long n) {
  return literal(std::to_string(n), "http://www.w3.org/2001/XMLSchema#integer");
}

Term Term::blank(std::string label) {
  Term t;
  t.kind = TermKind::Blank;
  t.value = std::move(label);
  return t;
}

bool Term::integer_castable() const {
  return as_integer().has_value();
}

std::optional<long long> Term::as_integer() const {
  if (kind != TermKind::Literal || value.empty()) return std::nullopt;
  const char* begin = value.data();
  const char* end = begin + value.size();
  if (*begin == '+') ++begin;  // from_chars rejects a leading '+'
  long long out = 0;
  auto [ptr, ec] = std::from_chars(begin, end, out);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return out;
}

std::string escape_ntriples_string(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (unsigned char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (c < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04X", c);
          out += buf;
        } else {
          out.push_back(static_cast<char>(c));
        }
    }
  }
  return out;
}

std::string Term::ntriples() const {
  switch (kind) {
    case TermKind::Iri:
      return "<" + value + ">";
    case TermKind::Blank:
      return "_:" + value;
    case TermKind::Literal: {
      std::string out = "\"" + escape_ntriples_string(value) + "\"";
      if (!lang.empty()) {
        out += "@" + lang;
      } else if (!datatype.empty()) {
        out += "^^<" + datatype + ">";
      }
      return out;
    }
  }
  return {};
}

}  // namespace kgbench::rdf
