#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace kgbench::rdf {

enum class TermKind : uint8_t { Iri = 0, Literal = 1, Blank = 2 };

struct Term {
  TermKind kind = TermKind::Iri;
  std::string value;     // IRI string, literal lexical form, or blank label
  std::string datatype;  // literals only; absolute IRI or empty
  std::string lang;      // literals only

  static Term iri(std::string v);
  static Term literal(std::string v, std::string datatype = {}, std::string lang = {});
  static Term integer(long long n);
  static Term blank(std::string label);

  bool is_iri() const { return kind == TermKind::Iri; }
  bool is_literal() const { return kind == TermKind::Literal; }
  bool is_blank() const { return kind == TermKind::Blank; }

  // True when the lexical form parses as a signed integer; the engine
  // casts such literals for numeric comparison regardless of datatype.
  bool integer_castable() const;
  std::optional<long long> as_integer() const;

  std::string ntriples() const;

  auto operator<=>(const Term&) const = default;
  bool operator==(const Term&) const = default;
};

struct Triple {
  Term subject;
  Term predicate;
  Term object;

  auto operator<=>(const Triple&) const = default;
  bool operator==(const Triple&) const = default;
};

// Escapes per N-Triples string rules (\" \\ \n \r \t, control chars as \u).
std::string escape_ntriples_string(std::string_view s);

}  // namespace kgbench::rdf
