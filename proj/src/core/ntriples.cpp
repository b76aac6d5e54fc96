#include "core/ntriples.hpp"

#include <fstream>
#include <sstream>

#include "core/schema.hpp"
#include "util/errors.hpp"
#include "util/strings.hpp"

namespace kgbench::rdf {

namespace {

struct LineParser {
  std::string_view line;
  size_t pos = 0;
  std::string error;

  bool fail(std::string reason) {
    if (error.empty()) error = std::move(reason);
    return false;
  }

  void skip_ws() {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
  }

  bool at_end() const { return pos >= line.size(); }
  char peek() const { return pos < line.size() ? line[pos] : '\0'; }

  bool unescape_into(std::string& out, bool in_iri) {
    // pos sits just after the backslash
    if (at_end()) return fail("dangling escape");
    char c = line[pos++];
    switch (c) {
      case 't': out.push_back('\t'); return true;
      case 'b': out.push_back('\b'); return true;
      case 'n': out.push_back('\n'); return true;
      case 'r': out.push_back('\r'); return true;
      case 'f': out.push_back('\f'); return true;
      case '"': out.push_back('"'); return true;
      case '\'': out.push_back('\''); return true;
      case '\\': out.push_back('\\'); return true;
      case 'u':
      case 'U': {
        size_t n = (c == 'u') ? 4 : 8;
        if (pos + n > line.size()) return fail("truncated \\u escape");
        uint32_t cp = 0;
        for (size_t i = 0; i < n; ++i) {
          char h = line[pos + i];
          uint32_t d;
          if (h >= '0' && h <= '9') d = h - '0';
          else if (h >= 'a' && h <= 'f') d = h - 'a' + 10;
          else if (h >= 'A' && h <= 'F') d = h - 'A' + 10;
          else return fail("bad hex digit in \\u escape");
          cp = (cp << 4) | d;
        }
        pos += n;
        util::utf8_append(out, cp);
        return true;
      }
      default:
        if (in_iri) return fail("illegal escape in IRI");
        return fail(std::string("unknown escape \\") + c);
    }
  }

  bool parse_iri(Term& out) {
    if (peek() != '<') return fail("expected '<'");
    ++pos;
    std::string value;
    while (!at_end()) {
      char c = line[pos];
      if (c == '>') {
        ++pos;
        if (value.empty()) return fail("empty IRI");
        out = Term::iri(std::move(value));
        return true;
      }
      if (c == ' ' || c == '\t') return fail("whitespace inside IRI");
      if (c == '\\') {
        ++pos;
        if (!unescape_into(value, /*in_iri=*/true)) return false;
      } else {
        value.push_back(c);
        ++pos;
      }
    }
    return fail("unterminated IRI");
  }

  bool parse_blank(Term& out) {
    if (pos + 1 >= line.size() || line[pos] != '_' || line[pos + 1] != ':') {
      return fail("expected blank node label");
    }
    pos += 2;
    std::string label;
    while (!at_end()) {
      char c = line[pos];
      if (c == ' ' || c == '\t') break;
      bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                c == '_' || c == '-' || c == '.';
      if (!ok) break;
      label.push_back(c);
      ++pos;
    }
    // A '.' can end both the label and the statement; give it back.
    while (!label.empty() && label.back() == '.') {
      label.pop_back();
      --pos;
    }
    if (label.empty()) return fail("empty blank node label");
    out = Term::blank(std::move(label));
    return true;
  }

  bool parse_literal(Term& out) {
    if (peek() != '"') return fail("expected '\"'");
    ++pos;
    std::string value;
    bool closed = false;
    while (!at_end()) {
      char c = line[pos];
      if (c == '"') {
        ++pos;
        closed = true;
        break;
      }
      if (c == '\\') {
        ++pos;
        if (!unescape_into(value, /*in_iri=*/false)) return false;
      } else {
        value.push_back(c);
        ++pos;
      }
    }
    if (!closed) return fail("unterminated string literal");
    std::string datatype, lang;
    if (pos + 1 < line.size() && line[pos] == '^' && line[pos + 1] == '^') {
      pos += 2;
      Term dt;
      if (!parse_iri(dt)) return false;
      datatype = dt.value;
    } else if (peek() == '@') {
      ++pos;
      while (!at_end()) {
        char c = line[pos];
        if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '-') {
          lang.push_back(c);
          ++pos;
        } else {
          break;
        }
      }
      if (lang.empty()) return fail("empty language tag");
    }
    out = Term::literal(std::move(value), std::move(datatype), std::move(lang));
    if (out.datatype == vocab::kXsdInteger && !out.integer_castable()) {
      return fail("xsd:integer literal with non-integer lexical form");
    }
    return true;
  }

  bool parse_term(Term& out, bool allow_blank, bool allow_literal) {
    char c = peek();
    if (c == '<') return parse_iri(out);
    if (c == '_' && allow_blank) return parse_blank(out);
    if (c == '"' && allow_literal) return parse_literal(out);
    return fail("unexpected term start");
  }

  bool parse_triple(Triple& out) {
    skip_ws();
    if (!parse_term(out.subject, /*blank=*/true, /*literal=*/false)) return false;
    skip_ws();
    if (!parse_term(out.predicate, /*blank=*/false, /*literal=*/false)) return false;
    skip_ws();
    if (!parse_term(out.object, /*blank=*/true, /*literal=*/true)) return false;
    skip_ws();
    if (peek() != '.') return fail("expected '.' at end of statement");
    ++pos;
    skip_ws();
    if (!at_end() && peek() != '#') return fail("trailing content after '.'");
    return true;
  }
};

}  // namespace

LoadResult load_ntriples(std::istream& in) {
  LoadResult result;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string trimmed = util::trim(line);
    if (trimmed.empty() || trimmed[0] == '#') continue;
    LineParser parser;
    parser.line = line;
    Triple triple;
    if (parser.parse_triple(triple)) {
      result.graph.insert(triple);
    } else {
      result.rejected.push_back({line_no, parser.error});
    }
  }
  result.lines_total = line_no;
  return result;
}

LoadResult load_ntriples_string(std::string_view text) {
  std::istringstream in{std::string(text)};
  return load_ntriples(in);
}

LoadResult load_ntriples_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open N-Triples file: " + path);
  return load_ntriples(in);
}

void save_ntriples_file(const Graph& graph, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write N-Triples file: " + path);
  out << graph.to_ntriples();
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace kgbench::rdf
