#include "sparql/parser.hpp"

#include <algorithm>
#include <set>

#include "core/schema.hpp"
#include "util/strings.hpp"

namespace kgbench::sparql {

namespace {

using rdf::Term;

enum class Tok {
  End,
  Iri,        // <...>
  Pname,      // pfx:local (text split in prefix/local)
  Var,        // ?name (text = name)
  String,     // "..." (text = unescaped value)
  Integer,    // [+-]?digits
  Keyword,    // identifier, uppercased (except 'a' which stays 'a')
  LBrace, RBrace, LParen, RParen,
  Dot, Semicolon, Comma,
  Eq, Ne, Lt, Le, Gt, Ge,
  DatatypeMark,  // ^^
  LangTag,       // @xx (text = tag)
  Unsupported,   // lexical construct outside the subset ([, ], /, |, ...)
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  std::string aux;  // pname prefix
  size_t line = 1;
  size_t col = 1;
};

struct ParseAbort {
  ParseError error;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token next() {
    skip_ws();
    Token t;
    t.line = line_;
    t.col = col_;
    if (at_end()) return t;
    char c = peek();
    if (c == '{') return take(t, Tok::LBrace);
    if (c == '}') return take(t, Tok::RBrace);
    if (c == '(') return take(t, Tok::LParen);
    if (c == ')') return take(t, Tok::RParen);
    if (c == ';') return take(t, Tok::Semicolon);
    if (c == ',') return take(t, Tok::Comma);
    if (c == '.') {
      // distinguish statement dot from a decimal literal start
      if (pos_ + 1 < text_.size() && is_digit(text_[pos_ + 1])) {
        t.kind = Tok::Unsupported;
        t.text = "decimal literal";
        advance();
        return t;
      }
      return take(t, Tok::Dot);
    }
    if (c == '=') return take(t, Tok::Eq);
    if (c == '!') {
      advance();
      if (peek() == '=') return take(t, Tok::Ne);
      throw_error(t, "expected '=' after '!'");
    }
    if (c == '^') {
      advance();
      if (peek() == '^') return take(t, Tok::DatatypeMark);
      throw_error(t, "expected '^^'");
    }
    if (c == '@') {
      advance();
      while (!at_end() && (is_alnum(peek()) || peek() == '-')) {
        t.text.push_back(peek());
        advance();
      }
      if (t.text.empty()) throw_error(t, "empty language tag");
      t.kind = Tok::LangTag;
      return t;
    }
    if (c == '<') {
      if (looks_like_iri()) return lex_iri(t);
      advance();
      if (peek() == '=') return take(t, Tok::Le);
      t.kind = Tok::Lt;
      return t;
    }
    if (c == '>') {
      advance();
      if (peek() == '=') return take(t, Tok::Ge);
      t.kind = Tok::Gt;
      return t;
    }
    if (c == '?' || c == '$') {
      advance();
      while (!at_end() && (is_alnum(peek()) || peek() == '_')) {
        t.text.push_back(peek());
        advance();
      }
      if (t.text.empty()) throw_error(t, "empty variable name");
      t.kind = Tok::Var;
      return t;
    }
    if (c == '"') return lex_string(t);
    if (c == '-' || c == '+' || is_digit(c)) return lex_integer(t);
    if (c == '[' || c == ']' || c == '/' || c == '|' || c == '*') {
      t.kind = Tok::Unsupported;
      t.text = std::string(1, c);
      advance();
      return t;
    }
    if (is_alpha(c) || c == '_') return lex_word(t);
    throw_error(t, std::string("unexpected character '") + c + "'");
    return t;  // unreachable
  }

 private:
  std::string_view text_;
  size_t pos_ = 0;
  size_t line_ = 1;
  size_t col_ = 1;

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }
  static bool is_digit(char c) { return c >= '0' && c <= '9'; }
  static bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
  static bool is_alnum(char c) { return is_digit(c) || is_alpha(c); }

  void advance() {
    if (at_end()) return;
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_ws() {
    while (!at_end()) {
      char c = peek();
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else if (c == '#') {
        while (!at_end() && peek() != '\n') advance();
      } else {
        break;
      }
    }
  }

  // cursor sits on the token's final character; consume it
  Token take(Token& t, Tok kind) {
    t.kind = kind;
    advance();
    return t;
  }

  [[noreturn]] void throw_error(const Token& at, std::string msg) {
    throw ParseAbort{{ParseErrorClass::Syntax, at.line, at.col, std::move(msg)}};
  }

  // '<' starts an IRIREF when a '>' appears before whitespace or an
  // IRI-illegal character; otherwise it is the comparison operator.
  bool looks_like_iri() const {
    for (size_t i = pos_ + 1; i < text_.size(); ++i) {
      char c = text_[i];
      if (c == '>') return true;
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '"' || c == '{' || c == '}' ||
          c == '<' || c == '|' || c == '^' || c == '`') {
        return false;
      }
    }
    return false;
  }

  Token lex_iri(Token& t) {
    advance();  // '<'
    while (!at_end() && peek() != '>') {
      t.text.push_back(peek());
      advance();
    }
    if (at_end()) throw_error(t, "unterminated IRI");
    advance();  // '>'
    if (t.text.empty()) throw_error(t, "empty IRI");
    t.kind = Tok::Iri;
    return t;
  }

  Token lex_string(Token& t) {
    advance();  // '"'
    while (!at_end() && peek() != '"') {
      char c = peek();
      if (c == '\\') {
        advance();
        char e = peek();
        switch (e) {
          case 't': t.text.push_back('\t'); break;
          case 'n': t.text.push_back('\n'); break;
          case 'r': t.text.push_back('\r'); break;
          case '"': t.text.push_back('"'); break;
          case '\\': t.text.push_back('\\'); break;
          case '\'': t.text.push_back('\''); break;
          default: throw_error(t, "unknown string escape");
        }
        advance();
      } else {
        t.text.push_back(c);
        advance();
      }
    }
    if (at_end()) throw_error(t, "unterminated string literal");
    advance();  // closing '"'
    t.kind = Tok::String;
    return t;
  }

  Token lex_integer(Token& t) {
    if (peek() == '-' || peek() == '+') {
      t.text.push_back(peek());
      advance();
    }
    if (!is_digit(peek())) throw_error(t, "expected digits");
    while (!at_end() && is_digit(peek())) {
      t.text.push_back(peek());
      advance();
    }
    if (peek() == '.' && pos_ + 1 < text_.size() && is_digit(text_[pos_ + 1])) {
      t.kind = Tok::Unsupported;
      t.text = "decimal literal";
      return t;
    }
    t.kind = Tok::Integer;
    return t;
  }

  Token lex_word(Token& t) {
    std::string word;
    while (!at_end() && (is_alnum(peek()) || peek() == '_' || peek() == '-')) {
      word.push_back(peek());
      advance();
    }
    if (peek() == ':') {
      // prefixed name; local part may not end with '.'
      advance();
      t.aux = word;
      while (!at_end()) {
        char c = peek();
        if (is_alnum(c) || c == '_' || c == '-') {
          t.text.push_back(c);
          advance();
        } else if (c == '.' && pos_ + 1 < text_.size() &&
                   (is_alnum(text_[pos_ + 1]) || text_[pos_ + 1] == '_')) {
          t.text.push_back(c);
          advance();
        } else {
          break;
        }
      }
      t.kind = Tok::Pname;
      return t;
    }
    if (word == "a") {
      t.kind = Tok::Keyword;
      t.text = "a";
      return t;
    }
    t.kind = Tok::Keyword;
    t.text = util::to_lower_ascii(word);
    for (char& c : t.text) {
      if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 'a' + 'A');
    }
    return t;
  }
};

const std::set<std::string> kUnsupportedKeywords = {
    "OPTIONAL", "UNION", "MINUS", "GRAPH", "SERVICE", "BIND", "CONSTRUCT", "DESCRIBE",
    "INSERT",   "DELETE", "GROUP", "HAVING", "OFFSET", "WITH", "BASE", "EXISTS", "SELECT"};

class Parser {
 public:
  explicit Parser(std::string_view text) : lexer_(text) { shift(); }

  QueryAst parse() {
    parse_prologue();
    if (is_keyword("SELECT")) {
      parse_select();
    } else if (is_keyword("ASK")) {
      parse_ask();
    } else if (cur_.kind == Tok::Keyword && kUnsupportedKeywords.count(cur_.text)) {
      fail_unsupported(cur_.text + " queries");
    } else {
      fail_syntax("expected SELECT or ASK");
    }
    expect_end();
    check_semantics();
    return std::move(ast_);
  }

 private:
  Lexer lexer_;
  Token cur_;
  QueryAst ast_;

  void shift() { cur_ = lexer_.next(); }

  bool is_keyword(std::string_view kw) const { return cur_.kind == Tok::Keyword && cur_.text == kw; }

  [[noreturn]] void fail_syntax(std::string msg) {
    throw ParseAbort{{ParseErrorClass::Syntax, cur_.line, cur_.col, std::move(msg)}};
  }

  [[noreturn]] void fail_unsupported(std::string what) {
    throw ParseAbort{{ParseErrorClass::UnsupportedFeature, cur_.line, cur_.col,
                      "unsupported SPARQL feature: " + what}};
  }

  [[noreturn]] void fail_semantic(std::string msg) {
    throw ParseAbort{{ParseErrorClass::Semantic, cur_.line, cur_.col, std::move(msg)}};
  }

  void reject_unsupported_token() {
    if (cur_.kind == Tok::Unsupported) {
      if (cur_.text == "[" || cur_.text == "]") fail_unsupported("blank node syntax in query patterns");
      if (cur_.text == "/" || cur_.text == "|" || cur_.text == "*") fail_unsupported("property paths");
      fail_unsupported(cur_.text);
    }
  }

  void expect(Tok kind, std::string_view what) {
    reject_unsupported_token();
    if (cur_.kind != kind) fail_syntax("expected " + std::string(what));
    shift();
  }

  void parse_prologue() {
    ast_.prefixes = default_prefixes();
    while (is_keyword("PREFIX") || is_keyword("BASE")) {
      if (is_keyword("BASE")) fail_unsupported("BASE declarations");
      shift();
      if (cur_.kind != Tok::Pname || !cur_.text.empty()) fail_syntax("expected prefix name ending in ':'");
      std::string prefix = cur_.aux;
      shift();
      if (cur_.kind != Tok::Iri) fail_syntax("expected IRI in PREFIX declaration");
      ast_.prefixes[prefix] = cur_.text;
      shift();
    }
  }

  Term resolve_pname(const Token& t) {
    auto it = ast_.prefixes.find(t.aux);
    if (it == ast_.prefixes.end()) {
      throw ParseAbort{{ParseErrorClass::Syntax, t.line, t.col, "undeclared prefix '" + t.aux + ":'"}};
    }
    return Term::iri(it->second + t.text);
  }

  void parse_select() {
    ast_.form = QueryForm::Select;
    shift();
    if (is_keyword("DISTINCT")) {
      ast_.distinct = true;
      shift();
    } else if (is_keyword("REDUCED")) {
      fail_unsupported("REDUCED");
    }
    bool saw_item = false;
    while (true) {
      if (cur_.kind == Tok::Var) {
        ast_.projection.push_back(cur_.text);
        saw_item = true;
        shift();
      } else if (cur_.kind == Tok::LParen) {
        parse_aggregate_projection();
        saw_item = true;
      } else if (cur_.kind == Tok::Unsupported && cur_.text == "*") {
        fail_unsupported("SELECT *");
      } else {
        break;
      }
    }
    if (!saw_item) fail_syntax("expected projection variable or aggregate");
    if (ast_.aggregate && !ast_.projection.empty()) {
      fail_semantic("an aggregate must be the sole projection item");
    }
    if (is_keyword("WHERE")) shift();
    parse_group(ast_.patterns, /*top_level=*/true);
    parse_solution_modifiers();
  }

  void parse_aggregate_projection() {
    expect(Tok::LParen, "'('");
    if (!is_keyword("COUNT")) {
      if (cur_.kind == Tok::Keyword && (cur_.text == "SUM" || cur_.text == "AVG" || cur_.text == "MIN" ||
                                        cur_.text == "MAX" || cur_.text == "SAMPLE" || cur_.text == "GROUP_CONCAT")) {
        fail_unsupported(cur_.text + " aggregates");
      }
      fail_syntax("expected COUNT");
    }
    if (ast_.aggregate) fail_semantic("multiple aggregates are not supported");
    shift();
    expect(Tok::LParen, "'(' after COUNT");
    Aggregate agg;
    if (is_keyword("DISTINCT")) {
      agg.distinct = true;
      shift();
    }
    if (cur_.kind != Tok::Var) {
      if (cur_.kind == Tok::Unsupported && cur_.text == "*") fail_unsupported("COUNT(*)");
      fail_syntax("expected variable inside COUNT");
    }
    agg.var = cur_.text;
    shift();
    expect(Tok::RParen, "')' after COUNT variable");
    if (!is_keyword("AS")) fail_syntax("expected AS in aggregate projection");
    shift();
    if (cur_.kind != Tok::Var) fail_syntax("expected alias variable after AS");
    agg.alias = cur_.text;
    shift();
    expect(Tok::RParen, "')' closing aggregate projection");
    ast_.aggregate = agg;
  }

  void parse_ask() {
    ast_.form = QueryForm::Ask;
    shift();
    if (is_keyword("WHERE")) shift();
    parse_group(ast_.patterns, /*top_level=*/true);
    if (is_keyword("ORDER") || is_keyword("LIMIT")) {
      fail_semantic("ASK queries take no solution modifiers");
    }
  }

  void parse_group(std::vector<TriplePattern>& patterns, bool top_level) {
    expect(Tok::LBrace, "'{'");
    while (cur_.kind != Tok::RBrace) {
      reject_unsupported_token();
      if (cur_.kind == Tok::End) fail_syntax("unterminated group: expected '}'");
      if (cur_.kind == Tok::LBrace) fail_unsupported("nested group patterns");
      if (cur_.kind == Tok::Keyword && kUnsupportedKeywords.count(cur_.text) && cur_.text != "EXISTS") {
        fail_unsupported(cur_.text);
      }
      if (is_keyword("FILTER")) {
        if (!top_level) fail_unsupported("FILTER inside NOT EXISTS");
        parse_filter();
        continue;
      }
      if (is_keyword("VALUES")) {
        if (!top_level) fail_unsupported("VALUES inside NOT EXISTS");
        parse_values();
        continue;
      }
      parse_triples_same_subject(patterns);
    }
    shift();  // '}'
  }

  void parse_filter() {
    shift();  // FILTER
    if (is_keyword("NOT")) {
      shift();
      if (!is_keyword("EXISTS")) fail_syntax("expected EXISTS after NOT");
      shift();
      std::vector<TriplePattern> inner;
      parse_group(inner, /*top_level=*/false);
      if (inner.empty()) fail_semantic("empty NOT EXISTS block");
      ast_.not_exists.push_back(std::move(inner));
      return;
    }
    if (is_keyword("EXISTS")) fail_unsupported("FILTER EXISTS");
    expect(Tok::LParen, "'(' after FILTER");
    ComparisonFilter filter;
    filter.lhs = parse_operand();
    filter.op = parse_compare_op();
    filter.rhs = parse_operand();
    expect(Tok::RParen, "')' closing FILTER");
    ast_.filters.push_back(std::move(filter));
  }

  Operand parse_operand() {
    reject_unsupported_token();
    if (cur_.kind == Tok::Var) {
      Operand op = Operand::of_var(cur_.text);
      shift();
      return op;
    }
    if (cur_.kind == Tok::Integer || cur_.kind == Tok::String) {
      return Operand::of_literal(parse_literal_term());
    }
    if (cur_.kind == Tok::Iri || cur_.kind == Tok::Pname) {
      fail_semantic("FILTER operands must be variables or literals");
    }
    fail_syntax("expected variable or literal in FILTER");
  }

  CompareOp parse_compare_op() {
    switch (cur_.kind) {
      case Tok::Eq: shift(); return CompareOp::Eq;
      case Tok::Ne: shift(); return CompareOp::Ne;
      case Tok::Lt: shift(); return CompareOp::Lt;
      case Tok::Le: shift(); return CompareOp::Le;
      case Tok::Gt: shift(); return CompareOp::Gt;
      case Tok::Ge: shift(); return CompareOp::Ge;
      default: fail_syntax("expected comparison operator");
    }
  }

  void parse_values() {
    shift();  // VALUES
    if (cur_.kind == Tok::LParen) fail_unsupported("multi-variable VALUES");
    if (cur_.kind != Tok::Var) fail_syntax("expected variable after VALUES");
    ValuesClause clause;
    clause.var = cur_.text;
    shift();
    expect(Tok::LBrace, "'{' opening VALUES block");
    while (cur_.kind != Tok::RBrace) {
      reject_unsupported_token();
      if (cur_.kind == Tok::End) fail_syntax("unterminated VALUES block");
      clause.terms.push_back(parse_ground_term());
    }
    shift();  // '}'
    if (clause.terms.empty()) fail_semantic("empty VALUES block");
    ast_.values.push_back(std::move(clause));
  }

  Term parse_literal_term() {
    if (cur_.kind == Tok::Integer) {
      Term t = Term::literal(cur_.text, std::string(rdf::vocab::kXsdInteger));
      shift();
      return t;
    }
    std::string value = cur_.text;
    shift();
    if (cur_.kind == Tok::DatatypeMark) {
      shift();
      Term dt;
      if (cur_.kind == Tok::Iri) {
        dt = Term::iri(cur_.text);
      } else if (cur_.kind == Tok::Pname) {
        dt = resolve_pname(cur_);
      } else {
        fail_syntax("expected datatype IRI after '^^'");
      }
      shift();
      return Term::literal(std::move(value), dt.value);
    }
    if (cur_.kind == Tok::LangTag) {
      std::string lang = cur_.text;
      shift();
      return Term::literal(std::move(value), {}, std::move(lang));
    }
    return Term::literal(std::move(value));
  }

  Term parse_ground_term() {
    reject_unsupported_token();
    if (cur_.kind == Tok::Iri) {
      Term t = Term::iri(cur_.text);
      shift();
      return t;
    }
    if (cur_.kind == Tok::Pname) {
      Term t = resolve_pname(cur_);
      shift();
      return t;
    }
    if (cur_.kind == Tok::String || cur_.kind == Tok::Integer) return parse_literal_term();
    fail_syntax("expected IRI or literal");
  }

  NodeOrVar parse_node(bool allow_literal) {
    reject_unsupported_token();
    if (cur_.kind == Tok::Var) {
      NodeOrVar n = NodeOrVar::of_var(cur_.text);
      shift();
      return n;
    }
    if (cur_.kind == Tok::Keyword && kUnsupportedKeywords.count(cur_.text)) fail_unsupported(cur_.text);
    if (!allow_literal && (cur_.kind == Tok::String || cur_.kind == Tok::Integer)) {
      fail_syntax("literal not allowed in this position");
    }
    return NodeOrVar::of_term(parse_ground_term());
  }

  NodeOrVar parse_verb() {
    if (is_keyword("a")) {
      shift();
      return NodeOrVar::of_term(Term::iri(std::string(rdf::vocab::kRdfType)));
    }
    reject_unsupported_token();
    if (cur_.kind == Tok::Var) {
      NodeOrVar n = NodeOrVar::of_var(cur_.text);
      shift();
      return n;
    }
    if (cur_.kind == Tok::Iri) {
      NodeOrVar n = NodeOrVar::of_term(Term::iri(cur_.text));
      shift();
      return n;
    }
    if (cur_.kind == Tok::Pname) {
      NodeOrVar n = NodeOrVar::of_term(resolve_pname(cur_));
      shift();
      return n;
    }
    fail_syntax("expected predicate");
  }

  void parse_triples_same_subject(std::vector<TriplePattern>& patterns) {
    NodeOrVar subject = parse_node(/*allow_literal=*/false);
    while (true) {
      NodeOrVar verb = parse_verb();
      NodeOrVar object = parse_node(/*allow_literal=*/true);
      patterns.push_back({subject, verb, object});
      if (cur_.kind == Tok::Comma) fail_unsupported("',' object lists");
      if (cur_.kind == Tok::Semicolon) {
        shift();
        if (cur_.kind == Tok::Dot || cur_.kind == Tok::RBrace) break;  // trailing ';'
        continue;
      }
      break;
    }
    if (cur_.kind == Tok::Dot) shift();  // the final '.' before '}' is optional
  }

  void parse_solution_modifiers() {
    if (is_keyword("ORDER")) {
      shift();
      if (!is_keyword("BY")) fail_syntax("expected BY after ORDER");
      shift();
      while (true) {
        if (is_keyword("ASC") || is_keyword("DESC")) {
          bool desc = cur_.text == "DESC";
          shift();
          expect(Tok::LParen, "'(' after ASC/DESC");
          if (cur_.kind != Tok::Var) fail_syntax("expected variable in order key");
          ast_.order_keys.push_back({cur_.text, desc});
          shift();
          expect(Tok::RParen, "')' closing order key");
        } else if (cur_.kind == Tok::Var) {
          ast_.order_keys.push_back({cur_.text, false});
          shift();
        } else {
          break;
        }
      }
      if (ast_.order_keys.empty()) fail_syntax("expected at least one order key");
    }
    if (is_keyword("LIMIT")) {
      shift();
      if (cur_.kind != Tok::Integer) fail_syntax("expected integer after LIMIT");
      ast_.limit = std::stoull(cur_.text);
      shift();
    }
    if (is_keyword("OFFSET")) fail_unsupported("OFFSET");
  }

  void expect_end() {
    reject_unsupported_token();
    if (cur_.kind == Tok::Keyword && kUnsupportedKeywords.count(cur_.text)) fail_unsupported(cur_.text);
    if (cur_.kind != Tok::End) fail_syntax("unexpected trailing content");
  }

  void check_semantics() {
    const auto bound = ast_.bound_variables();
    auto is_bound = [&](const std::string& v) {
      return std::find(bound.begin(), bound.end(), v) != bound.end();
    };
    for (const std::string& v : ast_.projection) {
      if (!is_bound(v)) fail_semantic("projected variable ?" + v + " is not bound by the pattern");
    }
    if (ast_.aggregate) {
      if (!is_bound(ast_.aggregate->var)) {
        fail_semantic("aggregated variable ?" + ast_.aggregate->var + " is not bound by the pattern");
      }
      if (is_bound(ast_.aggregate->alias)) {
        fail_semantic("aggregate alias ?" + ast_.aggregate->alias + " clashes with a pattern variable");
      }
      if (ast_.distinct) fail_semantic("DISTINCT with an aggregate projection is not supported");
    }
    for (const OrderKey& k : ast_.order_keys) {
      if (!is_bound(k.var) && !(ast_.aggregate && k.var == ast_.aggregate->alias)) {
        fail_semantic("order key ?" + k.var + " is not bound by the pattern");
      }
    }
    for (const ComparisonFilter& f : ast_.filters) {
      for (const Operand* op : {&f.lhs, &f.rhs}) {
        if (op->is_var && !is_bound(op->var)) {
          fail_semantic("filter variable ?" + op->var + " is not bound by the pattern");
        }
      }
    }
  }
};

}  // namespace

std::string parse_error_class_text(ParseErrorClass cls) {
  switch (cls) {
    case ParseErrorClass::Syntax: return "syntax";
    case ParseErrorClass::UnsupportedFeature: return "unsupported-feature";
    case ParseErrorClass::Semantic: return "semantic";
  }
  return "syntax";
}

std::string ParseError::to_string() const {
  return parse_error_class_text(cls) + " error at " + std::to_string(line) + ":" + std::to_string(col) +
         ": " + message;
}

const std::map<std::string, std::string>& default_prefixes() {
  static const std::map<std::string, std::string> prefixes = {
      {"dbo", std::string(rdf::vocab::kDbo)},   {"dbr", std::string(rdf::vocab::kDbr)},
      {"rdf", std::string(rdf::vocab::kRdf)},   {"rdfs", std::string(rdf::vocab::kRdfs)},
      {"foaf", std::string(rdf::vocab::kFoaf)}, {"gn", std::string(rdf::vocab::kGn)},
      {"spb", std::string(rdf::vocab::kSpb)},   {"xsd", std::string(rdf::vocab::kXsd)},
  };
  return prefixes;
}

ParseResult parse_query(std::string_view text) {
  ParseResult result;
  try {
    Parser parser(text);
    result.ast = parser.parse();
  } catch (const ParseAbort& abort) {
    result.error = abort.error;
  }
  return result;
}

}  // namespace kgbench::sparql
