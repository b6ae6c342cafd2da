#pragma once

#include "qcf/families.hpp"
#include "qcf/group.hpp"
#include "qcf/poset.hpp"
#include "qcf/quiver.hpp"
#include "qcf/rational.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace qcf::dsl {

/// 1-based source position. Positions never take part in AST equality.
struct Pos {
  std::size_t line = 1;
  std::size_t column = 1;
  friend bool operator==(const Pos&, const Pos&) { return true; }
};

struct Diagnostic {
  Pos pos;
  std::string kind;  ///< syntax | reference | validation
  std::string message;

  std::string to_string() const {
    return std::to_string(pos.line) + ":" + std::to_string(pos.column) + ": " + kind + " error: " + message;
  }
};

class DslError : public std::runtime_error {
 public:
  explicit DslError(std::vector<Diagnostic> diags)
      : std::runtime_error(diags.empty() ? "dsl error" : diags.front().to_string()), diagnostics_(std::move(diags)) {}
  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

 private:
  std::vector<Diagnostic> diagnostics_;
};

// ---------------------------------------------------------------------------
// Syntax tree

struct Name {
  std::string text;
  Pos pos;
  friend bool operator==(const Name&, const Name&) = default;
};

struct ArrowDecl {
  Name id, source, target;
  friend bool operator==(const ArrowDecl&, const ArrowDecl&) = default;
};

struct QuiverDecl {
  Name name;
  std::vector<Name> vertices;
  std::vector<ArrowDecl> arrows;
  friend bool operator==(const QuiverDecl&, const QuiverDecl&) = default;
};

struct CoverDecl {
  Name lo, hi;
  friend bool operator==(const CoverDecl&, const CoverDecl&) = default;
};

struct PosetDecl {
  Name name;
  std::vector<Name> elements;
  std::vector<CoverDecl> covers;
  friend bool operator==(const PosetDecl&, const PosetDecl&) = default;
};

struct PathsExpr {
  Name quiver;
  std::optional<long> maxlen;
  friend bool operator==(const PathsExpr&, const PathsExpr&) = default;
};

struct BasisExpr {
  Name quiver;
  std::vector<std::vector<Name>> paths;
  friend bool operator==(const BasisExpr&, const BasisExpr&) = default;
};

struct SegmentsExpr {
  Name poset;
  std::vector<std::pair<Name, Name>> segments;
  friend bool operator==(const SegmentsExpr&, const SegmentsExpr&) = default;
};

struct FullExpr {
  Name poset;
  friend bool operator==(const FullExpr&, const FullExpr&) = default;
};

struct FamilyExpr {
  FamilyTag tag = FamilyTag::Cn;
  long lo = 0, hi = 0;
  std::vector<std::pair<long, long>> r;
  std::optional<long> offset;
  long n = 0, s = 0;
  friend bool operator==(const FamilyExpr&, const FamilyExpr&) = default;
};

struct DiamondsExpr {
  long width = 0, levels = 0;
  friend bool operator==(const DiamondsExpr&, const DiamondsExpr&) = default;
};

struct SumExpr {
  std::vector<Name> parts;
  friend bool operator==(const SumExpr&, const SumExpr&) = default;
};

using CoalgebraExpr = std::variant<PathsExpr, BasisExpr, SegmentsExpr, FullExpr, FamilyExpr, DiamondsExpr, SumExpr>;

struct CoalgebraDecl {
  Name name;
  CoalgebraExpr expr;
  friend bool operator==(const CoalgebraDecl&, const CoalgebraDecl&) = default;
};

struct GroupExpr {
  std::string kind;  ///< cyclic | dihedral | product | csv
  long n = 0;
  std::string path;
  std::vector<GroupExpr> factors;
  Pos pos;
  friend bool operator==(const GroupExpr&, const GroupExpr&) = default;
};

struct RootLiteral {
  long order = 1;     ///< m in zeta(m)^k
  long exponent = 0;  ///< k
  friend bool operator==(const RootLiteral&, const RootLiteral&) = default;
};

struct HopfDecl {
  Name name;
  long s = 1;
  long q = 1;  ///< q = zeta_{s+1}^q
  GroupExpr group;
  std::optional<Name> g;
  std::vector<std::pair<Name, RootLiteral>> chi;
  Rational alpha = 0;
  friend bool operator==(const HopfDecl&, const HopfDecl&) = default;
};

using Declaration = std::variant<QuiverDecl, PosetDecl, CoalgebraDecl, HopfDecl>;

struct Document {
  std::vector<Declaration> declarations;
  friend bool operator==(const Document&, const Document&) = default;
};

// ---------------------------------------------------------------------------
// Lexer

namespace detail {

enum class Tok { Ident, Int, String, Arrow, Punct, End };

struct Token {
  Tok kind;
  std::string text;
  Pos pos;
};

inline std::vector<Token> lex(const std::string& src) {
  std::vector<Token> out;
  std::size_t i = 0, line = 1, col = 1;
  auto err = [&](const std::string& msg) { throw DslError({Diagnostic{{line, col}, "syntax", msg}}); };
  auto advance = [&](std::size_t k = 1) {
    for (std::size_t j = 0; j < k; ++j) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  auto word_char = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance();
      continue;
    }
    if (c == '#' || (c == '/' && i + 1 < src.size() && src[i + 1] == '/')) {
      while (i < src.size() && src[i] != '\n') advance();
      continue;
    }
    Pos p{line, col};
    if (c == '-' && i + 1 < src.size() && src[i + 1] == '>') {
      out.push_back({Tok::Arrow, "->", p});
      advance(2);
    } else if (std::isdigit(static_cast<unsigned char>(c)) ||
               (c == '-' && i + 1 < src.size() && std::isdigit(static_cast<unsigned char>(src[i + 1])))) {
      std::size_t j = i + 1;
      while (j < src.size() && word_char(src[j])) ++j;
      std::string text = src.substr(i, j - i);
      bool digits = text.find_first_not_of("0123456789", c == '-' ? 1 : 0) == std::string::npos;
      if (!digits && c == '-') err("malformed number '" + text + "'");
      out.push_back({digits ? Tok::Int : Tok::Ident, text, p});
      advance(j - i);
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i + 1;
      while (j < src.size() && word_char(src[j])) ++j;
      out.push_back({Tok::Ident, src.substr(i, j - i), p});
      advance(j - i);
    } else if (c == '"') {
      std::size_t j = i + 1;
      std::string text;
      while (j < src.size() && src[j] != '"' && src[j] != '\n') {
        if (src[j] == '\\' && j + 1 < src.size()) ++j;
        text += src[j++];
      }
      if (j >= src.size() || src[j] != '"') err("unterminated string");
      out.push_back({Tok::String, text, p});
      advance(j + 1 - i);
    } else if (std::string("{}()[]:;,=<^/").find(c) != std::string::npos) {
      out.push_back({Tok::Punct, std::string(1, c), p});
      advance();
    } else {
      err(std::string("unexpected character '") + c + "'");
    }
  }
  out.push_back({Tok::End, "", {line, col}});
  return out;
}

// ---------------------------------------------------------------------------
// Parser

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Document document() {
    Document doc;
    while (peek().kind != Tok::End) {
      const Token& t = peek();
      if (t.kind != Tok::Ident) fail(t, "expected a declaration");
      if (t.text == "quiver")
        doc.declarations.emplace_back(quiver());
      else if (t.text == "poset")
        doc.declarations.emplace_back(poset());
      else if (t.text == "coalgebra")
        doc.declarations.emplace_back(coalgebra());
      else if (t.text == "hopf")
        doc.declarations.emplace_back(hopf());
      else
        fail(t, "unknown declaration '" + t.text + "'");
    }
    return doc;
  }

 private:
  std::vector<Token> toks_;
  std::size_t at_ = 0;

  [[noreturn]] static void fail(const Token& t, const std::string& msg) {
    throw DslError({Diagnostic{t.pos, "syntax", msg}});
  }
  const Token& peek(std::size_t k = 0) const { return toks_[std::min(at_ + k, toks_.size() - 1)]; }
  const Token& next() {
    const Token& t = peek();
    if (at_ < toks_.size() - 1) ++at_;
    return t;
  }
  bool is_punct(const std::string& p, std::size_t k = 0) const {
    return peek(k).kind == Tok::Punct && peek(k).text == p;
  }
  bool accept(const std::string& p) {
    if (!is_punct(p)) return false;
    next();
    return true;
  }
  void expect(const std::string& p) {
    if (!accept(p)) fail(peek(), "expected '" + p + "'" + found());
  }
  std::string found() const {
    const Token& t = peek();
    return t.kind == Tok::End ? " but reached the end of input" : " but found '" + t.text + "'";
  }
  void keyword(const std::string& kw) {
    if (peek().kind != Tok::Ident || peek().text != kw) fail(peek(), "expected '" + kw + "'" + found());
    next();
  }
  Name ident(const std::string& what) {
    const Token& t = peek();
    if (t.kind != Tok::Ident && !(t.kind == Tok::Int && t.text[0] != '-')) fail(t, "expected " + what + found());
    next();
    return {t.text, t.pos};
  }
  /// Identifier, non-negative integer or quoted string.
  Name label(const std::string& what) {
    if (peek().kind == Tok::String) {
      const Token& t = next();
      return {t.text, t.pos};
    }
    return ident(what);
  }
  long integer(const std::string& what) {
    const Token& t = peek();
    if (t.kind != Tok::Int) fail(t, "expected " + what + found());
    next();
    try {
      return std::stol(t.text);
    } catch (const std::exception&) {
      fail(t, "integer out of range");
    }
  }
  long named_int(const std::string& key) {
    keyword(key);
    expect("=");
    return integer("an integer for '" + key + "'");
  }

  QuiverDecl quiver() {
    keyword("quiver");
    QuiverDecl d;
    d.name = ident("a quiver name");
    expect("{");
    while (!accept("}")) {
      const Token& t = peek();
      if (t.kind == Tok::Ident && t.text == "vertices") {
        next();
        expect(":");
        while (!accept(";")) d.vertices.push_back(ident("a vertex id"));
      } else if (t.kind == Tok::Ident && t.text == "arrows") {
        next();
        expect(":");
        while (!is_punct("}") && !(peek().kind == Tok::Ident && peek(1).kind == Tok::Punct && peek(1).text == ":" &&
                                   (peek().text == "vertices" || peek().text == "arrows"))) {
          ArrowDecl a;
          a.id = ident("an arrow id");
          expect(":");
          a.source = ident("a source vertex");
          if (peek().kind != Tok::Arrow) fail(peek(), "expected '->'" + found());
          next();
          a.target = ident("a target vertex");
          expect(";");
          d.arrows.push_back(std::move(a));
        }
      } else {
        fail(t, "expected 'vertices:' or 'arrows:' in quiver '" + d.name.text + "'");
      }
    }
    return d;
  }

  PosetDecl poset() {
    keyword("poset");
    PosetDecl d;
    d.name = ident("a poset name");
    expect("{");
    while (!accept("}")) {
      const Token& t = peek();
      if (t.kind == Tok::Ident && t.text == "elements") {
        next();
        expect(":");
        while (!accept(";")) d.elements.push_back(ident("an element id"));
      } else if (t.kind == Tok::Ident && t.text == "covers") {
        next();
        expect(":");
        while (!is_punct("}") && !(peek().kind == Tok::Ident && peek(1).kind == Tok::Punct && peek(1).text == ":" &&
                                   (peek().text == "elements" || peek().text == "covers"))) {
          Name lo = ident("an element id");
          expect("<");
          Name hi = ident("an element id");
          d.covers.push_back({lo, hi});
          while (accept("<")) {
            Name more = ident("an element id");
            d.covers.push_back({d.covers.back().hi, more});
          }
          expect(";");
        }
      } else {
        fail(t, "expected 'elements:' or 'covers:' in poset '" + d.name.text + "'");
      }
    }
    return d;
  }

  FamilyExpr family() {
    expect("(");
    FamilyExpr f;
    Name tag = ident("a family tag (Ainf, A0inf or Cn)");
    if (tag.text == "Cn") {
      f.tag = FamilyTag::Cn;
      expect(",");
      f.n = named_int("n");
      expect(",");
      f.s = named_int("s");
      expect(")");
      return f;
    }
    if (tag.text == "Ainf")
      f.tag = FamilyTag::AInf;
    else if (tag.text == "A0inf")
      f.tag = FamilyTag::A0Inf;
    else
      throw DslError({Diagnostic{tag.pos, "syntax", "unknown family '" + tag.text + "'"}});
    expect(",");
    keyword("window");
    expect("=");
    expect("[");
    f.lo = integer("the window start");
    expect(",");
    f.hi = integer("the window end");
    expect("]");
    expect(",");
    if (peek().kind == Tok::Ident && peek().text == "offset") {
      f.offset = named_int("offset");
    } else {
      keyword("r");
      expect("=");
      expect("{");
      if (!accept("}")) {
        do {
          long k = integer("a vertex index");
          expect(":");
          long v = integer("a value of r");
          f.r.emplace_back(k, v);
        } while (accept(","));
        expect("}");
      }
    }
    expect(")");
    return f;
  }

  CoalgebraDecl coalgebra() {
    keyword("coalgebra");
    CoalgebraDecl d;
    d.name = ident("a coalgebra name");
    expect("=");
    Name ctor = ident("a coalgebra constructor");
    const std::string& c = ctor.text;
    if (c == "paths") {
      expect("(");
      PathsExpr e{ident("a quiver name"), std::nullopt};
      if (accept(",")) e.maxlen = named_int("maxlen");
      expect(")");
      d.expr = e;
    } else if (c == "basis") {
      expect("(");
      BasisExpr e{ident("a quiver name"), {}};
      expect(")");
      expect("{");
      while (!accept("}")) {
        std::vector<Name> path;
        while (!accept(";")) path.push_back(ident("a vertex or arrow id"));
        if (path.empty()) fail(peek(), "empty path in basis list");
        e.paths.push_back(std::move(path));
      }
      d.expr = e;
    } else if (c == "segments") {
      expect("(");
      SegmentsExpr e{ident("a poset name"), {}};
      expect(")");
      expect("{");
      while (!accept("}")) {
        expect("[");
        Name lo = ident("an element id");
        expect(",");
        Name hi = ident("an element id");
        expect("]");
        expect(";");
        e.segments.emplace_back(lo, hi);
      }
      d.expr = e;
    } else if (c == "full") {
      expect("(");
      d.expr = FullExpr{ident("a poset name")};
      expect(")");
    } else if (c == "family") {
      d.expr = family();
    } else if (c == "diamonds") {
      expect("(");
      DiamondsExpr e;
      e.width = named_int("width");
      expect(",");
      e.levels = named_int("levels");
      expect(")");
      d.expr = e;
    } else if (c == "sum") {
      expect("(");
      SumExpr e;
      do e.parts.push_back(ident("a coalgebra name"));
      while (accept(","));
      expect(")");
      d.expr = e;
    } else {
      throw DslError({Diagnostic{ctor.pos, "syntax", "unknown coalgebra constructor '" + c + "'"}});
    }
    accept(";");
    return d;
  }

  GroupExpr group() {
    Name kind = ident("a group constructor");
    GroupExpr g;
    g.kind = kind.text;
    g.pos = kind.pos;
    expect("(");
    if (g.kind == "cyclic" || g.kind == "dihedral") {
      g.n = integer("the group parameter");
    } else if (g.kind == "product") {
      g.factors.push_back(group());
      expect(",");
      g.factors.push_back(group());
    } else if (g.kind == "csv") {
      if (peek().kind != Tok::String) fail(peek(), "expected a quoted file name" + found());
      g.path = next().text;
    } else {
      throw DslError({Diagnostic{kind.pos, "syntax", "unknown group constructor '" + g.kind + "'"}});
    }
    expect(")");
    return g;
  }

  RootLiteral root() {
    if (peek().kind == Tok::Int) {
      const Token& t = peek();
      long v = integer("a root of unity");
      if (v == 1) return {1, 0};
      if (v == -1) return {2, 1};
      fail(t, "only 1 and -1 may be written as plain integers; use zeta(m)^k");
    }
    keyword("zeta");
    expect("(");
    RootLiteral r;
    r.order = integer("the order of zeta");
    if (r.order < 1) fail(peek(), "zeta needs a positive order");
    expect(")");
    r.exponent = accept("^") ? integer("an exponent") : 1;
    return r;
  }

  HopfDecl hopf() {
    keyword("hopf");
    HopfDecl d;
    d.name = ident("a hopf name");
    expect("{");
    bool has_group = false;
    while (!accept("}")) {
      Name key = ident("a hopf parameter");
      expect("=");
      if (key.text == "s") {
        d.s = integer("s");
      } else if (key.text == "q") {
        d.q = integer("the exponent of q");
      } else if (key.text == "group") {
        d.group = group();
        has_group = true;
      } else if (key.text == "g") {
        d.g = label("a group element");
      } else if (key.text == "alpha") {
        const Token& t = peek();
        long num = integer("a rational alpha");
        long den = 1;
        if (accept("/")) den = integer("a denominator");
        if (den <= 0) fail(t, "alpha needs a positive denominator");
        d.alpha = Rational(num, den);
      } else if (key.text == "chi") {
        expect("{");
        if (!accept("}")) {
          do {
            Name h = label("a group element");
            expect(":");
            d.chi.emplace_back(h, root());
          } while (accept(","));
          expect("}");
        }
      } else {
        throw DslError({Diagnostic{key.pos, "syntax", "unknown hopf parameter '" + key.text + "'"}});
      }
      expect(";");
    }
    if (!has_group) throw DslError({Diagnostic{d.name.pos, "syntax", "hopf '" + d.name.text + "' needs a group"}});
    return d;
  }
};

inline bool plain_word(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '\'') return false;
  return !(s[0] == '\'');
}

inline std::string quote_if_needed(const std::string& s) {
  if (plain_word(s)) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

inline std::string print_group(const GroupExpr& g) {
  if (g.kind == "product") return "product(" + print_group(g.factors[0]) + ", " + print_group(g.factors[1]) + ")";
  if (g.kind == "csv") {
    std::string out = "csv(\"";
    for (char c : g.path) {
      if (c == '"' || c == '\\') out += '\\';
      out += c;
    }
    return out + "\")";
  }
  return g.kind + "(" + std::to_string(g.n) + ")";
}

}  // namespace detail

inline Document parse(const std::string& text) { return detail::Parser(detail::lex(text)).document(); }

/// Canonical text form: fixed section order, one arrow, cover, path or
/// segment per line.
inline std::string print(const Document& doc) {
  std::ostringstream out;
  bool first = true;
  for (const auto& decl : doc.declarations) {
    if (!first) out << "\n";
    first = false;
    if (const auto* q = std::get_if<QuiverDecl>(&decl)) {
      out << "quiver " << q->name.text << " {\n  vertices:";
      for (const auto& v : q->vertices) out << " " << v.text;
      out << ";\n";
      if (!q->arrows.empty()) {
        out << "  arrows:\n";
        for (const auto& a : q->arrows) out << "    " << a.id.text << ": " << a.source.text << " -> " << a.target.text << ";\n";
      }
      out << "}\n";
    } else if (const auto* p = std::get_if<PosetDecl>(&decl)) {
      out << "poset " << p->name.text << " {\n  elements:";
      for (const auto& e : p->elements) out << " " << e.text;
      out << ";\n";
      if (!p->covers.empty()) {
        out << "  covers:\n";
        for (const auto& c : p->covers) out << "    " << c.lo.text << " < " << c.hi.text << ";\n";
      }
      out << "}\n";
    } else if (const auto* c = std::get_if<CoalgebraDecl>(&decl)) {
      out << "coalgebra " << c->name.text << " = ";
      std::visit(
          [&](const auto& e) {
            using T = std::decay_t<decltype(e)>;
            if constexpr (std::is_same_v<T, PathsExpr>) {
              out << "paths(" << e.quiver.text;
              if (e.maxlen) out << ", maxlen=" << *e.maxlen;
              out << ")";
            } else if constexpr (std::is_same_v<T, BasisExpr>) {
              out << "basis(" << e.quiver.text << ") {\n";
              for (const auto& path : e.paths) {
                out << "  ";
                for (std::size_t i = 0; i < path.size(); ++i) out << (i ? " " : "") << path[i].text;
                out << ";\n";
              }
              out << "}";
            } else if constexpr (std::is_same_v<T, SegmentsExpr>) {
              out << "segments(" << e.poset.text << ") {\n";
              for (const auto& [lo, hi] : e.segments) out << "  [" << lo.text << ", " << hi.text << "];\n";
              out << "}";
            } else if constexpr (std::is_same_v<T, FullExpr>) {
              out << "full(" << e.poset.text << ")";
            } else if constexpr (std::is_same_v<T, FamilyExpr>) {
              if (e.tag == FamilyTag::Cn) {
                out << "family(Cn, n=" << e.n << ", s=" << e.s << ")";
              } else {
                out << "family(" << to_string(e.tag) << ", window=[" << e.lo << ", " << e.hi << "], ";
                if (e.offset) {
                  out << "offset=" << *e.offset;
                } else {
                  out << "r={";
                  for (std::size_t i = 0; i < e.r.size(); ++i) out << (i ? ", " : "") << e.r[i].first << ": " << e.r[i].second;
                  out << "}";
                }
                out << ")";
              }
            } else if constexpr (std::is_same_v<T, DiamondsExpr>) {
              out << "diamonds(width=" << e.width << ", levels=" << e.levels << ")";
            } else {
              out << "sum(";
              for (std::size_t i = 0; i < e.parts.size(); ++i) out << (i ? ", " : "") << e.parts[i].text;
              out << ")";
            }
          },
          c->expr);
      out << ";\n";
    } else {
      const auto& h = std::get<HopfDecl>(decl);
      out << "hopf " << h.name.text << " {\n";
      out << "  s = " << h.s << ";\n  q = " << h.q << ";\n  group = " << detail::print_group(h.group) << ";\n";
      if (h.g) out << "  g = " << detail::quote_if_needed(h.g->text) << ";\n";
      if (!h.chi.empty()) {
        out << "  chi = {";
        for (std::size_t i = 0; i < h.chi.size(); ++i) {
          const auto& [name, r] = h.chi[i];
          out << (i ? ", " : "") << detail::quote_if_needed(name.text) << ": ";
          if (r.order == 1)
            out << "1";
          else
            out << "zeta(" << r.order << ")^" << r.exponent;
        }
        out << "};\n";
      }
      const BigInt den = boost::multiprecision::denominator(h.alpha);
      out << "  alpha = " << boost::multiprecision::numerator(h.alpha).str() << (den == 1 ? "" : "/" + den.str()) << ";\n}\n";
    }
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Resolution

struct IncidenceValue {
  IncidenceSubcoalgebra coalgebra;
  /// Set for finite windows onto an infinite order.
  std::optional<std::set<std::size_t>> interior;
};

using CoalgebraValue = std::variant<WindowedCoalgebra, IncidenceValue>;

struct HopfSpec {
  unsigned s = 1;
  RootOfUnity q;
  FiniteGroupData data;
  Scalar alpha;
};

struct Model {
  std::vector<std::pair<std::string, Quiver>> quivers;
  std::vector<std::pair<std::string, Poset>> posets;
  std::vector<std::pair<std::string, CoalgebraValue>> coalgebras;
  std::vector<std::pair<std::string, HopfSpec>> hopfs;

  template <class T>
  static const T* find(const std::vector<std::pair<std::string, T>>& v, const std::string& name) {
    for (const auto& [n, x] : v)
      if (n == name) return &x;
    return nullptr;
  }
};

namespace detail {

class Resolver {
 public:
  Resolver(const Document& doc, std::filesystem::path base) : doc_(doc), base_(std::move(base)) {}

  Model run() {
    std::map<std::string, Pos> seen;
    for (const auto& decl : doc_.declarations) {
      const Name& n = std::visit([](const auto& d) -> const Name& { return d.name; }, decl);
      auto [it, fresh] = seen.emplace(n.text, n.pos);
      if (!fresh) {
        report(n.pos, "reference",
               "duplicate name '" + n.text + "' (first declared at line " + std::to_string(it->second.line) + ")");
        continue;
      }
      try {
        std::visit([&](const auto& d) { declare(d); }, decl);
      } catch (const DslError& e) {
        for (const auto& d : e.diagnostics()) diags_.push_back(d);
      }
    }
    if (!diags_.empty()) throw DslError(diags_);
    return std::move(model_);
  }

 private:
  const Document& doc_;
  std::filesystem::path base_;
  Model model_;
  std::vector<Diagnostic> diags_;

  void report(Pos p, const std::string& kind, const std::string& msg) { diags_.push_back({p, kind, msg}); }
  [[noreturn]] static void stop(Pos p, const std::string& kind, const std::string& msg) {
    throw DslError({Diagnostic{p, kind, msg}});
  }

  void declare(const QuiverDecl& d) {
    Quiver q;
    bool ok = true;
    for (const auto& v : d.vertices) {
      if (q.is_vertex(v.text) || q.is_arrow(v.text)) {
        report(v.pos, "reference", "duplicate vertex '" + v.text + "'");
        ok = false;
        continue;
      }
      q.add_vertex(v.text);
    }
    for (const auto& a : d.arrows) {
      if (q.is_vertex(a.id.text) || q.is_arrow(a.id.text)) {
        report(a.id.pos, "reference", "duplicate id '" + a.id.text + "'");
        ok = false;
        continue;
      }
      bool ends = true;
      for (const Name* end : {&a.source, &a.target})
        if (!q.is_vertex(end->text)) {
          report(a.id.pos, "reference",
                 "arrow '" + a.id.text + "' has undeclared endpoint '" + end->text + "' (at line " +
                     std::to_string(end->pos.line) + ", column " + std::to_string(end->pos.column) + ")");
          ends = false;
        }
      if (!ends) {
        ok = false;
        continue;
      }
      q.add_arrow(a.id.text, a.source.text, a.target.text);
    }
    if (ok) model_.quivers.emplace_back(d.name.text, std::move(q));
  }

  void declare(const PosetDecl& d) {
    std::vector<std::string> names;
    std::map<std::string, std::size_t> index;
    for (const auto& e : d.elements) {
      if (!index.emplace(e.text, names.size()).second) stop(e.pos, "reference", "duplicate element '" + e.text + "'");
      names.push_back(e.text);
    }
    std::vector<std::pair<std::size_t, std::size_t>> less;
    for (const auto& c : d.covers) {
      for (const Name* end : {&c.lo, &c.hi})
        if (!index.count(end->text)) stop(end->pos, "reference", "unknown element '" + end->text + "'");
      if (c.lo.text == c.hi.text) stop(c.lo.pos, "validation", "relation '" + c.lo.text + " < " + c.hi.text + "' is reflexive");
      less.emplace_back(index[c.lo.text], index[c.hi.text]);
    }
    try {
      model_.posets.emplace_back(d.name.text, Poset::from_covers(std::move(names), less));
    } catch (const std::invalid_argument& e) {
      stop(d.name.pos, "validation", "poset '" + d.name.text + "': " + e.what() + " (the relations contain a cycle)");
    }
  }

  const Quiver& quiver(const Name& n) {
    if (const auto* q = Model::find(model_.quivers, n.text)) return *q;
    stop(n.pos, "reference", "unknown quiver '" + n.text + "'");
  }
  const Poset& poset(const Name& n) {
    if (const auto* p = Model::find(model_.posets, n.text)) return *p;
    stop(n.pos, "reference", "unknown poset '" + n.text + "'");
  }

  CoalgebraValue build(const Name& name, const PathsExpr& e) {
    const Quiver& q = quiver(e.quiver);
    if (e.maxlen) {
      if (*e.maxlen < 0) stop(name.pos, "validation", "maxlen must be non-negative");
      return WindowedCoalgebra{truncated_path_coalgebra(q, static_cast<std::size_t>(*e.maxlen)), {}};
    }
    if (q.has_cycle())
      stop(e.quiver.pos, "validation",
           "quiver '" + e.quiver.text + "' has an oriented cycle; use paths(" + e.quiver.text + ", maxlen=N)");
    return WindowedCoalgebra{full_path_coalgebra(q), {}};
  }

  CoalgebraValue build(const Name& name, const BasisExpr& e) {
    const Quiver& q = quiver(e.quiver);
    std::vector<Path> basis;
    for (const auto& path : e.paths) {
      std::vector<std::string> ids;
      for (const auto& id : path) {
        if (!q.is_vertex(id.text) && !q.is_arrow(id.text))
          stop(id.pos, "reference", "'" + id.text + "' is not a vertex or arrow of '" + e.quiver.text + "'");
        ids.push_back(id.text);
      }
      try {
        basis.push_back(path_from_ids(q, ids));
      } catch (const std::invalid_argument& ex) {
        stop(path.front().pos, "validation", ex.what());
      }
    }
    PathSubcoalgebra c(q, basis);
    auto bad = validate(c);
    if (!bad.empty())
      stop(name.pos, "validation",
           "coalgebra '" + name.text + "' is not subpath closed: '" + c.label(bad.front().missing) + "' is missing (required by '" +
               c.label(bad.front().required_by) + "')" +
               (bad.size() > 1 ? " and " + std::to_string(bad.size() - 1) + " more" : ""));
    return WindowedCoalgebra{std::move(c), {}};
  }

  CoalgebraValue build(const Name& name, const SegmentsExpr& e) {
    const Poset& p = poset(e.poset);
    std::vector<Segment> basis;
    for (const auto& [lo, hi] : e.segments) {
      for (const Name* end : {&lo, &hi})
        if (!p.has(end->text)) stop(end->pos, "reference", "unknown element '" + end->text + "' of '" + e.poset.text + "'");
      std::size_t a = p.index(lo.text), b = p.index(hi.text);
      if (!p.leq(a, b)) stop(lo.pos, "validation", "'" + lo.text + "' is not below '" + hi.text + "'");
      basis.push_back({a, b});
    }
    IncidenceSubcoalgebra c(p, basis);
    auto bad = validate(c);
    if (!bad.empty())
      stop(name.pos, "validation",
           "coalgebra '" + name.text + "' is not interval closed: " + c.label(bad.front().missing) + " is missing (required by " +
               c.label(bad.front().required_by) + ")" +
               (bad.size() > 1 ? " and " + std::to_string(bad.size() - 1) + " more" : ""));
    return IncidenceValue{std::move(c), std::nullopt};
  }

  CoalgebraValue build(const Name&, const FullExpr& e) { return IncidenceValue{full_incidence_coalgebra(poset(e.poset)), std::nullopt}; }

  CoalgebraValue build(const Name& name, const FamilyExpr& e) {
    WindowedFamily f;
    if (e.tag == FamilyTag::Cn) {
      if (e.n < 1 || e.s < 1) stop(name.pos, "validation", "family(Cn) needs n >= 1 and s >= 1");
      f = WindowedFamily::cycle(static_cast<unsigned>(e.n), static_cast<unsigned>(e.s));
    } else if (e.offset) {
      if (e.hi < e.lo) stop(name.pos, "validation", "empty window");
      f = WindowedFamily::constant_offset(e.tag, e.lo, e.hi, *e.offset);
    } else {
      std::map<long, long> r(e.r.begin(), e.r.end());
      if (r.size() != e.r.size()) stop(name.pos, "validation", "r assigns a vertex twice");
      std::vector<long> table;
      for (long k = e.lo; k <= e.hi; ++k) {
        auto it = r.find(k);
        if (it == r.end()) stop(name.pos, "validation", "r is missing a value at " + std::to_string(k));
        table.push_back(it->second);
      }
      if (r.size() != table.size()) stop(name.pos, "validation", "r assigns values outside the window");
      f = WindowedFamily::line(e.tag, e.lo, e.hi, std::move(table));
    }
    if (auto bad = family_violation(f)) stop(name.pos, "validation", "coalgebra '" + name.text + "': " + *bad);
    return as_windowed(f);
  }

  CoalgebraValue build(const Name& name, const DiamondsExpr& e) {
    if (e.width < 1 || e.levels < 1) stop(name.pos, "validation", "diamonds needs width >= 1 and levels >= 1");
    auto w = static_cast<unsigned>(e.width), l = static_cast<unsigned>(e.levels);
    return IncidenceValue{stacked_diamonds(w, l), stacked_diamonds_interior(w, l)};
  }

  CoalgebraValue build(const Name& name, const SumExpr& e) {
    std::vector<const CoalgebraValue*> parts;
    for (const auto& p : e.parts) {
      const auto* v = Model::find(model_.coalgebras, p.text);
      if (!v) stop(p.pos, "reference", "unknown coalgebra '" + p.text + "'");
      parts.push_back(v);
    }
    bool all_path = std::all_of(parts.begin(), parts.end(), [](auto* v) { return v->index() == 0; });
    bool all_inc = std::all_of(parts.begin(), parts.end(), [](auto* v) { return v->index() == 1; });
    if (all_path) {
      std::vector<WindowedCoalgebra> wc;
      for (auto* v : parts) wc.push_back(std::get<WindowedCoalgebra>(*v));
      return windowed_sum(wc);
    }
    if (!all_inc) stop(name.pos, "validation", "sum mixes path and incidence coalgebras");
    // Disjoint union of the posets.
    std::vector<std::string> names;
    std::vector<std::pair<std::size_t, std::size_t>> less;
    std::vector<Segment> basis;
    std::optional<std::set<std::size_t>> interior;
    bool any_window = false;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      const auto& iv = std::get<IncidenceValue>(*parts[i]);
      const Poset& P = iv.coalgebra.poset();
      const std::size_t off = names.size();
      for (const auto& n : P.elements()) names.push_back("s" + std::to_string(i) + "_" + n);
      for (std::size_t a = 0; a < P.size(); ++a)
        for (std::size_t b = 0; b < P.size(); ++b)
          if (P.less(a, b)) less.emplace_back(off + a, off + b);
      for (const auto& seg : iv.coalgebra.basis()) basis.push_back({off + seg.lo, off + seg.hi});
      any_window = any_window || iv.interior.has_value();
      if (!interior) interior.emplace();
      for (std::size_t a = 0; a < P.size(); ++a)
        if (!iv.interior || iv.interior->count(a)) interior->insert(off + a);
    }
    Poset P = Poset::from_covers(std::move(names), less);
    return IncidenceValue{IncidenceSubcoalgebra(std::move(P), std::move(basis)),
                          any_window ? interior : std::nullopt};
  }

  void declare(const CoalgebraDecl& d) {
    CoalgebraValue v = std::visit([&](const auto& e) { return build(d.name, e); }, d.expr);
    model_.coalgebras.emplace_back(d.name.text, std::move(v));
  }

  FiniteGroup group(const GroupExpr& g) {
    if (g.kind == "cyclic") {
      if (g.n < 1) stop(g.pos, "validation", "cyclic group needs order >= 1");
      return cyclic_group(static_cast<std::size_t>(g.n));
    }
    if (g.kind == "dihedral") {
      if (g.n < 1) stop(g.pos, "validation", "dihedral group needs m >= 1");
      return dihedral_group(static_cast<std::size_t>(g.n));
    }
    if (g.kind == "product") {
      FiniteGroup a = group(g.factors[0]);
      FiniteGroup b = group(g.factors[1]);
      if (a.order() * b.order() > 512) stop(g.pos, "validation", "product group is too large");
      return product_group(a, b);
    }
    std::filesystem::path p = base_ / g.path;
    std::ifstream in(p);
    if (!in) stop(g.pos, "reference", "cannot read group table '" + p.string() + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    try {
      return group_from_csv(ss.str());
    } catch (const std::invalid_argument& e) {
      stop(g.pos, "validation", std::string("group table '") + g.path + "': " + e.what());
    }
  }

  void declare(const HopfDecl& d) {
    HopfSpec spec;
    if (d.s < 1) stop(d.name.pos, "validation", "s must be at least 1");
    spec.s = static_cast<unsigned>(d.s);
    const auto m = static_cast<long long>(d.s + 1);
    if (std::gcd(((d.q % m) + m) % m, m) != 1)
      stop(d.name.pos, "validation", "q exponent must be coprime to s+1 = " + std::to_string(m));
    spec.q = RootOfUnity(static_cast<std::uint64_t>(m), d.q);
    spec.alpha = Scalar(d.alpha);
    FiniteGroup G = group(d.group);
    auto chars = characters(G);

    std::vector<std::pair<std::size_t, RootOfUnity>> fixed;
    for (const auto& [name, r] : d.chi) {
      std::size_t h = 0;
      try {
        h = G.index(name.text);
      } catch (const std::invalid_argument&) {
        stop(name.pos, "reference", "unknown group element '" + name.text + "'");
      }
      fixed.emplace_back(h, RootOfUnity(static_cast<std::uint64_t>(r.order), r.exponent));
    }
    auto admissible = [&](const Character& chi, std::size_t g) {
      if (!(chi[g] == spec.q)) return false;
      for (const auto& [h, v] : fixed)
        if (!(chi[h] == v)) return false;
      return true;
    };
    auto trivial_power = [&](const Character& chi) {
      return std::all_of(chi.begin(), chi.end(), [&](const RootOfUnity& v) { return v.pow(d.s + 1) == RootOfUnity(1, 0); });
    };
    bool blocked_by_alpha = false;
    auto pick = [&](std::size_t g) -> std::optional<Character> {
      for (const auto& chi : chars) {
        if (!admissible(chi, g)) continue;
        if (spec.alpha.is_zero() || trivial_power(chi)) return chi;
        blocked_by_alpha = true;
      }
      return std::nullopt;
    };

    std::vector<std::size_t> candidates;
    if (d.g) {
      try {
        candidates.push_back(G.index(d.g->text));
      } catch (const std::invalid_argument&) {
        stop(d.g->pos, "reference", "unknown group element '" + d.g->text + "'");
      }
      if (!G.is_central(candidates[0])) stop(d.g->pos, "validation", "g = '" + d.g->text + "' is not central");
    } else {
      for (std::size_t h = 0; h < G.order(); ++h)
        if (h != G.identity && G.is_central(h)) candidates.push_back(h);
    }
    for (auto g : candidates) {
      if (auto chi = pick(g)) {
        spec.data = FiniteGroupData{G, g, *chi};
        model_.hopfs.emplace_back(d.name.text, std::move(spec));
        return;
      }
    }
    if (blocked_by_alpha)
      stop(d.name.pos, "validation", "alpha != 0 needs a character with chi^(s+1) = 1, and none matches");
    stop(d.name.pos, "validation",
         "no central element g and character chi with chi(g) = q" + std::string(d.chi.empty() ? "" : " matching the given values"));
  }
};

}  // namespace detail

/// Builds and validates every declaration; all problems are collected.
inline Model resolve(const Document& doc, const std::filesystem::path& base_dir = ".") {
  return detail::Resolver(doc, base_dir).run();
}

}  // namespace qcf::dsl
