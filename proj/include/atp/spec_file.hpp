#pragma once

// Expression parser and the line-oriented manifold spec format:
//
//   # free-form description
//   coords: x1 x2 x3 x4 x5
//   aux: E ; dE/dx5 = E
//   let f = 1 + x1^2
//   pi: f * (d/dx1 ^ d/dx2) + ∂x3^∂x4
//   phi: (x5) * dx1^dx3^dx4
//   theta: dx5

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "atp/brackets.hpp"
#include "atp/printer.hpp"

namespace atp {

namespace parse_detail {

enum class Tok { end, ident, number, vector, plus, minus, star, slash, caret, lparen, rparen };

struct Token {
  Tok type;
  std::string text;
  std::size_t column;  // 1-based
};

inline constexpr std::string_view partial_sign = "∂";

/// Splits one expression into tokens; `column0` is the column of text[0].
inline std::vector<Token> tokenize(std::string_view text, std::size_t line, std::size_t column0) {
  std::vector<Token> out;
  auto is_start = [](char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; };
  auto is_body = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; };
  std::size_t i = 0;
  auto read_ident = [&](std::size_t from) {
    std::size_t j = from;
    while (j < text.size() && is_body(text[j])) ++j;
    return j;
  };
  while (i < text.size()) {
    char c = text[i];
    std::size_t col = column0 + i;
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (text.substr(i, partial_sign.size()) == partial_sign) {
      std::size_t start = i + partial_sign.size();
      if (start >= text.size() || !is_start(text[start]))
        throw ParseError(ParseError::Kind::syntax, line, col, "expected a coordinate after '∂'");
      std::size_t j = read_ident(start);
      out.push_back({Tok::vector, std::string(text.substr(start, j - start)), col});
      i = j;
      continue;
    }
    if (c == 'd' && text.substr(i, 3) == "d/d" && i + 3 < text.size() && is_start(text[i + 3])) {
      std::size_t j = read_ident(i + 3);
      out.push_back({Tok::vector, std::string(text.substr(i + 3, j - i - 3)), col});
      i = j;
      continue;
    }
    if (is_start(c)) {
      std::size_t j = read_ident(i);
      out.push_back({Tok::ident, std::string(text.substr(i, j - i)), col});
      i = j;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      out.push_back({Tok::number, std::string(text.substr(i, j - i)), col});
      i = j;
      continue;
    }
    Tok t;
    switch (c) {
      case '+': t = Tok::plus; break;
      case '-': t = Tok::minus; break;
      case '*': t = Tok::star; break;
      case '/': t = Tok::slash; break;
      case '^': t = Tok::caret; break;
      case '(': t = Tok::lparen; break;
      case ')': t = Tok::rparen; break;
      default: throw ParseError(ParseError::Kind::syntax, line, col, std::string("unexpected character '") + c + "'");
    }
    out.push_back({t, std::string(1, c), col});
    ++i;
  }
  out.push_back({Tok::end, "", column0 + text.size()});
  return out;
}

}  // namespace parse_detail

/// Names visible to expressions: the chart's variables plus `let` bindings.
struct Scope {
  ChartPtr chart;
  std::map<std::string, GradedTensor> bindings;
};

/// Recursive-descent parser. `^` binds tighter than `*` and `/`; it is a
/// power when both sides are scalars and a wedge otherwise.
class ExpressionParser {
 public:
  ExpressionParser(const Scope& scope, std::string_view text, std::size_t line = 1, std::size_t column0 = 1)
      : scope_(scope), line_(line), tokens_(parse_detail::tokenize(text, line, column0)) {}

  GradedTensor parse() {
    if (peek().type == Tok::end) fail(ParseError::Kind::syntax, peek(), "empty expression");
    GradedTensor v = expr();
    if (peek().type != Tok::end) fail(ParseError::Kind::syntax, peek(), "unexpected '" + peek().text + "'");
    return v;
  }

 private:
  using Tok = parse_detail::Tok;
  using Token = parse_detail::Token;

  const Token& peek() const { return tokens_[pos_]; }
  const Token& next() { return tokens_[pos_++]; }

  [[noreturn]] void fail(ParseError::Kind kind, const Token& at, const std::string& msg) const {
    throw ParseError(kind, line_, at.column, msg);
  }

  GradedTensor scalar(const RationalFunction& f) const { return GradedTensor::scalar(scope_.chart, f); }

  GradedTensor expr() {
    GradedTensor v = term();
    while (peek().type == Tok::plus || peek().type == Tok::minus) {
      const Token op = next();
      GradedTensor rhs = term();
      v = add(v, op.type == Tok::minus ? -rhs : rhs, op);
    }
    return v;
  }

  GradedTensor add(const GradedTensor& a, const GradedTensor& b, const Token& op) const {
    bool a_scalar = a.degree() == 0, b_scalar = b.degree() == 0;
    // Zero scalars are neutral; any other mix of degrees or kinds is an error.
    if ((a.degree() != b.degree() && !(a_scalar && a.is_zero()) && !(b_scalar && b.is_zero())) ||
        (a.degree() == b.degree() && a.degree() != 0 && a.kind() != b.kind()))
      fail(ParseError::Kind::degree_inference, op, "mixed degrees or kinds in one sum");
    return a + b;
  }

  GradedTensor term() {
    GradedTensor v = unary();
    while (peek().type == Tok::star || peek().type == Tok::slash) {
      const Token op = next();
      GradedTensor rhs = unary();
      if (op.type == Tok::star) {
        if (v.degree() != 0 && rhs.degree() != 0)
          fail(ParseError::Kind::degree_inference, op, "'*' needs a scalar operand; use '^' for wedge products");
        v = wedge(v, rhs);
      } else {
        if (rhs.degree() != 0) fail(ParseError::Kind::degree_inference, op, "division by a tensor");
        const RationalFunction& den = rhs.component(IndexSet{});
        if (den.is_zero()) fail(ParseError::Kind::syntax, op, "division by zero");
        v = v.scaled(den.inverse());
      }
    }
    return v;
  }

  GradedTensor unary() {
    if (peek().type == Tok::minus) {
      next();
      return -unary();
    }
    if (peek().type == Tok::plus) {
      next();
      return unary();
    }
    return power();
  }

  GradedTensor power() {
    GradedTensor base = atom();
    if (peek().type != Tok::caret) return base;
    const Token op = next();
    const Token& exponent_start = peek();
    GradedTensor exponent = unary();
    if (base.degree() == 0 && exponent.degree() == 0) {
      const RationalFunction& e = exponent.component(IndexSet{});
      if (!(e.is_constant() && e.constant_value().get_den() == 1 && e.constant_value().get_num().fits_slong_p()))
        fail(ParseError::Kind::syntax, exponent_start, "exponent must be an integer");
      long n = e.constant_value().get_num().get_si();
      const RationalFunction& b = base.component(IndexSet{});
      if (n < 0 && b.is_zero()) fail(ParseError::Kind::syntax, op, "negative power of zero");
      return scalar(pow(b, n));
    }
    if (base.degree() != 0 && exponent.degree() != 0 && base.kind() != exponent.kind())
      fail(ParseError::Kind::degree_inference, op, "wedge of a form with a multivector");
    return wedge(base, exponent);
  }

  GradedTensor atom() {
    const Token t = next();
    const Chart& chart = *scope_.chart;
    switch (t.type) {
      case Tok::number: return scalar(RationalFunction(Rational(Integer(t.text))));
      case Tok::lparen: {
        GradedTensor v = expr();
        if (peek().type != Tok::rparen) fail(ParseError::Kind::syntax, peek(), "expected ')'");
        next();
        return v;
      }
      case Tok::vector: {
        auto idx = chart.coordinate_index(t.text);
        if (!idx) fail(ParseError::Kind::unknown_symbol, t, "unknown coordinate '" + t.text + "'");
        return GradedTensor::basis_vector(scope_.chart, *idx);
      }
      case Tok::ident: {
        if (auto it = scope_.bindings.find(t.text); it != scope_.bindings.end()) return it->second;
        if (auto var = chart.variable_index(t.text))
          return scalar(RationalFunction(Polynomial::variable(*var)));
        if (t.text.size() > 1 && t.text[0] == 'd')
          if (auto idx = chart.coordinate_index(std::string_view(t.text).substr(1)))
            return GradedTensor::basis_form(scope_.chart, *idx);
        fail(ParseError::Kind::unknown_symbol, t, "unknown symbol '" + t.text + "'");
      }
      case Tok::end: fail(ParseError::Kind::syntax, t, "unexpected end of expression");
      default: fail(ParseError::Kind::syntax, t, "unexpected '" + t.text + "'");
    }
  }

  const Scope& scope_;
  std::size_t line_;
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

inline GradedTensor parse_expression(const Scope& scope, std::string_view text) {
  return ExpressionParser(scope, text).parse();
}

/// Parsed spec file: description comments, chart, bindings and named tensors
/// in file order.
struct ManifoldSpec {
  std::vector<std::string> description;
  Scope scope;
  std::vector<std::pair<std::string, GradedTensor>> tensors;

  const ChartPtr& chart() const noexcept { return scope.chart; }

  const GradedTensor* find(std::string_view name) const {
    for (const auto& [n, t] : tensors)
      if (n == name) return &t;
    return nullptr;
  }

  /// (π, φ, θ); absent entries are zero.
  BracketContext context() const {
    auto get = [&](const char* name, TensorKind kind, std::size_t degree) {
      const GradedTensor* t = find(name);
      return t ? *t : GradedTensor(chart(), kind, degree);
    };
    return BracketContext(get("pi", TensorKind::multivector, 2), get("phi", TensorKind::form, 3),
                          get("theta", TensorKind::form, 1));
  }
};

namespace parse_detail {

struct Line {
  std::size_t number;
  std::string_view text;  // comment stripped
  std::size_t indent;     // columns before `text` in the original line
};

inline std::string_view trim(std::string_view s, std::size_t* skipped = nullptr) {
  std::size_t a = 0;
  while (a < s.size() && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  std::size_t b = s.size();
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  if (skipped) *skipped = a;
  return s.substr(a, b - a);
}

/// Identifier words of `s`, separated by spaces or commas, with columns.
inline std::vector<std::pair<std::string, std::size_t>> words(std::string_view s, std::size_t line, std::size_t col0) {
  std::vector<std::pair<std::string, std::size_t>> out;
  std::size_t i = 0;
  while (i < s.size()) {
    if (std::isspace(static_cast<unsigned char>(s[i])) || s[i] == ',') {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j])) && s[j] != ',') ++j;
    std::string w(s.substr(i, j - i));
    if (!Chart::is_identifier(w)) throw ParseError(ParseError::Kind::syntax, line, col0 + i, "'" + w + "' is not a name");
    out.emplace_back(std::move(w), col0 + i);
    i = j;
  }
  return out;
}

}  // namespace parse_detail

/// Expected kind and degree of the reserved tensor names.
inline std::optional<std::pair<TensorKind, std::size_t>> reserved_shape(std::string_view name) {
  if (name == "pi") return std::pair{TensorKind::multivector, std::size_t{2}};
  if (name == "phi") return std::pair{TensorKind::form, std::size_t{3}};
  if (name == "theta") return std::pair{TensorKind::form, std::size_t{1}};
  return std::nullopt;
}

inline ManifoldSpec parse_manifold_spec(std::string_view text) {
  using parse_detail::Line;
  using K = ParseError::Kind;
  ManifoldSpec spec;
  std::vector<Line> lines;
  bool leading = true;
  std::size_t number = 0;
  for (std::size_t start = 0; start <= text.size();) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(start, end - start);
    ++number;
    start = end + 1;
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    std::size_t hash = raw.find('#');
    if (leading && hash != std::string_view::npos && parse_detail::trim(raw.substr(0, hash)).empty()) {
      std::string_view comment = raw.substr(hash + 1);
      if (!comment.empty() && comment[0] == ' ') comment.remove_prefix(1);
      spec.description.emplace_back(comment);
      continue;
    }
    std::string_view body = hash == std::string_view::npos ? raw : raw.substr(0, hash);
    std::size_t indent = 0;
    body = parse_detail::trim(body, &indent);
    if (body.empty()) continue;
    leading = false;
    lines.push_back({number, body, indent});
    if (end == text.size()) break;
  }

  // Directive name and the column where its payload starts.
  auto split = [](const Line& l) -> std::pair<std::string_view, std::size_t> {
    std::size_t colon = l.text.find(':');
    if (l.text.substr(0, 4) == "let " || l.text.substr(0, 4) == "let\t") return {"let", 3};
    if (colon == std::string_view::npos) return {{}, 0};
    return {parse_detail::trim(l.text.substr(0, colon)), colon + 1};
  };

  // Pass 1: chart declarations.
  const Line* coords_line = nullptr;
  std::vector<std::pair<std::string, std::size_t>> coords;
  struct AuxDecl {
    const Line* line;
    std::string name;
    std::size_t column;
    std::vector<std::pair<std::string_view, std::size_t>> entries;  // "dE/dx = expr" with column
  };
  std::vector<AuxDecl> aux_decls;
  for (const Line& l : lines) {
    auto [key, offset] = split(l);
    const std::size_t col0 = l.indent + 1;
    if (key == "coords") {
      if (coords_line) throw ParseError(K::syntax, l.number, col0, "duplicate coords declaration");
      coords_line = &l;
      coords = parse_detail::words(l.text.substr(offset), l.number, col0 + offset);
      if (coords.empty()) throw ParseError(K::syntax, l.number, col0, "coords declaration lists no coordinates");
    } else if (key == "aux") {
      std::string_view rest = l.text.substr(offset);
      std::size_t semi = rest.find(';');
      auto names = parse_detail::words(rest.substr(0, semi), l.number, col0 + offset);
      if (names.size() != 1) throw ParseError(K::syntax, l.number, col0, "aux declares exactly one symbol per line");
      AuxDecl decl{&l, names[0].first, names[0].second, {}};
      while (semi != std::string_view::npos) {
        std::size_t from = semi + 1;
        semi = rest.find(';', from);
        std::string_view entry = rest.substr(from, semi == std::string_view::npos ? std::string_view::npos : semi - from);
        std::size_t skipped = 0;
        entry = parse_detail::trim(entry, &skipped);
        if (!entry.empty()) decl.entries.emplace_back(entry, col0 + offset + from + skipped);
      }
      aux_decls.push_back(std::move(decl));
    }
  }
  if (!coords_line) throw ParseError(K::syntax, lines.empty() ? 1 : lines.front().number, 1, "missing coords declaration");

  std::vector<std::string> coord_names;
  for (const auto& c : coords) coord_names.push_back(c.first);
  std::vector<AuxSymbol> bare;
  for (const auto& a : aux_decls) bare.push_back({a.name, {}});
  ChartPtr names_only;
  try {
    names_only = Chart::create(coord_names, bare);
  } catch (const InvalidChart& e) {
    throw ParseError(K::syntax, coords_line->number, coords_line->indent + 1, e.what());
  }

  // Derivative tables are parsed against the chart of names; the variable
  // numbering is identical in the final chart.
  std::vector<AuxSymbol> aux = bare;
  for (std::size_t a = 0; a < aux_decls.size(); ++a) {
    const AuxDecl& decl = aux_decls[a];
    for (const auto& [entry, column] : decl.entries) {
      std::size_t eq = entry.find('=');
      std::string_view lhs = parse_detail::trim(entry.substr(0, eq));
      const std::string prefix = "d" + decl.name + "/d";
      if (eq == std::string_view::npos || lhs.substr(0, prefix.size()) != prefix)
        throw ParseError(K::non_closed_aux_table, decl.line->number, column,
                         "expected 'd" + decl.name + "/d<coordinate> = <expression>'");
      auto coord = names_only->coordinate_index(lhs.substr(prefix.size()));
      if (!coord) throw ParseError(K::non_closed_aux_table, decl.line->number, column, "derivative with respect to a non-coordinate");
      std::size_t skipped = 0;
      std::string_view rhs = parse_detail::trim(entry.substr(eq + 1), &skipped);
      Scope scope{names_only, {}};
      GradedTensor value(names_only, TensorKind::form, 0);
      try {
        value = ExpressionParser(scope, rhs, decl.line->number, column + eq + 1 + skipped).parse();
      } catch (const ParseError& e) {
        throw ParseError(K::non_closed_aux_table, e.line(), e.column(), e.what());
      }
      if (value.degree() != 0)
        throw ParseError(K::non_closed_aux_table, decl.line->number, column, "derivative table entries must be scalars");
      if (!aux[a].derivatives.emplace(*coord, value.component(IndexSet{})).second)
        throw ParseError(K::non_closed_aux_table, decl.line->number, column, "duplicate derivative table entry");
    }
  }
  spec.scope.chart = Chart::create(coord_names, aux);

  // Pass 2: bindings and named tensors, in order.
  for (const Line& l : lines) {
    auto [key, offset] = split(l);
    const std::size_t col0 = l.indent + 1;
    if (key == "coords" || key == "aux") continue;
    if (key.empty()) throw ParseError(K::syntax, l.number, col0, "expected 'name: expression' or 'let name = expression'");
    if (key == "let") {
      std::string_view rest = l.text.substr(offset);
      std::size_t eq = rest.find('=');
      if (eq == std::string_view::npos) throw ParseError(K::syntax, l.number, col0, "expected 'let name = expression'");
      std::size_t skipped = 0;
      std::string name(parse_detail::trim(rest.substr(0, eq), &skipped));
      if (!Chart::is_identifier(name)) throw ParseError(K::syntax, l.number, col0 + offset + skipped, "bad binding name");
      if (spec.scope.chart->variable_index(name))
        throw ParseError(K::syntax, l.number, col0 + offset + skipped, "'" + name + "' is already a chart variable");
      std::size_t lead = 0;
      std::string_view body = parse_detail::trim(rest.substr(eq + 1), &lead);
      spec.scope.bindings.insert_or_assign(
          name, ExpressionParser(spec.scope, body, l.number, col0 + offset + eq + 1 + lead).parse());
      continue;
    }
    std::string name(key);
    if (!Chart::is_identifier(name)) throw ParseError(K::syntax, l.number, col0, "bad tensor name");
    if (spec.find(name)) throw ParseError(K::syntax, l.number, col0, "duplicate definition of '" + name + "'");
    std::size_t lead = 0;
    std::string_view body = parse_detail::trim(l.text.substr(offset), &lead);
    const std::size_t body_col = col0 + offset + lead;
    GradedTensor value = ExpressionParser(spec.scope, body, l.number, body_col).parse();
    if (auto shape = reserved_shape(name)) {
      if (value.is_zero()) {
        value = GradedTensor(spec.scope.chart, shape->first, shape->second);
      } else if (value.kind() != shape->first || value.degree() != shape->second) {
        throw ParseError(K::degree, l.number, body_col,
                         name + " must be a " + kind_name(shape->first) + " of degree " + std::to_string(shape->second));
      }
    }
    spec.tensors.emplace_back(std::move(name), std::move(value));
  }
  return spec;
}

/// Canonical text of a spec: description, chart, then each named tensor in
/// printed form (bindings are inlined).
inline std::string print_manifold_spec(const ManifoldSpec& spec) {
  const Chart& chart = *spec.chart();
  std::string out;
  for (const auto& d : spec.description) out += d.empty() ? "#\n" : "# " + d + "\n";
  out += "coords:";
  for (const auto& c : chart.coordinates()) out += " " + c;
  out += "\n";
  for (const auto& a : chart.aux_symbols()) {
    out += "aux: " + a.name;
    for (const auto& [coord, value] : a.derivatives) {
      if (value.is_zero()) continue;
      out += " ; d" + a.name + "/d" + chart.coordinates()[coord] + " = " + to_string(value, chart);
    }
    out += "\n";
  }
  for (const auto& [name, t] : spec.tensors) out += name + ": " + to_string(t) + "\n";
  return out;
}

}  // namespace atp
