#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "atp/errors.hpp"
#include "atp/monomial.hpp"
#include "atp/rational.hpp"

namespace atp {

struct Term {
  Monomial monomial;
  Rational coeff;
};

/// Sparse multivariate polynomial with rational coefficients. Terms are kept
/// strictly descending in graded lexicographic order with no zero
/// coefficients, so structural equality is mathematical equality.
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(const Rational& c) {  // NOLINT(google-explicit-constructor)
    if (c != 0) terms_.push_back({Monomial{}, c});
  }
  Polynomial(long c) : Polynomial(Rational(c)) {}  // NOLINT(google-explicit-constructor)

  static Polynomial variable(std::size_t var, unsigned power = 1) {
    return monomial(Monomial::variable(var, power), Rational(1));
  }

  static Polynomial monomial(const Monomial& m, const Rational& c) {
    Polynomial p;
    if (c != 0) p.terms_.push_back({m, c});
    return p;
  }

  /// Builds from arbitrary terms (any order, duplicates allowed).
  static Polynomial from_terms(std::vector<Term> terms) {
    Polynomial p;
    p.terms_ = std::move(terms);
    p.canonicalize();
    return p;
  }

  const std::vector<Term>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept { return terms_.empty() || (terms_.size() == 1 && terms_[0].monomial.is_one()); }
  bool is_one() const noexcept { return terms_.size() == 1 && terms_[0].monomial.is_one() && terms_[0].coeff == 1; }
  bool is_monomial() const noexcept { return terms_.size() == 1; }

  Rational constant_value() const {
    if (terms_.empty()) return Rational(0);
    const Term& t = terms_.back();
    return t.monomial.is_one() ? t.coeff : Rational(0);
  }

  const Term& leading() const { return terms_.front(); }
  const Rational& leading_coeff() const { return terms_.front().coeff; }

  unsigned total_degree() const noexcept { return terms_.empty() ? 0 : terms_.front().monomial.degree(); }

  unsigned degree_in(std::size_t var) const noexcept {
    unsigned d = 0;
    for (const auto& t : terms_) d = std::max(d, t.monomial[var]);
    return d;
  }

  bool has_variable(std::size_t var) const noexcept {
    return std::any_of(terms_.begin(), terms_.end(), [&](const Term& t) { return t.monomial[var] != 0; });
  }

  /// Index one past the highest variable that occurs.
  std::size_t variable_span() const noexcept {
    std::size_t span = 0;
    for (const auto& t : terms_)
      for (std::size_t v = span; v < max_variables; ++v)
        if (t.monomial[v] != 0) span = v + 1;
    return span;
  }

  /// Coefficients with respect to `var`: result[k] multiplies var^k and is
  /// free of `var`.
  std::vector<Polynomial> coefficients_in(std::size_t var) const {
    std::vector<std::vector<Term>> buckets(degree_in(var) + 1);
    for (const auto& t : terms_) {
      Monomial m = t.monomial;
      unsigned e = m[var];
      m.set(var, 0);
      buckets[e].push_back({m, t.coeff});
    }
    std::vector<Polynomial> out;
    out.reserve(buckets.size());
    for (auto& b : buckets) out.push_back(from_terms(std::move(b)));
    return out;
  }

  Polynomial derivative(std::size_t var) const {
    std::vector<Term> out;
    for (const auto& t : terms_) {
      unsigned e = t.monomial[var];
      if (e == 0) continue;
      Monomial m = t.monomial;
      m.set(var, e - 1);
      out.push_back({m, t.coeff * e});
    }
    // Differentiation keeps the relative grlex order within each degree only
    // up to ties, so re-sort.
    return from_terms(std::move(out));
  }

  /// Renames variables: variable i becomes `mapping[i]`.
  Polynomial remap(const std::vector<std::size_t>& mapping) const {
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) {
      Monomial m;
      for (std::size_t v = 0; v < mapping.size(); ++v)
        if (t.monomial[v] != 0) m.set(mapping[v], t.monomial[v]);
      out.push_back({m, t.coeff});
    }
    return from_terms(std::move(out));
  }

  Polynomial operator-() const {
    Polynomial r = *this;
    for (auto& t : r.terms_) t.coeff = -t.coeff;
    return r;
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) { return merge(a, b, false); }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return merge(a, b, true); }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (a.is_constant()) return b.scaled(a.constant_value());
    if (b.is_constant()) return a.scaled(b.constant_value());
    if (a.is_monomial()) return b.times_term(a.terms_[0]);
    if (b.is_monomial()) return a.times_term(b.terms_[0]);
    std::vector<Term> out;
    out.reserve(a.size() * b.size());
    for (const auto& s : a.terms_)
      for (const auto& t : b.terms_) out.push_back({s.monomial * t.monomial, s.coeff * t.coeff});
    return from_terms(std::move(out));
  }

  Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
  Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  Polynomial scaled(const Rational& c) const {
    if (c == 0) return {};
    Polynomial r = *this;
    for (auto& t : r.terms_) t.coeff *= c;
    return r;
  }

  /// Multiplies by a single term; order is preserved because grlex is a
  /// monomial order.
  Polynomial times_term(const Term& s) const {
    Polynomial r;
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({t.monomial * s.monomial, t.coeff * s.coeff});
    return r;
  }

  /// Divides by the leading coefficient.
  Polynomial monic() const {
    if (is_zero() || leading_coeff() == 1) return *this;
    return scaled(Rational(1) / leading_coeff());
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
      if (!(a.terms_[i].monomial == b.terms_[i].monomial) || a.terms_[i].coeff != b.terms_[i].coeff) return false;
    return true;
  }

 private:
  static Polynomial merge(const Polynomial& a, const Polynomial& b, bool subtract) {
    Polynomial r;
    r.terms_.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.terms_.size() || j < b.terms_.size()) {
      if (j == b.terms_.size() || (i < a.terms_.size() && a.terms_[i].monomial > b.terms_[j].monomial)) {
        r.terms_.push_back(a.terms_[i++]);
      } else if (i == a.terms_.size() || b.terms_[j].monomial > a.terms_[i].monomial) {
        r.terms_.push_back({b.terms_[j].monomial, subtract ? Rational(-b.terms_[j].coeff) : b.terms_[j].coeff});
        ++j;
      } else {
        Rational c = subtract ? Rational(a.terms_[i].coeff - b.terms_[j].coeff)
                              : Rational(a.terms_[i].coeff + b.terms_[j].coeff);
        if (c != 0) r.terms_.push_back({a.terms_[i].monomial, std::move(c)});
        ++i;
        ++j;
      }
    }
    return r;
  }

  void canonicalize() {
    std::sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) { return a.monomial > b.monomial; });
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
      if (!out.empty() && out.back().monomial == t.monomial) {
        out.back().coeff += t.coeff;
      } else {
        if (!out.empty() && out.back().coeff == 0) out.pop_back();
        out.push_back(std::move(t));
      }
    }
    if (!out.empty() && out.back().coeff == 0) out.pop_back();
    terms_ = std::move(out);
  }

  std::vector<Term> terms_;
};

inline Polynomial pow(const Polynomial& base, unsigned n) {
  Polynomial result(1);
  Polynomial b = base;
  while (n) {
    if (n & 1u) result *= b;
    n >>= 1u;
    if (n) b *= b;
  }
  return result;
}

/// Division with remainder by a single divisor under grlex.
inline std::pair<Polynomial, Polynomial> divide(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw DivisionByZero("polynomial division by zero");
  const Term& lead = b.leading();
  Rational inv = Rational(1) / lead.coeff;
  std::vector<Term> quotient;
  std::vector<Term> remainder;
  Polynomial r = a;
  while (!r.is_zero()) {
    const Term& t = r.leading();
    if (lead.monomial.divides(t.monomial)) {
      Term q{t.monomial / lead.monomial, t.coeff * inv};
      r -= b.times_term(q);
      quotient.push_back(std::move(q));
    } else {
      remainder.push_back(t);
      r -= Polynomial::monomial(t.monomial, t.coeff);
    }
  }
  return {Polynomial::from_terms(std::move(quotient)), Polynomial::from_terms(std::move(remainder))};
}

/// Quotient a/b where b is known to divide a.
inline Polynomial exact_divide(const Polynomial& a, const Polynomial& b) {
  if (b.is_constant()) {
    if (b.is_zero()) throw DivisionByZero("polynomial division by zero");
    return a.scaled(Rational(1) / b.constant_value());
  }
  auto [q, r] = divide(a, b);
  if (!r.is_zero()) throw Error("internal: inexact polynomial division");
  return q;
}

namespace detail {

inline Polynomial gcd_impl(const Polynomial& a, const Polynomial& b);
inline Polynomial remainder_gcd(const Polynomial& a, const Polynomial& b);

/// Gcd of the coefficients of `p` viewed as a polynomial in `var`.
inline Polynomial content_in(const Polynomial& p, std::size_t var) {
  auto coeffs = p.coefficients_in(var);
  Polynomial g;
  for (const auto& c : coeffs) {
    if (c.is_zero()) continue;
    g = g.is_zero() ? c.monic() : gcd_impl(g, c);
    if (g.is_constant()) return Polynomial(1);
  }
  return g;
}

/// `p` scaled to integer coefficients with gcd 1, keeping remainder
/// sequences from growing.
inline Polynomial integer_primitive(const Polynomial& p) {
  if (p.is_zero()) return p;
  Integer den = 1, num = 0;
  for (const auto& t : p.terms()) {
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), t.coeff.get_den_mpz_t());
    mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), t.coeff.get_num_mpz_t());
  }
  return p.scaled(Rational(den) / Rational(num));
}

inline Polynomial primitive_part_in(const Polynomial& p, std::size_t var) {
  Polynomial c = content_in(p, var);
  return integer_primitive(c.is_constant() ? p : exact_divide(p, c));
}

inline Polynomial pseudo_remainder(const Polynomial& a, const Polynomial& b, std::size_t var) {
  unsigned n = b.degree_in(var);
  Polynomial lcb = b.coefficients_in(var).back();
  Polynomial r = a;
  while (!r.is_zero()) {
    unsigned dr = r.degree_in(var);
    if (dr < n) break;
    Polynomial lcr = r.coefficients_in(var).back();
    r = integer_primitive(lcb * r - lcr * Polynomial::variable(var, dr - n) * b);
  }
  return r;
}

inline Polynomial monomial_gcd(const Polynomial& mono, const Polynomial& p) {
  Monomial g = mono.leading().monomial;
  for (const auto& t : p.terms()) g = gcd(g, t.monomial);
  return Polynomial::monomial(g, Rational(1));
}

/// Univariate image of `p` in `var` with every other variable replaced by
/// point[v]; entry k is the coefficient of var^k.
inline std::vector<Rational> image_in(const Polynomial& p, std::size_t var, const std::vector<Rational>& point) {
  std::vector<Rational> out(p.degree_in(var) + 1);
  for (const auto& t : p.terms()) {
    Rational c = t.coeff;
    for (std::size_t v = 0; v < point.size(); ++v) {
      if (v == var) continue;
      for (unsigned e = 0; e < t.monomial[v]; ++e) c *= point[v];
    }
    out[t.monomial[var]] += c;
  }
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

inline std::size_t univariate_gcd_degree(std::vector<Rational> a, std::vector<Rational> b) {
  if (a.size() < b.size()) std::swap(a, b);
  while (!b.empty()) {
    while (a.size() >= b.size()) {
      Rational q = a.back() / b.back();
      std::size_t shift = a.size() - b.size();
      for (std::size_t k = 0; k < b.size(); ++k) a[k + shift] -= q * b[k];
      while (!a.empty() && a.back() == 0) a.pop_back();
      if (a.empty()) break;
    }
    std::swap(a, b);
  }
  return a.empty() ? 0 : a.size() - 1;
}

/// True when the images prove gcd(a, b) is constant. A common factor g has
/// an image of the same degree in `var` whenever the point keeps the leading
/// coefficient of a in `var` nonzero, and that image divides both images.
inline bool coprime_by_images(const Polynomial& a, const Polynomial& b) {
  const std::size_t span = std::max(a.variable_span(), b.variable_span());
  for (std::size_t var = 0; var < span; ++var) {
    if (!a.has_variable(var) || !b.has_variable(var)) continue;
    bool settled = false;
    for (long attempt = 0; attempt < 3 && !settled; ++attempt) {
      std::vector<Rational> point(span);
      for (std::size_t v = 0; v < span; ++v) point[v] = Rational(static_cast<long>(2 + 3 * v + 5 * attempt * (v + 1)));
      auto ia = image_in(a, var, point);
      if (ia.size() != a.degree_in(var) + 1) continue;
      if (univariate_gcd_degree(std::move(ia), image_in(b, var, point)) > 0) return false;
      settled = true;
    }
    if (!settled) return false;
  }
  return true;
}

inline Integer max_norm(const Polynomial& p) {
  Integer n = 0;
  for (const auto& t : p.terms()) n = std::max<Integer>(n, abs(t.coeff.get_num()));
  return n;
}

inline Polynomial substitute(const Polynomial& p, std::size_t var, const Integer& value) {
  std::vector<Term> out;
  out.reserve(p.size());
  for (const auto& t : p.terms()) {
    Integer power;
    mpz_pow_ui(power.get_mpz_t(), value.get_mpz_t(), t.monomial[var]);
    Monomial m = t.monomial;
    m.set(var, 0);
    out.push_back({m, t.coeff * Rational(power)});
  }
  return Polynomial::from_terms(std::move(out));
}

inline Integer integer_content(const Polynomial& p) {
  Integer g = 0;
  for (const auto& t : p.terms()) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coeff.get_num_mpz_t());
  return g;
}

/// Heuristic gcd over the integers: evaluate the top variable at a large
/// integer, recurse, rebuild by balanced base-ξ digits and accept only if the
/// candidate divides both inputs. Inputs have integer coefficients; empty on
/// failure.
inline std::optional<Polynomial> heuristic_gcd(Polynomial a, Polynomial b) {
  Integer ca = integer_content(a), cb = integer_content(b), c;
  mpz_gcd(c.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
  if (a.is_constant() || b.is_constant()) return Polynomial(Rational(c));
  a = a.scaled(Rational(1) / Rational(ca));
  b = b.scaled(Rational(1) / Rational(cb));
  const std::size_t var = std::max(a.variable_span(), b.variable_span()) - 1;
  Integer xi = 2 * std::min(max_norm(a), max_norm(b)) + 29;
  for (int attempt = 0; attempt < 6; ++attempt) {
    auto image = heuristic_gcd(substitute(a, var, xi), substitute(b, var, xi));
    if (image && !image->is_zero()) {
      std::vector<Term> rebuilt;
      Polynomial rest = *image;
      for (unsigned k = 0; !rest.is_zero(); ++k) {
        std::vector<Term> digit;
        for (const auto& t : rest.terms()) {
          Integer r;
          mpz_fdiv_r(r.get_mpz_t(), t.coeff.get_num_mpz_t(), xi.get_mpz_t());
          if (2 * r > xi) r -= xi;
          if (r != 0) digit.push_back({t.monomial, Rational(r)});
        }
        Polynomial d = Polynomial::from_terms(digit);
        for (const auto& t : digit) rebuilt.push_back({t.monomial * Monomial::variable(var, k), t.coeff});
        rest = (rest - d).scaled(Rational(1) / Rational(xi));
      }
      Polynomial g = Polynomial::from_terms(std::move(rebuilt));
      if (!g.is_zero()) {
        g = integer_primitive(g);
        if (divide(a, g).second.is_zero() && divide(b, g).second.is_zero()) return g.scaled(Rational(c));
      }
    }
    Integer root = sqrt(sqrt(xi));
    xi = xi * 73794 * root / 27011;
  }
  return std::nullopt;
}

/// Gcd of two polynomials that are primitive in `var` and both involve it.
inline Polynomial primitive_gcd(Polynomial a, Polynomial b, std::size_t var) {
  if (a.degree_in(var) < b.degree_in(var)) std::swap(a, b);
  a = integer_primitive(a);
  b = integer_primitive(b);
  while (true) {
    Polynomial r = pseudo_remainder(a, b, var);
    if (r.is_zero()) return b;
    if (r.degree_in(var) == 0) return Polynomial(1);
    a = std::move(b);
    b = primitive_part_in(r, var);
  }
}

inline Polynomial gcd_impl(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.is_constant() || b.is_constant()) return Polynomial(1);
  if (a.is_monomial()) return monomial_gcd(a, b);
  if (b.is_monomial()) return monomial_gcd(b, a);
  if (a == b) return a.monic();
  if (coprime_by_images(a, b)) return Polynomial(1);
  if (auto g = heuristic_gcd(integer_primitive(a), integer_primitive(b))) return g->monic();
  return remainder_gcd(a, b);
}

/// Recursive primitive remainder sequences; the slow but unconditional path.
inline Polynomial remainder_gcd(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.is_constant() || b.is_constant()) return Polynomial(1);
  std::size_t span = std::max(a.variable_span(), b.variable_span());
  for (std::size_t v = 0; v < span; ++v) {
    bool in_a = a.has_variable(v);
    bool in_b = b.has_variable(v);
    if (!in_a && !in_b) continue;
    // A common factor involving v must divide both, so if v occurs in only
    // one argument the gcd divides that argument's content in v.
    if (!in_b) return gcd_impl(content_in(a, v), b);
    if (!in_a) return gcd_impl(a, content_in(b, v));
    Polynomial ca = content_in(a, v);
    Polynomial cb = content_in(b, v);
    Polynomial content = gcd_impl(ca, cb);
    Polynomial pa = ca.is_constant() ? a : exact_divide(a, ca);
    Polynomial pb = cb.is_constant() ? b : exact_divide(b, cb);
    Polynomial g = primitive_gcd(std::move(pa), std::move(pb), v);
    g = primitive_part_in(g, v);
    return (content * g).monic();
  }
  return Polynomial(1);
}

}  // namespace detail

/// Monic greatest common divisor (leading grlex coefficient 1); gcd(0, 0) = 0.
inline Polynomial gcd(const Polynomial& a, const Polynomial& b) { return detail::gcd_impl(a, b).monic(); }

}  // namespace atp
