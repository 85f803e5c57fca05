#pragma once

// Shared fixtures for the test suites: charts, seeded random generators and
// independent reference implementations used as oracles.

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <vector>

#include "atp/atp.hpp"

namespace testing_support {

using namespace atp;

inline ChartPtr euclidean(std::size_t m) {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= m; ++i) names.push_back("x" + std::to_string(i));
  return Chart::create(names);
}

/// ℝ⁵ with E = e^{x5}.
inline ChartPtr euclidean5_with_exp() {
  auto names = euclidean(5)->coordinates();
  return Chart::create(names, {AuxSymbol{"E", {{4, RationalFunction(Polynomial::variable(5))}}}});
}

inline Scalar x(const ChartPtr& chart, std::size_t i) { return Scalar::variable(chart, "x" + std::to_string(i)); }
inline Scalar constant(const ChartPtr& chart, long c) { return Scalar::constant(chart, c); }

class Random {
 public:
  explicit Random(unsigned seed) : gen_(seed) {}

  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(gen_); }
  bool coin() { return integer(0, 1) == 1; }

  /// Polynomial in the chart's variables, total degree ≤ max_degree, small
  /// integer coefficients.
  Polynomial polynomial(const Chart& chart, unsigned max_degree = 2, std::size_t max_terms = 3,
                        bool with_aux = false) {
    const std::size_t nvars = with_aux ? chart.variable_count() : chart.dimension();
    std::vector<Term> terms;
    std::size_t n = static_cast<std::size_t>(integer(1, static_cast<long>(max_terms)));
    for (std::size_t t = 0; t < n; ++t) {
      Monomial mono;
      unsigned deg = static_cast<unsigned>(integer(0, max_degree));
      for (unsigned k = 0; k < deg; ++k) mono = mono * Monomial::variable(static_cast<std::size_t>(integer(0, static_cast<long>(nvars) - 1)));
      long c = 0;
      while (c == 0) c = integer(-3, 3);
      terms.push_back({mono, Rational(c)});
    }
    return Polynomial::from_terms(std::move(terms));
  }

  Scalar scalar(const ChartPtr& chart, unsigned max_degree = 2, bool with_aux = false) {
    return Scalar(chart, RationalFunction(polynomial(*chart, max_degree, 3, with_aux)));
  }

  /// Quotient of random polynomials with a denominator that cannot vanish
  /// identically (constant term 1 plus squares).
  Scalar rational_scalar(const ChartPtr& chart, bool with_aux = false) {
    Polynomial num = polynomial(*chart, 2, 3, with_aux);
    std::size_t v = static_cast<std::size_t>(integer(0, static_cast<long>(chart->dimension()) - 1));
    Polynomial den = Polynomial(1) + Polynomial::variable(v, 2);
    return Scalar(chart, RationalFunction::fraction(num, den));
  }

  GradedTensor tensor(const ChartPtr& chart, TensorKind kind, std::size_t degree, unsigned max_degree = 2,
                      std::size_t max_components = 3, bool rational = false) {
    GradedTensor t(chart, kind, degree);
    const std::size_t m = chart->dimension();
    if (degree > m) return t;
    std::size_t n = static_cast<std::size_t>(integer(1, static_cast<long>(max_components)));
    for (std::size_t c = 0; c < n; ++c) {
      std::vector<std::size_t> idx(m);
      std::iota(idx.begin(), idx.end(), 0);
      std::shuffle(idx.begin(), idx.end(), gen_);
      idx.resize(degree);
      std::uint32_t bits = 0;
      for (std::size_t i : idx) bits |= std::uint32_t{1} << i;
      Scalar coeff = rational ? rational_scalar(chart) : scalar(chart, max_degree);
      t.add_to(IndexSet(bits), coeff.value());
    }
    return t;
  }

  /// u·df with random polynomial u, f (a Pfaffian form).
  GradedTensor pfaffian(const ChartPtr& chart) {
    return scalar(chart, 1) * differential_of(scalar(chart, 2));
  }

 private:
  std::mt19937 gen_;
};

/// Reference multiplication of polynomials as exponent-vector maps.
inline Polynomial naive_multiply(const Polynomial& a, const Polynomial& b) {
  std::map<std::vector<unsigned>, Rational> acc;
  for (const Term& s : a.terms())
    for (const Term& t : b.terms()) {
      std::vector<unsigned> e(max_variables);
      for (std::size_t v = 0; v < max_variables; ++v) e[v] = s.monomial[v] + t.monomial[v];
      acc[e] += s.coeff * t.coeff;
    }
  std::vector<Term> terms;
  for (const auto& [e, c] : acc) {
    if (c == 0) continue;
    Monomial mono;
    for (std::size_t v = 0; v < max_variables; ++v)
      if (e[v]) mono.set(v, e[v]);
    terms.push_back({mono, c});
  }
  return Polynomial::from_terms(std::move(terms));
}

/// Determinant by permutation expansion (small sizes only).
inline RationalFunction determinant(const std::vector<std::vector<RationalFunction>>& a) {
  const std::size_t n = a.size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  RationalFunction total;
  do {
    std::size_t inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    RationalFunction prod(1);
    for (std::size_t i = 0; i < n && !prod.is_zero(); ++i) prod *= a[i][perm[i]];
    total += (inversions & 1u) ? -prod : prod;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

/// Σ_I t_I · det[e_{I_i}(args_j)]: the determinant evaluation convention,
/// written out independently of insert_first.
inline RationalFunction determinant_evaluate(const GradedTensor& t, const std::vector<GradedTensor>& args) {
  RationalFunction total;
  for (const auto& [key, c] : t.components()) {
    auto e = key.elements();
    std::vector<std::vector<RationalFunction>> m(e.size(), std::vector<RationalFunction>(args.size()));
    for (std::size_t i = 0; i < e.size(); ++i)
      for (std::size_t j = 0; j < args.size(); ++j) m[i][j] = args[j].component(IndexSet::single(e[i]));
    total += c * determinant(m);
  }
  return total;
}

/// π#(ω) by the wedge route: Σ_J ω_J · π#(dx_{J1}) ∧ … ∧ π#(dx_{Jk}).
inline GradedTensor anchor_extend_by_wedges(const GradedTensor& pi, const GradedTensor& omega) {
  const auto& chart = pi.chart();
  GradedTensor r(chart, TensorKind::multivector, omega.degree());
  for (const auto& [key, c] : omega.components()) {
    GradedTensor w = GradedTensor::scalar(chart, c, TensorKind::multivector);
    for (std::size_t i : key.elements()) w = wedge(w, anchor(pi, GradedTensor::basis_form(chart, i)));
    r += w;
  }
  return r;
}

/// Every increasing index tuple of size k below m.
inline std::vector<IndexSet> subsets(std::size_t m, std::size_t k) {
  std::vector<IndexSet> out;
  for (std::uint32_t bits = 0; bits < (std::uint32_t{1} << m); ++bits)
    if (static_cast<std::size_t>(std::popcount(bits)) == k) out.emplace_back(bits);
  std::sort(out.begin(), out.end());
  return out;
}

/// Monomial multivector fields x^a ∂_I with |a| ≤ d and |I| = level.
inline std::vector<GradedTensor> monomial_fields(const ChartPtr& chart, std::size_t level, std::size_t d,
                                                 TensorKind kind = TensorKind::multivector) {
  std::vector<GradedTensor> out;
  for (const Monomial& mono : atp::detail::monomials_up_to(chart->dimension(), d))
    for (IndexSet key : subsets(chart->dimension(), level)) {
      GradedTensor t(chart, kind, level);
      t.add_to(key, RationalFunction(Polynomial::monomial(mono, Rational(1))));
      out.push_back(std::move(t));
    }
  return out;
}

}  // namespace testing_support
