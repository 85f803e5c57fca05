#pragma once

#include <algorithm>
#include <bit>
#include <span>
#include <vector>

#include "atp/linalg.hpp"
#include "atp/structures.hpp"

namespace atp {

namespace detail {

inline void require_multivector(const GradedTensor& v) {
  if (v.degree() != 0 && v.kind() != TensorKind::multivector)
    throw KindMismatch("the coboundary operator acts on multivector fields");
}

}  // namespace detail

/// The coboundary operator of a verified structure, with the anchors π#(dx_k)
/// and the brackets [dx_a, dx_b]_{φ,θ} of coordinate covectors cached.
class Coboundary {
 public:
  explicit Coboundary(const AtpStructure& s) : chart_(s.chart()) {
    s.require_verified("differential");
    const std::size_t m = chart_->dimension();
    for (std::size_t k = 0; k < m; ++k) anchors_.push_back(anchor(s.context(), GradedTensor::basis_form(chart_, k)));
    brackets_.assign(m * m, GradedTensor(chart_, TensorKind::form, 1));
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = a + 1; b < m; ++b) {
        GradedTensor br = twisted_bracket(s.context(), GradedTensor::basis_form(chart_, a),
                                          GradedTensor::basis_form(chart_, b));
        brackets_[b * m + a] = -br;
        brackets_[a * m + b] = std::move(br);
      }
  }

  const ChartPtr& chart() const noexcept { return chart_; }
  const GradedTensor& anchor_of(std::size_t k) const { return anchors_.at(k); }
  const GradedTensor& bracket_of(std::size_t a, std::size_t b) const {
    return brackets_.at(a * chart_->dimension() + b);
  }

  /// Components of ∂v on every increasing tuple (dx_{i0}, …, dx_{in}):
  ///   Σ_i (−1)^i π#(dx_{ii})(v(…î…)) + Σ_{i<j} (−1)^{i+j} v([dx_{ii}, dx_{ij}]_{φ,θ}, …î…ĵ…).
  GradedTensor operator()(const GradedTensor& v) const {
    require_same_chart(v.chart(), chart_);
    detail::require_multivector(v);
    const std::size_t m = chart_->dimension();
    const std::size_t n = v.degree();
    GradedTensor r(chart_, TensorKind::multivector, n + 1);
    if (v.is_zero() || n + 1 > m) return r;
    for (std::uint32_t bits = 0; bits < (std::uint32_t{1} << m); ++bits) {
      IndexSet key(bits);
      if (key.size() != n + 1) continue;
      auto e = key.elements();
      RationalFunction total;
      for (std::size_t i = 0; i <= n; ++i) {
        const RationalFunction c = v.component(key.without(e[i]));
        if (c.is_zero() || c.is_constant()) continue;
        RationalFunction t = apply_vector(anchors_[e[i]], c);
        total += (i & 1u) ? -t : t;
      }
      for (std::size_t i = 0; i <= n; ++i) {
        for (std::size_t j = i + 1; j <= n; ++j) {
          IndexSet rest = key.without(e[i]).without(e[j]);
          for (const auto& [kk, bk] : bracket_of(e[i], e[j]).components()) {
            std::size_t k = static_cast<std::size_t>(std::countr_zero(kk.bits()));
            if (rest.contains(k)) continue;
            const RationalFunction c = v.component(rest.with(k));
            if (c.is_zero()) continue;
            RationalFunction t = bk * c;
            total += ((rest.rank_of(k) + i + j) & 1u) ? -t : t;
          }
        }
      }
      r.add_to(key, total);
    }
    return r;
  }

 private:
  ChartPtr chart_;
  std::vector<GradedTensor> anchors_;
  std::vector<GradedTensor> brackets_;
};

inline GradedTensor differential(const AtpStructure& s, const GradedTensor& v) { return Coboundary(s)(v); }

/// ∂(∂v); zero for every verified structure.
inline GradedTensor complex_check(const AtpStructure& s, const GradedTensor& v) {
  Coboundary d(s);
  return d(d(v));
}

/// ∂(π#(μ)) + π#(dμ); zero for every verified structure.
inline GradedTensor chain_map_defect(const AtpStructure& s, const GradedTensor& mu) {
  Coboundary d(s);
  return d(anchor_extend(s.context(), mu)) + anchor_extend(s.context(), exterior_derivative(mu));
}

/// ∂v evaluated on arbitrary 1-forms directly from the defining formula, with
/// the twisted bracket of the arguments themselves. Used to check that the
/// coordinate assembly in Coboundary is tensorial.
inline Scalar evaluate_differential(const AtpStructure& s, const GradedTensor& v, std::span<const GradedTensor> alphas) {
  s.require_verified("evaluate_differential");
  detail::require_multivector(v);
  const std::size_t n = v.degree();
  if (alphas.size() != n + 1)
    throw ArityError("expected " + std::to_string(n + 1) + " arguments, got " + std::to_string(alphas.size()));
  const ChartPtr& chart = s.chart();
  auto without = [&](std::initializer_list<std::size_t> skip) {
    std::vector<GradedTensor> out;
    for (std::size_t k = 0; k < alphas.size(); ++k)
      if (std::find(skip.begin(), skip.end(), k) == skip.end()) out.push_back(alphas[k]);
    return out;
  };
  Scalar total = Scalar::constant(chart, 0);
  for (std::size_t i = 0; i <= n; ++i) {
    auto rest = without({i});
    Scalar inner = evaluate_multivector(v, rest);
    Scalar t = apply_vector(anchor(s.context(), alphas[i]), inner);
    total = (i & 1u) ? total - t : total + t;
  }
  for (std::size_t i = 0; i <= n; ++i) {
    for (std::size_t j = i + 1; j <= n; ++j) {
      auto rest = without({i, j});
      rest.insert(rest.begin(), twisted_bracket(s.context(), alphas[i], alphas[j]));
      Scalar t = evaluate_multivector(v, rest);
      total = ((i + j) & 1u) ? total - t : total + t;
    }
  }
  return total;
}

inline Scalar evaluate_differential(const AtpStructure& s, const GradedTensor& v,
                                    std::initializer_list<GradedTensor> alphas) {
  return evaluate_differential(s, v, std::span<const GradedTensor>(alphas.begin(), alphas.size()));
}

/// Basis element c·x^a ∂_I of polynomial multivector fields. Ordered by
/// monomial (graded lex, ascending) and then by index tuple.
struct BasisKey {
  Monomial monomial;
  IndexSet indices;

  friend bool operator==(const BasisKey& a, const BasisKey& b) noexcept {
    return a.monomial == b.monomial && a.indices == b.indices;
  }
  friend bool operator<(const BasisKey& a, const BasisKey& b) noexcept {
    if (a.monomial != b.monomial) return a.monomial < b.monomial;
    return a.indices < b.indices;
  }
};

struct LevelReport {
  std::size_t level = 0;
  std::size_t domain_dim = 0;
  std::size_t rank = 0;
  std::size_t kernel_dim = 0;
  std::size_t image_dim = 0;
  std::size_t quotient_dim = 0;
  std::vector<GradedTensor> representatives;
};

struct CohomologyReport {
  std::size_t degree_bound = 0;
  std::size_t image_slack = 0;
  std::vector<LevelReport> levels;
};

namespace detail {

inline void require_polynomial_structure(const AtpStructure& s) {
  s.require_verified("truncated_cohomology");
  const Chart& chart = *s.chart();
  for (const GradedTensor* t : {&s.pi(), &s.phi(), &s.theta()}) {
    for (const auto& [key, c] : t->components()) {
      if (!c.is_polynomial() || chart.uses_aux(c.numerator()))
        throw NonPolynomialStructure("truncated cohomology needs polynomial coefficients in the coordinates");
    }
  }
}

/// Monomials in the first m variables of total degree ≤ d, ascending.
inline std::vector<Monomial> monomials_up_to(std::size_t m, std::size_t d) {
  std::vector<Monomial> out{Monomial{}};
  std::vector<Monomial> layer{Monomial{}};
  for (std::size_t deg = 1; deg <= d; ++deg) {
    std::vector<Monomial> next;
    for (const Monomial& mono : layer) {
      // Extend only at or after the last variable used, so each monomial appears once.
      std::size_t last = 0;
      for (std::size_t v = 0; v < m; ++v)
        if (mono[v]) last = v;
      for (std::size_t v = last; v < m; ++v) next.push_back(mono * Monomial::variable(v));
    }
    layer = std::move(next);
    out.insert(out.end(), layer.begin(), layer.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<BasisKey> multivector_basis(std::size_t m, std::size_t level, std::size_t d) {
  std::vector<BasisKey> out;
  if (level > m) return out;
  for (const Monomial& mono : monomials_up_to(m, d))
    for (std::uint32_t bits = 0; bits < (std::uint32_t{1} << m); ++bits)
      if (static_cast<std::size_t>(std::popcount(bits)) == level) out.push_back({mono, IndexSet(bits)});
  std::sort(out.begin(), out.end());
  return out;
}

inline GradedTensor basis_tensor(const ChartPtr& chart, const BasisKey& key) {
  GradedTensor t(chart, TensorKind::multivector, key.indices.size());
  t.add_to(key.indices, RationalFunction(Polynomial::monomial(key.monomial, Rational(1))));
  return t;
}

inline std::map<BasisKey, Rational> to_vector(const GradedTensor& t) {
  std::map<BasisKey, Rational> q;
  for (const auto& [key, c] : t.components()) {
    if (!c.is_polynomial()) throw NonPolynomialStructure("coboundary left the polynomial coefficients");
    for (const Term& term : c.numerator().terms()) q[{term.monomial, key}] += term.coeff;
  }
  return q;
}

inline GradedTensor to_tensor(const ChartPtr& chart, std::size_t level, const linalg::SparseVector<BasisKey>& v) {
  GradedTensor t(chart, TensorKind::multivector, level);
  for (const auto& [key, x] : v) t.add_to(key.indices, RationalFunction(Polynomial::monomial(key.monomial, Rational(x))));
  return t;
}

/// Sorts canonical forms of tensors into a reduced echelon basis.
inline std::vector<linalg::SparseVector<BasisKey>> reduced_basis(linalg::Echelon<BasisKey> e) {
  e.make_reduced();
  std::vector<linalg::SparseVector<BasisKey>> out;
  for (const auto& [lead, row] : e.rows()) out.push_back(row);
  return out;
}

}  // namespace detail

/// Cohomology of the coboundary operator restricted to polynomial
/// coefficients. At level p the cocycles are the kernel of ∂ on fields with
/// coefficients of total degree ≤ d; the coboundaries are ∂(fields of degree
/// ≤ d + image_slack) intersected with degree ≤ d. Representatives are the
/// kernel vectors reduced modulo the coboundaries, in reduced echelon form.
inline CohomologyReport truncated_cohomology(const AtpStructure& s, std::size_t max_level, std::size_t degree_bound,
                                             std::size_t image_slack = 1) {
  detail::require_polynomial_structure(s);
  const ChartPtr& chart = s.chart();
  const std::size_t m = chart->dimension();
  const std::size_t d = degree_bound;
  Coboundary boundary(s);
  using Vec = linalg::SparseVector<BasisKey>;
  using Column = std::pair<BasisKey, std::map<BasisKey, Rational>>;

  // Columns of ∂ at one level on the domain of degree ≤ bound.
  auto columns = [&](std::size_t level, std::size_t bound) {
    std::vector<Column> cols;
    for (const BasisKey& key : detail::multivector_basis(m, level, bound))
      cols.emplace_back(key, detail::to_vector(boundary(detail::basis_tensor(chart, key))));
    return cols;
  };

  CohomologyReport report{d, image_slack, {}};
  std::vector<Column> below;  // level − 1 columns on the enlarged domain
  for (std::size_t level = 0; level <= max_level; ++level) {
    std::vector<Column> enlarged = columns(level, level < max_level ? d + image_slack : d);
    std::vector<Column> domain;
    for (const Column& c : enlarged)
      if (c.first.monomial.degree() <= d) domain.push_back(c);

    LevelReport lr;
    lr.level = level;
    lr.domain_dim = domain.size();
    auto ker = linalg::kernel(domain);
    lr.rank = ker.rank;
    lr.kernel_dim = ker.kernel.size();

    // Coboundaries of degree ≤ d: echelon with high-degree keys first, then
    // keep rows whose leading key is already in the low block.
    using Flagged = std::pair<int, BasisKey>;
    linalg::Echelon<Flagged> image;
    for (const Column& c : below) {
      std::map<Flagged, Rational> v;
      for (const auto& [key, x] : c.second) v.emplace(Flagged{key.monomial.degree() > d ? 0 : 1, key}, x);
      image.insert(linalg::from_rational(v));
    }
    linalg::Echelon<BasisKey> low_image;
    for (const auto& [lead, row] : image.rows()) {
      if (lead.first == 0) continue;
      Vec v;
      for (const auto& [key, x] : row) v.emplace(key.second, x);
      low_image.insert(std::move(v));
    }
    lr.image_dim = low_image.rank();
    low_image.make_reduced();

    linalg::Echelon<BasisKey> survivors;
    for (Vec z : ker.kernel) {
      low_image.reduce_fully(z);
      if (!z.empty()) survivors.insert(std::move(z));
    }
    for (const Vec& v : detail::reduced_basis(std::move(survivors)))
      lr.representatives.push_back(detail::to_tensor(chart, level, v));
    lr.quotient_dim = lr.representatives.size();
    report.levels.push_back(std::move(lr));
    below = std::move(enlarged);
  }
  return report;
}

/// Polynomial Casimir functions of degree ≤ d, in reduced echelon form.
inline std::vector<Scalar> casimir_kernel(const AtpStructure& s, std::size_t degree_bound) {
  detail::require_polynomial_structure(s);
  const ChartPtr& chart = s.chart();
  Coboundary boundary(s);
  std::vector<std::pair<BasisKey, std::map<BasisKey, Rational>>> cols;
  for (const BasisKey& key : detail::multivector_basis(chart->dimension(), 0, degree_bound))
    cols.emplace_back(key, detail::to_vector(boundary(detail::basis_tensor(chart, key))));
  linalg::Echelon<BasisKey> e;
  for (auto& v : linalg::kernel(cols).kernel) e.insert(std::move(v));
  std::vector<Scalar> out;
  for (const auto& v : detail::reduced_basis(std::move(e)))
    out.push_back(detail::to_tensor(chart, 0, v).as_scalar());
  return out;
}

}  // namespace atp
