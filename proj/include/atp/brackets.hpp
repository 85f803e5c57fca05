#pragma once

#include <vector>

#include "atp/exterior.hpp"

namespace atp {

/// The data (π, φ, θ) on one chart. Degrees and kinds are enforced here;
/// whether the axioms hold is the business of the structures module.
class BracketContext {
 public:
  BracketContext(GradedTensor pi, GradedTensor phi, GradedTensor theta)
      : pi_(std::move(pi)), phi_(std::move(phi)), theta_(std::move(theta)) {
    require_same_chart(pi_.chart(), phi_.chart());
    require_same_chart(pi_.chart(), theta_.chart());
    check(pi_, TensorKind::multivector, 2, "pi");
    check(phi_, TensorKind::form, 3, "phi");
    check(theta_, TensorKind::form, 1, "theta");
  }

  /// π alone, with φ = 0 and θ = 0.
  static BracketContext poisson(GradedTensor pi) {
    auto chart = pi.chart();
    return BracketContext(std::move(pi), GradedTensor(chart, TensorKind::form, 3),
                          GradedTensor(chart, TensorKind::form, 1));
  }

  const ChartPtr& chart() const noexcept { return pi_.chart(); }
  const GradedTensor& pi() const noexcept { return pi_; }
  const GradedTensor& phi() const noexcept { return phi_; }
  const GradedTensor& theta() const noexcept { return theta_; }

 private:
  static void check(GradedTensor& t, TensorKind kind, std::size_t degree, const char* name) {
    if (t.is_zero() && t.degree() == 0) {
      t = GradedTensor(t.chart(), kind, degree);
      return;
    }
    if (t.degree() != degree || t.kind() != kind)
      throw DegreeError(std::string(name) + " must be a " + kind_name(kind) + " of degree " + std::to_string(degree));
  }

  GradedTensor pi_;
  GradedTensor phi_;
  GradedTensor theta_;
};

inline GradedTensor lie_bracket(const GradedTensor& x, const GradedTensor& y) {
  require_same_chart(x.chart(), y.chart());
  for (const auto* t : {&x, &y})
    if (t->degree() != 1 || t->kind() != TensorKind::multivector) throw DegreeError("Lie bracket needs vector fields");
  GradedTensor r(x.chart(), TensorKind::multivector, 1);
  for (const auto& [k, yk] : y.components()) r.add_to(k, apply_vector(x, yk));
  for (const auto& [k, xk] : x.components()) r.add_to(k, -apply_vector(y, xk));
  return r;
}

namespace detail {

inline GradedTensor as_multivector_scalar(const GradedTensor& t) {
  return GradedTensor::scalar(t.chart(), t.component(IndexSet{}), TensorKind::multivector);
}

/// Splits c·∂_{i1}∧...∧∂_{ia} into the factors (c·∂_{i1}, ∂_{i2}, ..., ∂_{ia}).
inline std::vector<GradedTensor> decomposable_factors(const ChartPtr& chart, IndexSet key, const RationalFunction& c) {
  std::vector<GradedTensor> factors;
  bool first = true;
  for (std::size_t i : key.elements()) {
    GradedTensor v(chart, TensorKind::multivector, 1);
    v.add_to(IndexSet::single(i), first ? c : RationalFunction(1));
    factors.push_back(std::move(v));
    first = false;
  }
  return factors;
}

inline GradedTensor wedge_all(const ChartPtr& chart, const std::vector<const GradedTensor*>& factors) {
  GradedTensor r = GradedTensor::scalar(chart, RationalFunction(1), TensorKind::multivector);
  for (const auto* f : factors) r = wedge(r, *f);
  return r;
}

/// [P, f] = Σ_i (-1)^{a-i} X_i(f) X_1∧...X̂_i...∧X_a (1-based i) on
/// decomposables; consistent with [X, f] = X(f) and graded skew-symmetry.
inline GradedTensor schouten_with_function(const GradedTensor& p, const RationalFunction& f) {
  const auto& chart = p.chart();
  const std::size_t a = p.degree();
  GradedTensor r(chart, TensorKind::multivector, a - 1);
  if (f.is_constant()) return r;
  for (const auto& [key, c] : p.components()) {
    auto elems = key.elements();
    for (std::size_t i = 0; i < a; ++i) {
      RationalFunction df = chart->partial(f, elems[i]);
      if (df.is_zero()) continue;
      // Whichever factor carries c, the term is c · ∂_i(f) · (remaining basis).
      RationalFunction coeff = c * df;
      r.add_to(key.without(elems[i]), ((a - 1 - i) & 1u) ? -coeff : coeff);
    }
  }
  return r;
}

}  // namespace detail

/// Schouten–Nijenhuis bracket of multivector fields of degrees a and b,
/// giving degree a + b - 1. Computed from the decomposable formula
///   [X1∧…∧Xa, Y1∧…∧Yb] = Σ (-1)^{i+j} [Xi,Yj] ∧ X1…X̂i…Xa ∧ Y1…Ŷj…Yb
/// with [X, f] = X(f) fixing the degree-0 cases. The bracket of two
/// functions is zero (returned as the zero scalar).
inline GradedTensor schouten_bracket(const GradedTensor& p, const GradedTensor& q) {
  require_same_chart(p.chart(), q.chart());
  for (const auto* t : {&p, &q})
    if (t->degree() != 0 && t->kind() != TensorKind::multivector) throw KindMismatch("Schouten bracket of a form");
  const auto& chart = p.chart();
  const std::size_t a = p.degree();
  const std::size_t b = q.degree();
  if (a == 0 && b == 0) return GradedTensor(chart, TensorKind::multivector, 0);
  if (b == 0) return detail::schouten_with_function(p, q.component(IndexSet{}));
  if (a == 0) {
    // [f, Q] = -(-1)^{(b-1)} [Q, f] by graded skew-symmetry with shifted degrees (-1, b-1).
    GradedTensor r = detail::schouten_with_function(q, p.component(IndexSet{}));
    return ((b - 1) & 1u) ? r : -r;
  }
  GradedTensor r(chart, TensorKind::multivector, a + b - 1);
  for (const auto& [kp, cp] : p.components()) {
    auto xs = detail::decomposable_factors(chart, kp, cp);
    for (const auto& [kq, cq] : q.components()) {
      auto ys = detail::decomposable_factors(chart, kq, cq);
      for (std::size_t i = 0; i < a; ++i) {
        for (std::size_t j = 0; j < b; ++j) {
          GradedTensor br = lie_bracket(xs[i], ys[j]);
          if (br.is_zero()) continue;
          std::vector<const GradedTensor*> rest{&br};
          for (std::size_t k = 0; k < a; ++k)
            if (k != i) rest.push_back(&xs[k]);
          for (std::size_t k = 0; k < b; ++k)
            if (k != j) rest.push_back(&ys[k]);
          GradedTensor term = detail::wedge_all(chart, rest);
          r += ((i + j) & 1u) ? -term : term;
        }
      }
    }
  }
  return r;
}

/// π#(α): the vector field with β(π#(α)) = π(α, β) for every 1-form β.
inline GradedTensor anchor(const GradedTensor& pi, const GradedTensor& alpha) {
  require_same_chart(pi.chart(), alpha.chart());
  if (alpha.degree() != 1 || alpha.kind() != TensorKind::form) throw DegreeError("anchor needs a 1-form");
  if (pi.degree() != 2 || pi.kind() != TensorKind::multivector) throw DegreeError("anchor needs a bivector");
  GradedTensor r(pi.chart(), TensorKind::multivector, 1);
  for (const auto& [key, c] : pi.components()) {
    auto e = key.elements();
    RationalFunction a0 = alpha.component(IndexSet::single(e[0]));
    RationalFunction a1 = alpha.component(IndexSet::single(e[1]));
    if (!a0.is_zero()) r.add_to(IndexSet::single(e[1]), a0 * c);
    if (!a1.is_zero()) r.add_to(IndexSet::single(e[0]), -(a1 * c));
  }
  return r;
}

inline GradedTensor anchor(const BracketContext& ctx, const GradedTensor& alpha) { return anchor(ctx.pi(), alpha); }

/// Extension of the anchor to k-forms:
///   π#(ω)(α1, …, αk) = (-1)^k ω(π#(α1), …, π#(αk)),   π#(f) = f.
/// Evaluated literally on every increasing tuple of coordinate covectors.
inline GradedTensor anchor_extend(const GradedTensor& pi, const GradedTensor& omega) {
  require_same_chart(pi.chart(), omega.chart());
  const auto& chart = pi.chart();
  const std::size_t k = omega.degree();
  if (k == 0) return detail::as_multivector_scalar(omega);
  if (omega.kind() != TensorKind::form) throw KindMismatch("anchor_extend needs a form");
  GradedTensor r(chart, TensorKind::multivector, k);
  if (omega.is_zero() || k > chart->dimension()) return r;
  const std::size_t m = chart->dimension();
  std::vector<GradedTensor> images;
  for (std::size_t i = 0; i < m; ++i) images.push_back(anchor(pi, GradedTensor::basis_form(chart, i)));
  for (std::uint32_t bits = 0; bits < (std::uint32_t{1} << m); ++bits) {
    IndexSet key(bits);
    if (key.size() != k) continue;
    std::vector<GradedTensor> args;
    bool zero = false;
    for (std::size_t i : key.elements()) {
      if (images[i].is_zero()) zero = true;
      args.push_back(images[i]);
    }
    if (zero) continue;
    RationalFunction v = evaluate_form(omega, args).value();
    r.add_to(key, (k & 1u) ? -v : v);
  }
  return r;
}

inline GradedTensor anchor_extend(const BracketContext& ctx, const GradedTensor& omega) {
  return anchor_extend(ctx.pi(), omega);
}

/// π(α, β).
inline Scalar pair(const GradedTensor& pi, const GradedTensor& alpha, const GradedTensor& beta) {
  return evaluate_multivector(pi, {alpha, beta});
}

inline GradedTensor differential_of(const Scalar& f) { return exterior_derivative(GradedTensor::scalar(f)); }

/// {f, g} = π(df, dg).
inline Scalar hamiltonian_bracket(const BracketContext& ctx, const Scalar& f, const Scalar& g) {
  return pair(ctx.pi(), differential_of(f), differential_of(g));
}

/// Cyclic sum {f,{g,h}} + {g,{h,f}} + {h,{f,g}}.
inline Scalar jacobiator(const BracketContext& ctx, const Scalar& f, const Scalar& g, const Scalar& h) {
  auto hb = [&](const Scalar& a, const Scalar& b) { return hamiltonian_bracket(ctx, a, b); };
  return hb(f, hb(g, h)) + hb(g, hb(h, f)) + hb(h, hb(f, g));
}

namespace detail {

inline void require_one_forms(const GradedTensor& a, const GradedTensor& b) {
  for (const auto* t : {&a, &b})
    if (t->degree() != 1 || t->kind() != TensorKind::form) throw DegreeError("bracket needs 1-forms");
}

}  // namespace detail

/// [α,β]_K = ℒ_{α#}β − ℒ_{β#}α − d π(α,β).
inline GradedTensor koszul_bracket(const BracketContext& ctx, const GradedTensor& alpha, const GradedTensor& beta) {
  detail::require_one_forms(alpha, beta);
  GradedTensor a_sharp = anchor(ctx, alpha);
  GradedTensor b_sharp = anchor(ctx, beta);
  GradedTensor r = lie_derivative(a_sharp, beta) - lie_derivative(b_sharp, alpha);
  return r - differential_of(pair(ctx.pi(), alpha, beta));
}

/// [α,β]_{φ,θ} = [α,β]_K + i_{π#(β)} i_{π#(α)} φ + π(α,β)·θ.
inline GradedTensor twisted_bracket(const BracketContext& ctx, const GradedTensor& alpha, const GradedTensor& beta) {
  GradedTensor r = koszul_bracket(ctx, alpha, beta);
  if (!ctx.phi().is_zero())
    r += interior_product(anchor(ctx, beta), interior_product(anchor(ctx, alpha), ctx.phi()));
  if (!ctx.theta().is_zero()) r += ctx.theta().scaled(pair(ctx.pi(), alpha, beta).value());
  return r;
}

/// [(df)#, (dg)#] − (d{f,g})# − (i_{(dg)#} i_{(df)#} φ)#; zero exactly when
/// the fundamental identity holds for (f, g).
inline GradedTensor fundamental_identity_defect(const BracketContext& ctx, const Scalar& f, const Scalar& g) {
  GradedTensor hf = anchor(ctx, differential_of(f));
  GradedTensor hg = anchor(ctx, differential_of(g));
  GradedTensor r = lie_bracket(hf, hg) - anchor(ctx, differential_of(hamiltonian_bracket(ctx, f, g)));
  return r - anchor(ctx, interior_product(hg, interior_product(hf, ctx.phi())));
}

/// π#([u df, v dg]_{φ,θ}) − [π#(u df), π#(v dg)].
inline GradedTensor anchor_homomorphism_defect(const BracketContext& ctx, const Scalar& u, const Scalar& f,
                                               const Scalar& v, const Scalar& g) {
  GradedTensor a = u * differential_of(f);
  GradedTensor b = v * differential_of(g);
  return anchor(ctx, twisted_bracket(ctx, a, b)) - lie_bracket(anchor(ctx, a), anchor(ctx, b));
}

}  // namespace atp
