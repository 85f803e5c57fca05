#pragma once

// Residuals of the structural identities satisfied by the twisted bracket.
// Each function returns LHS − RHS, so a valid structure yields zero.

#include "atp/brackets.hpp"

namespace atp {

/// η_{f,g} = i_{(df)#} i_{(dg)#} φ.
inline GradedTensor eta(const BracketContext& ctx, const Scalar& f, const Scalar& g) {
  GradedTensor hf = anchor(ctx, differential_of(f));
  GradedTensor hg = anchor(ctx, differential_of(g));
  return interior_product(hf, interior_product(hg, ctx.phi()));
}

/// η_{f,g,h} = i_{(df)#} i_{(dg)#} i_{(dh)#} φ.
inline Scalar eta(const BracketContext& ctx, const Scalar& f, const Scalar& g, const Scalar& h) {
  GradedTensor hh = anchor(ctx, differential_of(h));
  GradedTensor inner = interior_product(hh, ctx.phi());
  return interior_product(anchor(ctx, differential_of(f)), interior_product(anchor(ctx, differential_of(g)), inner))
      .as_scalar();
}

/// Jacobiator against π#(φ)(df, dg, dh).
inline Scalar jacobiator_defect(const BracketContext& ctx, const Scalar& f, const Scalar& g, const Scalar& h) {
  GradedTensor ext = anchor_extend(ctx, ctx.phi());
  return jacobiator(ctx, f, g, h) -
         evaluate_multivector(ext, {differential_of(f), differential_of(g), differential_of(h)});
}

/// [fα, gβ] − (fg[α,β] + π#(fα)(g)·β − π#(gβ)(f)·α).
inline GradedTensor leibniz_defect(const BracketContext& ctx, const Scalar& f, const GradedTensor& alpha,
                                   const Scalar& g, const GradedTensor& beta) {
  GradedTensor fa = f * alpha;
  GradedTensor gb = g * beta;
  GradedTensor lhs = twisted_bracket(ctx, fa, gb);
  GradedTensor rhs = (f * g) * twisted_bracket(ctx, alpha, beta);
  rhs += apply_vector(anchor(ctx, fa), g) * beta;
  rhs -= apply_vector(anchor(ctx, gb), f) * alpha;
  return lhs - rhs;
}

/// [df, η_{h,g}] − (i_{(df)#} dη_{h,g} + dη_{f,h,g} + i_{[(dg)#,(dh)#]} i_{(df)#} φ − η_{{g,h},f} + η_{f,h,g} θ).
inline GradedTensor eta_bracket_defect(const BracketContext& ctx, const Scalar& f, const Scalar& g, const Scalar& h) {
  GradedTensor df = differential_of(f);
  GradedTensor hf = anchor(ctx, df);
  GradedTensor eta_hg = eta(ctx, h, g);
  Scalar eta_fhg = eta(ctx, f, h, g);
  GradedTensor lhs = twisted_bracket(ctx, df, eta_hg);
  GradedTensor rhs = interior_product(hf, exterior_derivative(eta_hg));
  rhs += differential_of(eta_fhg);
  GradedTensor bracket_gh = lie_bracket(anchor(ctx, differential_of(g)), anchor(ctx, differential_of(h)));
  rhs += interior_product(bracket_gh, interior_product(hf, ctx.phi()));
  rhs -= eta(ctx, hamiltonian_bracket(ctx, g, h), f);
  rhs += eta_fhg * ctx.theta();
  return lhs - rhs;
}

/// [df, [dg, dh]] − (d{f,{g,h}} + {f,{g,h}}θ + η_{{g,h},f} + [df, η_{h,g}] + [df, {g,h}θ]).
inline GradedTensor double_bracket_defect(const BracketContext& ctx, const Scalar& f, const Scalar& g,
                                          const Scalar& h) {
  GradedTensor df = differential_of(f);
  GradedTensor lhs = twisted_bracket(ctx, df, twisted_bracket(ctx, differential_of(g), differential_of(h)));
  Scalar gh = hamiltonian_bracket(ctx, g, h);
  Scalar f_gh = hamiltonian_bracket(ctx, f, gh);
  GradedTensor rhs = differential_of(f_gh);
  rhs += f_gh * ctx.theta();
  rhs += eta(ctx, gh, f);
  rhs += twisted_bracket(ctx, df, eta(ctx, h, g));
  rhs += twisted_bracket(ctx, df, gh * ctx.theta());
  return lhs - rhs;
}

/// [α,[β,γ]] + [β,[γ,α]] + [γ,[α,β]] for the twisted bracket.
inline GradedTensor twisted_jacobi_sum(const BracketContext& ctx, const GradedTensor& a, const GradedTensor& b,
                                       const GradedTensor& c) {
  auto br = [&](const GradedTensor& x, const GradedTensor& y) { return twisted_bracket(ctx, x, y); };
  return br(a, br(b, c)) + br(b, br(c, a)) + br(c, br(a, b));
}

/// Graded Jacobiator of the Schouten bracket,
///   (-1)^{rp}[P,[Q,R]] + (-1)^{pq}[Q,[R,P]] + (-1)^{qr}[R,[P,Q]],
/// with shifted degrees p = deg P − 1 and so on.
inline GradedTensor schouten_jacobiator(const GradedTensor& p, const GradedTensor& q, const GradedTensor& r) {
  auto shifted = [](const GradedTensor& t) { return static_cast<long>(t.degree()) - 1; };
  auto sign = [](long e) { return (e % 2 == 0) ? 1 : -1; };
  long sp = shifted(p), sq = shifted(q), sr = shifted(r);
  GradedTensor t1 = schouten_bracket(p, schouten_bracket(q, r));
  GradedTensor t2 = schouten_bracket(q, schouten_bracket(r, p));
  GradedTensor t3 = schouten_bracket(r, schouten_bracket(p, q));
  if (sign(sr * sp) < 0) t1 = -t1;
  if (sign(sp * sq) < 0) t2 = -t2;
  if (sign(sq * sr) < 0) t3 = -t3;
  // A bracket of two functions has degree −1; its zero carries degree 0 and
  // must not be added to the other terms.
  GradedTensor sum(p.chart(), TensorKind::multivector, p.degree() + q.degree() + r.degree() - 2);
  for (const auto* t : {&t1, &t2, &t3})
    if (!t->is_zero()) sum += *t;
  return sum;
}

}  // namespace atp
