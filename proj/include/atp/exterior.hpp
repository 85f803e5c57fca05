#pragma once

#include <span>
#include <vector>

#include "atp/graded_tensor.hpp"

namespace atp {

inline TensorKind dual(TensorKind k) { return k == TensorKind::form ? TensorKind::multivector : TensorKind::form; }

/// Wedge product. Scalars (degree 0) multiply either kind; otherwise both
/// operands must share a kind.
inline GradedTensor wedge(const GradedTensor& a, const GradedTensor& b) {
  require_same_chart(a.chart(), b.chart());
  if (a.degree() != 0 && b.degree() != 0 && a.kind() != b.kind())
    throw KindMismatch("wedge of a form with a multivector");
  TensorKind kind = a.degree() != 0 ? a.kind() : b.kind();
  GradedTensor r(a.chart(), kind, a.degree() + b.degree());
  for (const auto& [ka, va] : a.components()) {
    for (const auto& [kb, vb] : b.components()) {
      if (ka.intersects(kb)) continue;
      RationalFunction c = va * vb;
      r.add_to(ka | kb, concat_sign(ka, kb) > 0 ? c : -c);
    }
  }
  return r;
}

/// Inserts the degree-1 tensor `one` into the first slot of `t`, where `one`
/// has the dual kind: i_X ω for a vector X and form ω, or i_α P for a 1-form
/// α and multivector P.
inline GradedTensor insert_first(const GradedTensor& one, const GradedTensor& t) {
  require_same_chart(one.chart(), t.chart());
  if (one.degree() != 1) throw DegreeError("only degree-1 tensors can be inserted");
  if (t.degree() == 0) throw DegreeError("cannot insert into a degree-0 tensor");
  if (one.kind() != dual(t.kind())) throw KindMismatch("insertion needs tensors of dual kinds");
  GradedTensor r(t.chart(), t.kind(), t.degree() - 1);
  for (const auto& [key, value] : t.components()) {
    std::size_t pos = 0;
    for (std::size_t i : key.elements()) {
      auto it = one.components().find(IndexSet::single(i));
      if (it != one.components().end()) {
        RationalFunction c = it->second * value;
        r.add_to(key.without(i), (pos & 1u) ? -c : c);
      }
      ++pos;
    }
  }
  return r;
}

/// i_X ω: contraction of a vector field into the first slot of a form.
inline GradedTensor interior_product(const GradedTensor& vector_field, const GradedTensor& form) {
  if (vector_field.kind() != TensorKind::multivector || vector_field.degree() != 1)
    throw DegreeError("interior product needs a vector field");
  if (form.kind() != TensorKind::form && form.degree() != 0) throw KindMismatch("interior product needs a form");
  if (form.degree() == 0) throw DegreeError("interior product of a 0-form");
  return insert_first(vector_field, form);
}

/// X(f) for a vector field X and a scalar f.
inline RationalFunction apply_vector(const GradedTensor& vector_field, const RationalFunction& f) {
  if (vector_field.degree() != 1 || vector_field.kind() != TensorKind::multivector)
    throw DegreeError("expected a vector field");
  RationalFunction r;
  if (f.is_constant()) return r;
  for (const auto& [key, value] : vector_field.components())
    r += value * vector_field.chart()->partial(f, static_cast<std::size_t>(std::countr_zero(key.bits())));
  return r;
}

inline Scalar apply_vector(const GradedTensor& vector_field, const Scalar& f) {
  require_same_chart(vector_field.chart(), f.chart());
  return Scalar(f.chart(), apply_vector(vector_field, f.value()));
}

inline GradedTensor exterior_derivative(const GradedTensor& form) {
  if (form.kind() != TensorKind::form && form.degree() != 0)
    throw KindMismatch("exterior derivative of a multivector");
  const auto& chart = form.chart();
  GradedTensor r(chart, TensorKind::form, form.degree() + 1);
  for (const auto& [key, value] : form.components()) {
    if (value.is_constant()) continue;
    for (std::size_t j = 0; j < chart->dimension(); ++j) {
      if (key.contains(j)) continue;
      RationalFunction c = chart->partial(value, j);
      if (c.is_zero()) continue;
      r.add_to(key.with(j), (key.rank_of(j) & 1u) ? -c : c);
    }
  }
  return r;
}

/// Lie derivative of a form along a vector field, via Cartan's formula.
inline GradedTensor lie_derivative(const GradedTensor& vector_field, const GradedTensor& form) {
  if (form.degree() == 0)
    return GradedTensor::scalar(form.chart(), apply_vector(vector_field, form.component(IndexSet{})));
  GradedTensor r = interior_product(vector_field, exterior_derivative(form));
  GradedTensor inner = interior_product(vector_field, form);
  return r + exterior_derivative(inner);
}

namespace detail {

inline RationalFunction evaluate(const GradedTensor& t, std::span<const GradedTensor> args, TensorKind arg_kind) {
  if (args.size() != t.degree())
    throw ArityError("expected " + std::to_string(t.degree()) + " arguments, got " + std::to_string(args.size()));
  for (const auto& a : args)
    if (a.degree() != 1 || a.kind() != arg_kind)
      throw DegreeError(std::string("arguments must be degree-1 ") + kind_name(arg_kind) + "s");
  GradedTensor cur = t;
  for (const auto& a : args) cur = insert_first(a, cur);
  return cur.component(IndexSet{});
}

}  // namespace detail

/// ω(X1, ..., Xp) = det[dx_{I_i}(X_j)]-weighted sum; computed as iterated
/// first-slot insertion.
inline Scalar evaluate_form(const GradedTensor& form, std::span<const GradedTensor> vectors) {
  if (form.kind() != TensorKind::form && form.degree() != 0) throw KindMismatch("evaluate_form needs a form");
  return Scalar(form.chart(), detail::evaluate(form, vectors, TensorKind::multivector));
}

inline Scalar evaluate_multivector(const GradedTensor& multivector, std::span<const GradedTensor> forms) {
  if (multivector.kind() != TensorKind::multivector && multivector.degree() != 0)
    throw KindMismatch("evaluate_multivector needs a multivector");
  return Scalar(multivector.chart(), detail::evaluate(multivector, forms, TensorKind::form));
}

inline Scalar evaluate_form(const GradedTensor& form, std::initializer_list<GradedTensor> vectors) {
  return evaluate_form(form, std::span<const GradedTensor>(vectors.begin(), vectors.size()));
}

inline Scalar evaluate_multivector(const GradedTensor& multivector, std::initializer_list<GradedTensor> forms) {
  return evaluate_multivector(multivector, std::span<const GradedTensor>(forms.begin(), forms.size()));
}

}  // namespace atp
