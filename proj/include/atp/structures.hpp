#pragma once

#include <array>
#include <optional>
#include <string>

#include "atp/brackets.hpp"

namespace atp {

enum class Axiom { theta_closed, phi_twisted_closed, theta_in_kernel, master_equation };

inline constexpr std::array<Axiom, 4> all_axioms{Axiom::theta_closed, Axiom::phi_twisted_closed,
                                                 Axiom::theta_in_kernel, Axiom::master_equation};

inline const char* axiom_name(Axiom a) {
  switch (a) {
    case Axiom::theta_closed: return "theta_closed";
    case Axiom::phi_twisted_closed: return "phi_twisted_closed";
    case Axiom::theta_in_kernel: return "theta_in_kernel";
    case Axiom::master_equation: return "master_equation";
  }
  return "?";
}

struct AxiomResult {
  Axiom axiom;
  GradedTensor residual;
  bool passed() const noexcept { return residual.is_zero(); }
};

/// Outcome of checking the four axioms; each entry keeps the exact residual.
struct AxiomReport {
  std::array<std::optional<AxiomResult>, 4> results;

  const AxiomResult& operator[](Axiom a) const { return *results[static_cast<std::size_t>(a)]; }
  bool all_passed() const {
    for (const auto& r : results)
      if (!r->passed()) return false;
    return true;
  }
};

/// Residuals dθ; dφ − θ∧φ; π#(θ); ½[π,π] − π#(φ).
inline AxiomReport verify_structure(const BracketContext& ctx) {
  AxiomReport report;
  auto put = [&](Axiom a, GradedTensor residual) {
    report.results[static_cast<std::size_t>(a)] = AxiomResult{a, std::move(residual)};
  };
  put(Axiom::theta_closed, exterior_derivative(ctx.theta()));
  put(Axiom::phi_twisted_closed, exterior_derivative(ctx.phi()) - wedge(ctx.theta(), ctx.phi()));
  put(Axiom::theta_in_kernel, anchor(ctx, ctx.theta()));
  put(Axiom::master_equation,
      schouten_bracket(ctx.pi(), ctx.pi()).scaled(RationalFunction(Rational(1, 2))) - anchor_extend(ctx, ctx.phi()));
  return report;
}

/// (π, φ, θ) together with its axiom report. `verified()` is true only when
/// all four axioms hold; operations of the cohomology module refuse
/// unverified structures.
class AtpStructure {
 public:
  explicit AtpStructure(BracketContext ctx) : ctx_(std::move(ctx)), report_(verify_structure(ctx_)) {}

  const BracketContext& context() const noexcept { return ctx_; }
  const ChartPtr& chart() const noexcept { return ctx_.chart(); }
  const GradedTensor& pi() const noexcept { return ctx_.pi(); }
  const GradedTensor& phi() const noexcept { return ctx_.phi(); }
  const GradedTensor& theta() const noexcept { return ctx_.theta(); }
  const AxiomReport& report() const noexcept { return report_; }
  bool verified() const { return report_.all_passed(); }

  void require_verified(const char* operation) const {
    if (!verified()) throw UnverifiedStructure(std::string(operation) + " needs a verified structure");
  }

 private:
  BracketContext ctx_;
  AxiomReport report_;
};

/// Twisted Poisson check for (π, φ): φ closed and ½[π,π] = π#(φ).
inline bool is_twisted_poisson(const GradedTensor& pi, const GradedTensor& phi) {
  BracketContext ctx(pi, phi, GradedTensor(pi.chart(), TensorKind::form, 1));
  if (!exterior_derivative(phi).is_zero()) return false;
  return verify_structure(ctx)[Axiom::master_equation].passed();
}

/// (fπ0, f⁻¹φ0, −f⁻¹df) from a twisted Poisson pair and a Casimir f of π0.
inline AtpStructure conformal_rescale(const GradedTensor& pi0, const GradedTensor& phi0, const Scalar& f) {
  require_same_chart(pi0.chart(), f.chart());
  if (f.is_zero()) throw NotInvertible("the rescaling function must be invertible");
  if (!is_twisted_poisson(pi0, phi0)) throw PreconditionViolated("(pi0, phi0) is not a twisted Poisson pair");
  GradedTensor df = differential_of(f);
  if (!anchor(pi0, df).is_zero()) throw PreconditionViolated("pi0#(df) != 0");
  Scalar inv = f.inverse();
  return AtpStructure(BracketContext(f * pi0, inv * phi0, -(inv * df)));
}

namespace detail {

/// Copies a tensor onto `target`, mapping variable i to `mapping[i]`.
inline GradedTensor transplant(const GradedTensor& t, const ChartPtr& target, const std::vector<std::size_t>& mapping) {
  GradedTensor r(target, t.kind(), t.degree());
  for (const auto& [k, v] : t.components()) r.add_to(k, v.remap(mapping));
  return r;
}

}  // namespace detail

/// On M × ℝ with new coordinate t and auxiliary E = e^t (dE/dt = E):
/// (E·π0, E⁻¹·φ0, −dt).
inline AtpStructure product_with_line(const GradedTensor& pi0, const GradedTensor& phi0) {
  require_same_chart(pi0.chart(), phi0.chart());
  const Chart& base = *pi0.chart();
  if (base.variable_index("t") || base.variable_index("E"))
    throw InvalidChart("product_with_line needs the names 't' and 'E' to be free");
  const std::size_t m = base.dimension();
  std::vector<std::string> coords = base.coordinates();
  coords.push_back("t");
  std::vector<std::size_t> mapping(base.variable_count());
  for (std::size_t v = 0; v < base.variable_count(); ++v) mapping[v] = v < m ? v : v + 1;
  std::vector<AuxSymbol> aux;
  for (const auto& a : base.aux_symbols()) {
    AuxSymbol copy{a.name, {}};
    for (const auto& [coord, value] : a.derivatives) copy.derivatives.emplace(coord, value.remap(mapping));
    aux.push_back(std::move(copy));
  }
  const std::size_t e_var = m + 1 + base.aux_symbols().size();
  RationalFunction e_value(Polynomial::variable(e_var));
  aux.push_back(AuxSymbol{"E", {{m, e_value}}});
  ChartPtr chart = Chart::create(std::move(coords), std::move(aux));

  GradedTensor pi = detail::transplant(pi0, chart, mapping).scaled(e_value);
  GradedTensor phi = detail::transplant(phi0, chart, mapping).scaled(e_value.inverse());
  GradedTensor theta = -GradedTensor::basis_form(chart, m);
  return AtpStructure(BracketContext(std::move(pi), std::move(phi), std::move(theta)));
}

/// The five-dimensional family: θ = dx5, π = f ∂1∧∂2 + g ∂3∧∂4 and
///   φ = ∂1(g⁻¹) dx1∧dx3∧dx4 + ∂2(g⁻¹) dx2∧dx3∧dx4 + (∂5(g⁻¹) − g⁻¹) dx3∧dx4∧dx5
///     + ∂3(f⁻¹) dx1∧dx2∧dx3 + ∂4(f⁻¹) dx1∧dx2∧dx4 + (∂5(f⁻¹) − f⁻¹) dx1∧dx2∧dx5.
inline AtpStructure r5_example(const Scalar& f, const Scalar& g) {
  require_same_chart(f.chart(), g.chart());
  const ChartPtr& chart = f.chart();
  if (chart->dimension() != 5) throw DimensionError("r5_example needs a 5-coordinate chart");
  if (f.is_zero() || g.is_zero()) throw NotInvertible("f and g must be invertible");
  const Scalar fi = f.inverse();
  const Scalar gi = g.inverse();
  auto form3 = [&](std::size_t a, std::size_t b, std::size_t c, const Scalar& coeff) {
    return GradedTensor::monomial(chart, TensorKind::form, {a, b, c}, coeff.value());
  };
  GradedTensor pi = GradedTensor::monomial(chart, TensorKind::multivector, {0, 1}, f.value()) +
                    GradedTensor::monomial(chart, TensorKind::multivector, {2, 3}, g.value());
  GradedTensor phi = form3(0, 2, 3, gi.partial(std::size_t{0})) + form3(1, 2, 3, gi.partial(std::size_t{1})) +
                     form3(2, 3, 4, gi.partial(std::size_t{4}) - gi) + form3(0, 1, 2, fi.partial(std::size_t{2})) +
                     form3(0, 1, 3, fi.partial(std::size_t{3})) + form3(0, 1, 4, fi.partial(std::size_t{4}) - fi);
  return AtpStructure(BracketContext(std::move(pi), std::move(phi), GradedTensor::basis_form(chart, 4)));
}

/// Tests the low-dimensional closedness claim on one instance: returns
/// whether dφ = 0. A false return is a counterexample, not an error.
inline bool low_dimension_closedness_check(const AtpStructure& s) {
  s.require_verified("low_dimension_closedness_check");
  if (s.chart()->dimension() > 4) throw DimensionError("closedness check applies to charts of dimension <= 4");
  return exterior_derivative(s.phi()).is_zero();
}

}  // namespace atp
