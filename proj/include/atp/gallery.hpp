#pragma once

#include <functional>
#include <string>
#include <vector>

#include "atp/spec_file.hpp"
#include "atp/structures.hpp"

namespace atp {

struct GalleryEntry {
  std::string name;
  std::string family;  // which construction the entry instantiates
  bool valid;          // whether verify is expected to pass
  std::function<ManifoldSpec()> build;
};

namespace gallery_detail {

inline ChartPtr euclidean(std::size_t m) {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= m; ++i) names.push_back("x" + std::to_string(i));
  return Chart::create(names);
}

inline Scalar var(const ChartPtr& chart, std::size_t i) { return Scalar::variable(chart, "x" + std::to_string(i)); }

inline GradedTensor bivector(const ChartPtr& chart, std::size_t a, std::size_t b, RationalFunction c = 1) {
  return GradedTensor::monomial(chart, TensorKind::multivector, {a, b}, std::move(c));
}

inline GradedTensor three_form(const ChartPtr& chart, std::size_t a, std::size_t b, std::size_t c,
                               RationalFunction coeff = 1) {
  return GradedTensor::monomial(chart, TensorKind::form, {a, b, c}, std::move(coeff));
}

inline ManifoldSpec make_spec(std::vector<std::string> description, const BracketContext& ctx) {
  ManifoldSpec spec;
  spec.description = std::move(description);
  spec.scope.chart = ctx.chart();
  spec.tensors = {{"pi", ctx.pi()}, {"phi", ctx.phi()}, {"theta", ctx.theta()}};
  return spec;
}

/// π0 = ∂1∧∂2, φ0 = dx1∧dx3∧dx4 on ℝ⁴: twisted Poisson with φ0 ≠ 0.
inline BracketContext twisted_r4() {
  auto chart = euclidean(4);
  return BracketContext(bivector(chart, 0, 1), three_form(chart, 0, 2, 3), GradedTensor(chart, TensorKind::form, 1));
}

}  // namespace gallery_detail

inline const std::vector<GalleryEntry>& gallery() {
  using namespace gallery_detail;
  static const std::vector<GalleryEntry> entries{
      {"poisson_so3", "poisson", true,
       [] {
         auto chart = euclidean(3);
         auto x = [&](std::size_t i) { return var(chart, i).value(); };
         GradedTensor pi = bivector(chart, 0, 1, x(3)) + bivector(chart, 1, 2, x(1)) + bivector(chart, 2, 0, x(2));
         return make_spec({"Lie-Poisson structure of so(3) on R^3; phi = 0, theta = 0."},
                          BracketContext::poisson(pi));
       }},
      {"poisson_plane", "poisson", true,
       [] {
         return make_spec({"Symplectic plane; phi = 0, theta = 0."},
                          BracketContext::poisson(bivector(euclidean(2), 0, 1)));
       }},
      {"twisted_r4", "poisson", true,
       [] {
         return make_spec({"Twisted Poisson pair on R^4 (closed phi) viewed with theta = 0."}, twisted_r4());
       }},
      {"conformal_r4", "conformal", true,
       [] {
         BracketContext base = twisted_r4();
         Scalar f = Scalar::constant(base.chart(), 1) + var(base.chart(), 3) * var(base.chart(), 3);
         AtpStructure s = conformal_rescale(base.pi(), base.phi(), f);
         return make_spec({"Rescaling of the twisted pair on R^4 by the Casimir f = 1 + x3^2:",
                           "pi = f pi0, phi = phi0 / f, theta = -df / f."},
                          s.context());
       }},
      {"product_line_r5", "product_line", true,
       [] {
         BracketContext base = twisted_r4();
         AtpStructure s = product_with_line(base.pi(), base.phi());
         return make_spec({"Twisted pair on R^4 times the line with coordinate t, E = e^t:",
                           "pi = E pi0, phi = phi0 / E, theta = -dt; phi is not closed."},
                          s.context());
       }},
      {"r5", "r5", true,
       [] {
         auto chart = euclidean(5);
         Scalar one = Scalar::constant(chart, 1);
         AtpStructure s = r5_example(one + var(chart, 1) * var(chart, 1), one + var(chart, 3) * var(chart, 3));
         return make_spec({"Five-dimensional family with f = 1 + x1^2, g = 1 + x3^2, theta = dx5."}, s.context());
       }},
      {"r5_unit", "r5", true,
       [] {
         auto chart = euclidean(5);
         Scalar one = Scalar::constant(chart, 1);
         AtpStructure s = r5_example(one, one);
         return make_spec({"Five-dimensional family with f = g = 1, theta = dx5."}, s.context());
       }},
      {"r5_exp", "r5", true,
       [] {
         auto names = euclidean(5)->coordinates();
         auto chart = Chart::create(names, {AuxSymbol{"E", {{4, RationalFunction(Polynomial::variable(5))}}}});
         Scalar e = Scalar::variable(chart, "E");
         AtpStructure s = r5_example(e, e);
         return make_spec({"Five-dimensional family with f = g = E = e^x5, theta = dx5."}, s.context());
       }},
      {"r5_broken", "invalid", false,
       [] {
         auto chart = euclidean(5);
         Scalar one = Scalar::constant(chart, 1);
         AtpStructure s = r5_example(one, one);
         BracketContext ctx(s.pi(), s.phi() + three_form(chart, 0, 1, 2), s.theta());
         return make_spec({"NOT a valid structure: the f = g = 1 member with dx1^dx2^dx3 added to phi.",
                           "Fails phi_twisted_closed and master_equation."},
                          ctx);
       }},
  };
  return entries;
}

inline const GalleryEntry* find_gallery_entry(std::string_view name) {
  for (const auto& e : gallery())
    if (e.name == name) return &e;
  return nullptr;
}

}  // namespace atp
