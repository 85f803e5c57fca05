#pragma once

// Canonical text for scalars and tensors. The output is accepted by the
// expression parser and reparses to an equal value.

#include <string>

#include "atp/graded_tensor.hpp"

namespace atp {

inline std::string to_string(const Monomial& mono, const Chart& chart) {
  std::string out;
  for (std::size_t v = 0; v < chart.variable_count(); ++v) {
    if (!mono[v]) continue;
    if (!out.empty()) out += '*';
    out += chart.variable_name(v);
    if (mono[v] > 1) out += '^' + std::to_string(mono[v]);
  }
  return out;
}

inline std::string to_string(const Polynomial& p, const Chart& chart) {
  if (p.is_zero()) return "0";
  std::string out;
  for (const Term& t : p.terms()) {
    std::string term;
    if (t.monomial.is_one()) {
      term = to_string(t.coeff);
    } else if (t.coeff == 1) {
      term = to_string(t.monomial, chart);
    } else if (t.coeff == -1) {
      term = "-" + to_string(t.monomial, chart);
    } else {
      term = to_string(t.coeff) + "*" + to_string(t.monomial, chart);
    }
    if (out.empty()) {
      out = term;
    } else if (term[0] == '-') {
      out += " - " + term.substr(1);
    } else {
      out += " + " + term;
    }
  }
  return out;
}

inline std::string to_string(const RationalFunction& f, const Chart& chart) {
  std::string num = to_string(f.numerator(), chart);
  if (f.is_polynomial()) return num;
  std::string den = to_string(f.denominator(), chart);
  if (f.numerator().size() > 1) num = "(" + num + ")";
  if (den.find_first_of(" */") != std::string::npos) den = "(" + den + ")";
  return num + "/" + den;
}

inline std::string to_string(const Scalar& s) { return to_string(s.value(), *s.chart()); }

inline std::string basis_string(IndexSet key, TensorKind kind, const Chart& chart) {
  std::string out;
  for (std::size_t i : key.elements()) {
    if (!out.empty()) out += '^';
    out += (kind == TensorKind::form ? "d" : "∂") + chart.variable_name(i);
  }
  return out;
}

/// Components in key order, e.g. "(x5) * dx1^dx3 - dx2^dx3" or "∂x1^∂x2".
inline std::string to_string(const GradedTensor& t) {
  const Chart& chart = *t.chart();
  if (t.is_zero()) return "0";
  if (t.degree() == 0) return to_string(t.component(IndexSet{}), chart);
  std::string out;
  for (const auto& [key, c] : t.components()) {
    std::string basis = basis_string(key, t.kind(), chart);
    std::string coeff = to_string(c, chart);
    std::string term = coeff == "1" ? basis : coeff == "-1" ? "-" + basis : "(" + coeff + ") * " + basis;
    if (out.empty()) {
      out = term;
    } else if (term[0] == '-') {
      out += " - " + term.substr(1);
    } else {
      out += " + " + term;
    }
  }
  return out;
}

}  // namespace atp
