#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>

#include "atp/errors.hpp"

namespace atp {

/// Upper bound on the number of variables (coordinates plus auxiliary
/// symbols) a chart may declare.
inline constexpr std::size_t max_variables = 16;

/// Exponent vector over at most `max_variables` variables.
class Monomial {
 public:
  using Exponent = std::uint16_t;

  Monomial() = default;

  static Monomial variable(std::size_t var, unsigned power = 1) {
    Monomial m;
    m.set(var, power);
    return m;
  }

  unsigned operator[](std::size_t var) const noexcept { return exponents_[var]; }
  unsigned degree() const noexcept { return degree_; }
  bool is_one() const noexcept { return degree_ == 0; }

  void set(std::size_t var, unsigned power) {
    if (var >= max_variables) throw InvalidChart("variable index out of range");
    if (power > std::numeric_limits<Exponent>::max()) throw MathError("exponent overflow");
    degree_ = degree_ - exponents_[var] + power;
    exponents_[var] = static_cast<Exponent>(power);
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial r;
    for (std::size_t i = 0; i < max_variables; ++i) {
      unsigned e = unsigned(a.exponents_[i]) + b.exponents_[i];
      if (e > std::numeric_limits<Exponent>::max()) throw MathError("exponent overflow");
      r.exponents_[i] = static_cast<Exponent>(e);
    }
    r.degree_ = a.degree_ + b.degree_;
    return r;
  }

  /// True when `this` divides `other`.
  bool divides(const Monomial& other) const noexcept {
    for (std::size_t i = 0; i < max_variables; ++i)
      if (exponents_[i] > other.exponents_[i]) return false;
    return true;
  }

  /// Exact quotient; requires `b.divides(a)`.
  friend Monomial operator/(const Monomial& a, const Monomial& b) {
    Monomial r;
    for (std::size_t i = 0; i < max_variables; ++i) r.exponents_[i] = a.exponents_[i] - b.exponents_[i];
    r.degree_ = a.degree_ - b.degree_;
    return r;
  }

  friend Monomial gcd(const Monomial& a, const Monomial& b) {
    Monomial r;
    for (std::size_t i = 0; i < max_variables; ++i) {
      r.exponents_[i] = std::min(a.exponents_[i], b.exponents_[i]);
      r.degree_ += r.exponents_[i];
    }
    return r;
  }

  friend bool operator==(const Monomial& a, const Monomial& b) noexcept {
    return a.degree_ == b.degree_ && a.exponents_ == b.exponents_;
  }

  /// Graded lexicographic order: total degree first, then the first variable
  /// (in declaration order) with differing exponent decides.
  friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) noexcept {
    if (a.degree_ != b.degree_) return a.degree_ <=> b.degree_;
    for (std::size_t i = 0; i < max_variables; ++i)
      if (a.exponents_[i] != b.exponents_[i]) return a.exponents_[i] <=> b.exponents_[i];
    return std::strong_ordering::equal;
  }

  std::size_t hash() const noexcept {
    std::size_t h = degree_;
    for (auto e : exponents_) h = h * 1000003u ^ e;
    return h;
  }

 private:
  std::array<Exponent, max_variables> exponents_{};
  std::uint32_t degree_ = 0;
};

}  // namespace atp

template <>
struct std::hash<atp::Monomial> {
  std::size_t operator()(const atp::Monomial& m) const noexcept { return m.hash(); }
};
