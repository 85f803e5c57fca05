#pragma once

#include <utility>

#include "atp/errors.hpp"
#include "atp/polynomial.hpp"

namespace atp {

/// Quotient of two polynomials in canonical form: numerator and denominator
/// are coprime and the denominator has leading grlex coefficient one. Zero is
/// 0/1. Canonical forms are unique, so == is mathematical equality.
class RationalFunction {
 public:
  RationalFunction() : den_(1) {}
  RationalFunction(Polynomial p) : num_(std::move(p)), den_(1) {}  // NOLINT(google-explicit-constructor)
  RationalFunction(const Rational& c) : num_(c), den_(1) {}        // NOLINT(google-explicit-constructor)
  RationalFunction(long c) : num_(c), den_(1) {}                   // NOLINT(google-explicit-constructor)

  static RationalFunction fraction(Polynomial num, Polynomial den) {
    if (den.is_zero()) throw DivisionByZero("zero denominator");
    RationalFunction r;
    if (num.is_zero()) return r;
    Polynomial g = gcd(num, den);
    if (!g.is_one()) {
      num = exact_divide(num, g);
      den = exact_divide(den, g);
    }
    r.set_normalized(std::move(num), std::move(den));
    return r;
  }

  const Polynomial& numerator() const noexcept { return num_; }
  const Polynomial& denominator() const noexcept { return den_; }

  bool is_zero() const noexcept { return num_.is_zero(); }
  bool is_one() const noexcept { return num_.is_one() && den_.is_one(); }
  bool is_polynomial() const noexcept { return den_.is_one(); }
  bool is_constant() const noexcept { return num_.is_constant() && den_.is_one(); }
  Rational constant_value() const { return num_.constant_value(); }

  RationalFunction operator-() const {
    RationalFunction r = *this;
    r.num_ = -r.num_;
    return r;
  }

  RationalFunction inverse() const {
    if (is_zero()) throw DivisionByZero("inverse of zero");
    RationalFunction r;
    r.set_normalized(den_, num_);
    return r;
  }

  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) { return add(a, b, false); }
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return add(a, b, true); }

  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (a.is_polynomial() && b.is_polynomial()) return RationalFunction(a.num_ * b.num_);
    if (a.is_constant()) return b.scaled(a.constant_value());
    if (b.is_constant()) return a.scaled(b.constant_value());
    Polynomial g1 = gcd(a.num_, b.den_);
    Polynomial g2 = gcd(b.num_, a.den_);
    Polynomial n1 = g1.is_one() ? a.num_ : exact_divide(a.num_, g1);
    Polynomial d2 = g1.is_one() ? b.den_ : exact_divide(b.den_, g1);
    Polynomial n2 = g2.is_one() ? b.num_ : exact_divide(b.num_, g2);
    Polynomial d1 = g2.is_one() ? a.den_ : exact_divide(a.den_, g2);
    RationalFunction r;
    r.set_normalized(n1 * n2, d1 * d2);
    return r;
  }

  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
    if (b.is_zero()) throw DivisionByZero("division by the zero scalar");
    return a * b.inverse();
  }

  RationalFunction& operator+=(const RationalFunction& o) { return *this = *this + o; }
  RationalFunction& operator-=(const RationalFunction& o) { return *this = *this - o; }
  RationalFunction& operator*=(const RationalFunction& o) { return *this = *this * o; }
  RationalFunction& operator/=(const RationalFunction& o) { return *this = *this / o; }

  RationalFunction scaled(const Rational& c) const {
    if (c == 0) return {};
    RationalFunction r = *this;
    r.num_ = r.num_.scaled(c);
    return r;
  }

  /// Integer power; negative exponents invert.
  friend RationalFunction pow(const RationalFunction& base, long n) {
    if (n < 0) return pow(base.inverse(), -n);
    RationalFunction r;
    r.num_ = pow(base.num_, static_cast<unsigned>(n));
    r.den_ = pow(base.den_, static_cast<unsigned>(n));
    return r;
  }

  RationalFunction remap(const std::vector<std::size_t>& mapping) const {
    RationalFunction r;
    r.num_ = num_.remap(mapping);
    r.den_ = den_.remap(mapping);
    // Renaming may change which term leads the denominator.
    r.set_normalized(std::move(r.num_), std::move(r.den_));
    return r;
  }

  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

 private:
  /// Stores a coprime pair, moving the denominator's leading coefficient
  /// into the numerator.
  void set_normalized(Polynomial num, Polynomial den) {
    if (num.is_zero()) {
      num_ = Polynomial();
      den_ = Polynomial(1);
      return;
    }
    const Rational lc = den.leading_coeff();
    if (lc != 1) {
      Rational inv = Rational(1) / lc;
      num = num.scaled(inv);
      den = den.scaled(inv);
    }
    num_ = std::move(num);
    den_ = std::move(den);
  }

  static RationalFunction add(const RationalFunction& a, const RationalFunction& b, bool subtract) {
    if (b.is_zero()) return a;
    if (a.is_zero()) return subtract ? -b : b;
    if (a.is_polynomial() && b.is_polynomial())
      return RationalFunction(subtract ? a.num_ - b.num_ : a.num_ + b.num_);
    if (a.den_ == b.den_) {
      Polynomial n = subtract ? a.num_ - b.num_ : a.num_ + b.num_;
      return fraction(std::move(n), a.den_);
    }
    // Henrici: only the common part of the denominators can cancel.
    Polynomial g = gcd(a.den_, b.den_);
    Polynomial ad = g.is_one() ? a.den_ : exact_divide(a.den_, g);
    Polynomial bd = g.is_one() ? b.den_ : exact_divide(b.den_, g);
    Polynomial n = subtract ? a.num_ * bd - b.num_ * ad : a.num_ * bd + b.num_ * ad;
    Polynomial d = a.den_ * bd;
    RationalFunction r;
    if (n.is_zero()) return r;
    if (!g.is_one()) {
      Polynomial g2 = gcd(n, g);
      if (!g2.is_one()) {
        n = exact_divide(n, g2);
        d = exact_divide(d, g2);
      }
    }
    r.set_normalized(std::move(n), std::move(d));
    return r;
  }

  Polynomial num_;
  Polynomial den_;
};

}  // namespace atp
