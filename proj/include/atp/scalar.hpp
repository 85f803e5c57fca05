#pragma once

#include <string_view>
#include <utility>

#include "atp/chart.hpp"

namespace atp {

/// Exact rational function on a chart. Immutable value.
class Scalar {
 public:
  Scalar(ChartPtr chart, RationalFunction value) : chart_(std::move(chart)), value_(std::move(value)) {
    if (!chart_) throw InvalidChart("scalar without a chart");
  }

  static Scalar constant(ChartPtr chart, const Rational& c) { return Scalar(std::move(chart), RationalFunction(c)); }

  /// The coordinate or auxiliary symbol called `name`.
  static Scalar variable(ChartPtr chart, std::string_view name) {
    auto v = chart->variable_index(name);
    if (!v) throw UnknownCoordinate("'" + std::string(name) + "' is not a variable of the chart");
    return Scalar(std::move(chart), RationalFunction(Polynomial::variable(*v)));
  }

  const ChartPtr& chart() const noexcept { return chart_; }
  const RationalFunction& value() const noexcept { return value_; }

  bool is_zero() const noexcept { return value_.is_zero(); }

  Scalar operator-() const { return Scalar(chart_, -value_); }

  friend Scalar operator+(const Scalar& a, const Scalar& b) { return a.combine(b, a.value_ + b.value_); }
  friend Scalar operator-(const Scalar& a, const Scalar& b) { return a.combine(b, a.value_ - b.value_); }
  friend Scalar operator*(const Scalar& a, const Scalar& b) { return a.combine(b, a.value_ * b.value_); }
  friend Scalar operator/(const Scalar& a, const Scalar& b) {
    require_same_chart(a.chart_, b.chart_);
    if (b.is_zero()) throw DivisionByZero("division by the zero scalar");
    return Scalar(a.chart_, a.value_ / b.value_);
  }

  Scalar inverse() const { return Scalar(chart_, value_.inverse()); }

  Scalar partial(std::size_t coord) const { return Scalar(chart_, chart_->partial(value_, coord)); }
  Scalar partial(std::string_view coord) const { return partial(chart_->require_coordinate(coord)); }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.chart_ == b.chart_ && a.value_ == b.value_;
  }

 private:
  Scalar combine(const Scalar& other, RationalFunction value) const {
    require_same_chart(chart_, other.chart_);
    return Scalar(chart_, std::move(value));
  }

  ChartPtr chart_;
  RationalFunction value_;
};

enum class ArithmeticOp { add, sub, mul, div };

inline Scalar scalar_arithmetic(const Scalar& a, const Scalar& b, ArithmeticOp op) {
  switch (op) {
    case ArithmeticOp::add: return a + b;
    case ArithmeticOp::sub: return a - b;
    case ArithmeticOp::mul: return a * b;
    case ArithmeticOp::div: return a / b;
  }
  throw Error("unknown arithmetic operation");
}

inline Scalar partial_derivative(const Scalar& a, std::string_view coord) { return a.partial(coord); }

inline bool is_zero(const Scalar& a) noexcept { return a.is_zero(); }

}  // namespace atp
