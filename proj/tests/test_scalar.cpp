#include <catch2/catch_amalgamated.hpp>

#include "support.hpp"

using namespace atp;
using namespace testing_support;

TEST_CASE("scalar arithmetic examples", "[scalar]") {
  auto chart = euclidean(5);
  auto x1 = x(chart, 1), x5 = x(chart, 5);
  auto one = constant(chart, 1);

  CHECK(scalar_arithmetic(x1, x1, ArithmeticOp::sub).is_zero());
  CHECK(scalar_arithmetic(one + x1 * x1, one + x1 * x1, ArithmeticOp::div) == one);

  Scalar q = scalar_arithmetic(x1 * x1 - x5 * x5, x1 - x5, ArithmeticOp::div);
  CHECK(q == x1 + x5);
  // Re-multiply with the reference multiplication.
  CHECK(naive_multiply(q.value().numerator(), (x1 - x5).value().numerator()) == (x1 * x1 - x5 * x5).value().numerator());
  CHECK(q.value().denominator().is_one());
}

TEST_CASE("scalar errors", "[scalar]") {
  auto a = euclidean(2), b = euclidean(2);
  CHECK_THROWS_AS(x(a, 1) / constant(a, 0), DivisionByZero);
  CHECK_THROWS_AS(x(a, 1) + x(b, 1), ChartMismatch);
  CHECK_THROWS_AS(partial_derivative(x(a, 1), "y"), UnknownCoordinate);
}

TEST_CASE("partial derivatives", "[scalar]") {
  auto chart = euclidean5_with_exp();
  auto x1 = x(chart, 1), x5 = x(chart, 5);
  auto one = constant(chart, 1);
  auto e = Scalar::variable(chart, "E");

  CHECK(partial_derivative(x1 * x1 * x5, "x1") == constant(chart, 2) * x1 * x5);
  CHECK(partial_derivative(e, "x5") == e);
  CHECK(partial_derivative(e, "x1").is_zero());
  Scalar inv = one / (one + x1 * x1);
  Scalar expected = constant(chart, -2) * x1 / ((one + x1 * x1) * (one + x1 * x1));
  CHECK(partial_derivative(inv, "x1") == expected);
  CHECK(partial_derivative(one / e, "x5") == constant(chart, -1) / e);
}

TEST_CASE("is_zero examples", "[scalar]") {
  auto chart = euclidean(2);
  auto x1 = x(chart, 1), x2 = x(chart, 2);
  auto one = constant(chart, 1);
  CHECK(is_zero(x1 - x1));
  CHECK(is_zero(x1 * x2 - x2 * x1));
  CHECK(is_zero((one + x1 * x1) * (one / (one + x1 * x1)) - one));
  CHECK_FALSE(is_zero(x1));
}

TEST_CASE("canonical form", "[scalar]") {
  auto chart = euclidean(2);
  auto x1 = x(chart, 1), x2 = x(chart, 2);
  auto one = constant(chart, 1);
  Scalar f = (constant(chart, 2) * x1 + constant(chart, 2)) / (constant(chart, 4) * x1 * x1 - constant(chart, 4));
  // 2(x1+1) / 4(x1-1)(x1+1) = (1/2) / (x1 - 1)
  CHECK(f.value().denominator() == (x1 - one).value().numerator());
  CHECK(f.value().numerator() == Polynomial(Rational(1, 2)));
  RationalFunction again = RationalFunction::fraction(f.value().numerator(), f.value().denominator());
  CHECK(again == f.value());
  CHECK(again.numerator() == f.value().numerator());
  CHECK(again.denominator() == f.value().denominator());
  CHECK((x1 * x2 / (x2 * x2)) == x1 / x2);
}

TEST_CASE("polynomial gcd matches the reference product", "[scalar]") {
  auto chart = euclidean(3);
  Random rng(11);
  for (int i = 0; i < 40; ++i) {
    Polynomial a = rng.polynomial(*chart, 2), b = rng.polynomial(*chart, 2), c = rng.polynomial(*chart, 2);
    if (a.is_zero() || b.is_zero() || c.is_zero()) continue;
    Polynomial ac = naive_multiply(a, c), bc = naive_multiply(b, c);
    Polynomial g = gcd(ac, bc);
    // c divides the gcd, and the gcd divides both products.
    CHECK(divide(g, c.monic()).second.is_zero());
    CHECK(divide(ac, g).second.is_zero());
    CHECK(divide(bc, g).second.is_zero());
  }
}

TEST_CASE("fast gcd agrees with remainder sequences", "[scalar][property]") {
  auto chart = euclidean5_with_exp();
  Random rng(12);
  for (int i = 0; i < 60; ++i) {
    Polynomial a = rng.polynomial(*chart, 3, 4, true), b = rng.polynomial(*chart, 3, 4, true);
    Polynomial c = rng.coin() ? rng.polynomial(*chart, 2, 3, true) : Polynomial(1);
    if (a.is_zero() || b.is_zero() || c.is_zero()) continue;
    Polynomial ac = a * c, bc = b * c;
    CHECK(gcd(ac, bc) == atp::detail::remainder_gcd(ac, bc).monic());
    CHECK(gcd(a, b) == atp::detail::remainder_gcd(a, b).monic());
  }
}

TEST_CASE("field axioms on random scalars", "[scalar][property]") {
  auto chart = euclidean5_with_exp();
  Random rng(2024);
  for (int i = 0; i < 60; ++i) {
    Scalar a = rng.coin() ? rng.rational_scalar(chart, true) : rng.scalar(chart, 2, true);
    Scalar b = rng.rational_scalar(chart, true);
    Scalar c = rng.scalar(chart, 2, true);
    CHECK(is_zero((a + b) + c - (a + (b + c))));
    CHECK(is_zero(a * (b + c) - (a * b + a * c)));
    CHECK(is_zero((a * b) * c - a * (b * c)));
    if (!b.is_zero()) CHECK(is_zero((a / b) * b - a));
  }
}

TEST_CASE("mixed partials commute", "[scalar][property]") {
  auto chart = euclidean5_with_exp();
  Random rng(7);
  for (int i = 0; i < 40; ++i) {
    Scalar a = rng.coin() ? rng.rational_scalar(chart, true) : rng.scalar(chart, 3, true);
    for (std::size_t p = 0; p < 5; ++p)
      for (std::size_t q = p + 1; q < 5; ++q) CHECK(a.partial(p).partial(q) == a.partial(q).partial(p));
  }
}

TEST_CASE("normalizing twice equals normalizing once", "[scalar][property]") {
  auto chart = euclidean(4);
  Random rng(99);
  for (int i = 0; i < 40; ++i) {
    Polynomial n = rng.polynomial(*chart, 2), d = rng.polynomial(*chart, 2);
    if (d.is_zero()) continue;
    RationalFunction once = RationalFunction::fraction(n * d, d * d);
    RationalFunction twice = RationalFunction::fraction(once.numerator(), once.denominator());
    CHECK(once.numerator() == twice.numerator());
    CHECK(once.denominator() == twice.denominator());
    CHECK(once.denominator().leading_coeff() == 1);
  }
}

TEST_CASE("chart validation", "[scalar]") {
  CHECK_THROWS_AS(Chart::create({}), InvalidChart);
  CHECK_THROWS_AS(Chart::create({"x", "x"}), InvalidChart);
  CHECK_THROWS_AS(Chart::create({"1x"}), InvalidChart);
  CHECK_THROWS_AS(Chart::create({"x"}, {AuxSymbol{"x", {}}}), InvalidChart);
  // A table entry naming a variable outside the chart.
  CHECK_THROWS_AS(Chart::create({"x"}, {AuxSymbol{"E", {{0, RationalFunction(Polynomial::variable(5))}}}}),
                  InvalidChart);
}
