#pragma once

#include <gmpxx.h>

#include <string>

namespace atp {

/// Arbitrary precision rational; always kept canonical by GMP.
using Rational = mpq_class;
using Integer = mpz_class;

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

}  // namespace atp
