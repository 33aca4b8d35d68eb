#pragma once

#include <gmpxx.h>

#include <optional>
#include <vector>

namespace lrcut {

using Integer = mpz_class;
using Rational = mpq_class;

struct RationalInterval {
  Rational lo;
  Rational hi;

  Rational width() const { return hi - lo; }
  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
};

/// Univariate polynomial over Q, coefficients in ascending powers.
/// Trailing zeros are stripped, so the zero polynomial is the empty vector.
using Polynomial = std::vector<Rational>;

namespace poly {

Polynomial from_integers(const std::vector<Integer>& coefficients);
void normalize(Polynomial& p);
int degree(const Polynomial& p);  // -1 for the zero polynomial
Rational evaluate(const Polynomial& p, const Rational& x);
int sign_at(const Polynomial& p, const Rational& x);
Polynomial derivative(const Polynomial& p);
Polynomial multiply(const Polynomial& a, const Polynomial& b);
/// Quotient and remainder of a / b; b must be nonzero.
std::pair<Polynomial, Polynomial> divide(const Polynomial& a, const Polynomial& b);
Polynomial gcd(Polynomial a, Polynomial b);  // monic, or zero

std::vector<Polynomial> sturm_sequence(const Polynomial& p);
/// Number of distinct real roots in the half-open interval (a, b].
int count_roots(const std::vector<Polynomial>& sturm, const Rational& a, const Rational& b);

/// Disjoint isolating intervals, in increasing order, one per real root of a
/// squarefree polynomial. A rational root r is returned as the point [r, r].
std::vector<RationalInterval> isolate_real_roots(const Polynomial& p);

/// Bisects an isolating interval (sign change at the endpoints) until its
/// width is at most `width`.
RationalInterval refine_root(const Polynomial& p, RationalInterval interval, const Rational& width);

/// Irreducibility over Q of an integer polynomial via Kronecker's method.
/// Returns std::nullopt if the divisor search exceeds its work limit.
std::optional<bool> is_irreducible(const std::vector<Integer>& coefficients);

}  // namespace poly
}  // namespace lrcut
