#pragma once

#include <array>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lrcut/polynomial.hpp"

namespace lrcut {

class RealField;
using FieldPtr = std::shared_ptr<const RealField>;

/// Q(theta) for a real root theta of an irreducible monic integer polynomial.
/// Degree 1 is the rational field.
class RealField {
 public:
  /// `minpoly` lists coefficients c0, c1, ..., 1 (ascending). The real root
  /// nearest `root_hint` is selected.
  static FieldPtr create(const std::vector<Integer>& minpoly, const Rational& root_hint);
  static FieldPtr rationals();

  int degree() const { return degree_; }
  const std::vector<Integer>& minimal_polynomial() const { return minpoly_; }
  const Rational& root_hint() const { return hint_; }
  RationalInterval isolation() const { return levels_.front(); }

  /// theta^j in the power basis for 0 <= j <= 2*degree-2.
  const std::vector<Rational>& power_coordinates(int j) const { return reduction_[static_cast<std::size_t>(j)]; }
  const std::vector<double>& double_powers() const { return dpow_; }

  /// Nested dyadic refinement of the isolating interval; level l has width
  /// isolation width / 2^(16 l).
  RationalInterval root_interval(std::size_t level) const;

  struct FixedPoint {
    long precision = 0;
    std::vector<Integer> value;  // approx theta^i * 2^precision
    std::vector<Integer> error;  // rigorous bound on |value_i - theta^i 2^precision|
  };
  /// Fixed-point tables with precision 64 * 2^step bits.
  std::shared_ptr<const FixedPoint> fixed_point(std::size_t step) const;

  bool same_as(const RealField& other) const;

 private:
  RealField() = default;
  void init_tables();

  int degree_ = 1;
  std::vector<Integer> minpoly_;
  Polynomial poly_;
  Rational hint_;
  std::vector<std::vector<Rational>> reduction_;
  std::vector<double> dpow_;

  mutable std::mutex mutex_;
  mutable std::vector<RationalInterval> levels_;
  mutable std::vector<std::shared_ptr<const FixedPoint>> fixed_;
};

class FieldElement {
 public:
  FieldElement() = default;
  FieldElement(FieldPtr field, const Rational& value);
  FieldElement(FieldPtr field, std::vector<Rational> coordinates);
  static FieldElement theta(FieldPtr field);

  const FieldPtr& field() const { return field_; }
  const std::vector<Rational>& coordinates() const { return c_; }

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator-() const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator/(const FieldElement& o) const;
  FieldElement operator+(const Rational& q) const;
  FieldElement operator-(const Rational& q) const;
  FieldElement operator*(const Rational& q) const;
  FieldElement& operator+=(const FieldElement& o);
  FieldElement& operator-=(const FieldElement& o);

  bool operator==(const FieldElement& o) const;
  bool operator!=(const FieldElement& o) const { return !(*this == o); }
  bool operator<(const FieldElement& o) const { return compare(o) < 0; }
  int compare(const FieldElement& o) const {
    if (c_ == o.c_) return 0;
    return (*this - o).sign();
  }

  bool is_zero() const;
  bool is_rational() const;
  Rational rational_part() const { return c_.empty() ? Rational(0) : c_[0]; }
  int sign() const;
  /// sign(x - offset) without building the difference.
  int sign_minus(const Rational& offset) const;

  FieldElement inverse() const;
  Integer floor() const;
  Integer ceil() const;
  std::pair<Integer, FieldElement> floor_frac() const;
  FieldElement frac() const { return floor_frac().second; }

  /// Rational interval of length <= width containing x. Calls with smaller
  /// widths return nested intervals.
  RationalInterval to_interval(const Rational& width) const;
  double to_double() const;
  /// Double approximation with a rigorous bound on its absolute error, or
  /// an infinite bound if the double path cannot certify one.
  std::pair<double, double> approx_with_error() const;

  /// Integers (a, b, c), a > 0, gcd 1, with a x^2 + b x + c = 0, if x has
  /// degree exactly 2 over Q.
  std::optional<std::array<Integer, 3>> quadratic_relation() const;

  std::string to_string() const;  // "c0 + c1*t + ..." with rational coords
  std::vector<std::string> coordinate_strings() const;

 private:
  int sign_of(const std::vector<Rational>& c) const;
  FieldPtr field_;
  std::vector<Rational> c_;
};

inline FieldElement operator*(const Rational& q, const FieldElement& x) { return x * q; }

/// Parses "p/q", an integer, or a plain decimal such as "-1.25".
Rational parse_rational(const std::string& s);

}  // namespace lrcut
