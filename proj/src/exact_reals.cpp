#include "lrcut/exact_reals.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "lrcut/error.hpp"
#include "lrcut/rational_matrix.hpp"

namespace lrcut {

namespace {

Integer ceil_q(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Integer floor_q(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Rational pow2(long e) {
  Rational r = 1;
  if (e >= 0) {
    mpz_mul_2exp(r.get_num_mpz_t(), r.get_num_mpz_t(), static_cast<mp_bitcnt_t>(e));
  } else {
    mpz_mul_2exp(r.get_den_mpz_t(), r.get_den_mpz_t(), static_cast<mp_bitcnt_t>(-e));
  }
  return r;
}

RationalInterval imul(const RationalInterval& a, const RationalInterval& b) {
  Rational p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  return {*std::min_element(p, p + 4), *std::max_element(p, p + 4)};
}

}  // namespace

FieldPtr RealField::rationals() {
  static FieldPtr q = [] {
    auto f = std::shared_ptr<RealField>(new RealField());
    f->degree_ = 1;
    f->minpoly_ = {Integer(0), Integer(1)};
    f->poly_ = poly::from_integers(f->minpoly_);
    f->hint_ = 0;
    f->levels_ = {{Rational(0), Rational(0)}};
    f->init_tables();
    return FieldPtr(f);
  }();
  return q;
}

FieldPtr RealField::create(const std::vector<Integer>& minpoly, const Rational& root_hint) {
  if (minpoly.size() < 2) fail("BadParams", "minimal polynomial must have degree >= 1");
  if (minpoly.back() != 1) fail("BadParams", "minimal polynomial must be monic");
  if (minpoly.size() == 2 && minpoly[0] == 0) return rationals();
  auto irreducible = poly::is_irreducible(minpoly);
  if (irreducible.has_value() && !*irreducible) fail("BadParams", "minimal polynomial is reducible over Q");

  auto f = std::shared_ptr<RealField>(new RealField());
  f->degree_ = static_cast<int>(minpoly.size()) - 1;
  f->minpoly_ = minpoly;
  f->poly_ = poly::from_integers(minpoly);
  f->hint_ = root_hint;
  auto roots = poly::isolate_real_roots(f->poly_);
  if (roots.empty()) fail("BadParams", "minimal polynomial has no real root");
  // Pick the root nearest the hint.
  Rational eps = pow2(-60);
  std::size_t best = 0;
  Rational best_dist = -1;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    auto iv = poly::refine_root(f->poly_, roots[i], eps);
    Rational mid = (iv.lo + iv.hi) / 2;
    Rational dist = abs(mid - root_hint);
    if (best_dist < 0 || dist < best_dist) {
      best_dist = dist;
      best = i;
    }
  }
  f->levels_ = {roots[best]};
  if (f->degree_ == 1) {
    // x - q with q = -c0: a rational generator, keep it but coordinates are rational anyway.
    return rationals();
  }
  f->init_tables();
  return FieldPtr(f);
}

void RealField::init_tables() {
  const auto n = static_cast<std::size_t>(degree_);
  reduction_.clear();
  std::vector<Rational> cur(n, Rational(0));
  cur[0] = 1;
  for (std::size_t j = 0; j + 1 < 2 * n; ++j) {
    reduction_.push_back(cur);
    if (n == 1) {
      // theta = 0 placeholder for the rational field.
      cur.assign(1, Rational(0));
      continue;
    }
    // multiply by theta: shift, then reduce theta^n = -sum c_i theta^i.
    Rational top = cur[n - 1];
    for (std::size_t i = n - 1; i > 0; --i) cur[i] = cur[i - 1];
    cur[0] = 0;
    for (std::size_t i = 0; i < n; ++i) cur[i] -= top * Rational(minpoly_[i]);
  }
  dpow_.assign(n, 1.0);
  if (n > 1) {
    auto iv = root_interval(6);
    double t = Rational((iv.lo + iv.hi) / 2).get_d();
    for (std::size_t i = 1; i < n; ++i) dpow_[i] = dpow_[i - 1] * t;
  }
}

bool RealField::same_as(const RealField& other) const {
  if (this == &other) return true;
  if (minpoly_ != other.minpoly_) return false;
  if (degree_ == 1) return true;
  auto a = isolation(), b = other.isolation();
  return !(a.hi < b.lo || b.hi < a.lo);
}

RationalInterval RealField::root_interval(std::size_t level) const {
  std::lock_guard<std::mutex> lock(mutex_);
  while (levels_.size() <= level) {
    RationalInterval iv = levels_.back();
    if (iv.lo == iv.hi) {
      levels_.push_back(iv);
      continue;
    }
    int slo = poly::sign_at(poly_, iv.lo);
    for (int step = 0; step < 16; ++step) {
      Rational mid = (iv.lo + iv.hi) / 2;
      int sm = poly::sign_at(poly_, mid);
      if (sm == 0) {
        iv = {mid, mid};
        break;
      }
      if (sm == slo) {
        iv.lo = mid;
      } else {
        iv.hi = mid;
      }
    }
    levels_.push_back(iv);
  }
  return levels_[level];
}

std::shared_ptr<const RealField::FixedPoint> RealField::fixed_point(std::size_t step) const {
  {
    std::lock_guard<std::mutex> lock(mutex_);
    if (step < fixed_.size() && fixed_[step]) return fixed_[step];
  }
  const long precision = 64L << step;
  const auto n = static_cast<std::size_t>(degree_);
  // Bound M >= |theta| and choose the interval so the power errors stay below 1 ulp.
  auto iso = isolation();
  Rational m = std::max(abs(iso.lo), abs(iso.hi)) + 1;
  long mbits = static_cast<long>(mpz_sizeinbase(ceil_q(m).get_mpz_t(), 2));
  long need = precision + static_cast<long>(n) * (mbits + 1) + 8;
  Rational iso_w = iso.width();
  std::size_t level = 0;
  long have = 0;
  if (sgn(iso_w) > 0) {
    have = -static_cast<long>(mpz_sizeinbase(ceil_q(iso_w).get_mpz_t(), 2));
  }
  while (have + 16 * static_cast<long>(level) < need) ++level;
  RationalInterval iv = root_interval(level);
  Rational mid = (iv.lo + iv.hi) / 2;
  Rational half = iv.width() / 2;
  Rational scale = pow2(precision);

  auto fp = std::make_shared<FixedPoint>();
  fp->precision = precision;
  Rational p = 1;
  Rational mpow = 1;  // M^(i-1)
  for (std::size_t i = 0; i < n; ++i) {
    fp->value.push_back(floor_q(p * scale));
    Rational err = (i == 0) ? Rational(0) : Rational(static_cast<long>(i)) * mpow * half * scale;
    fp->error.push_back(ceil_q(err) + 1);
    if (i > 0) mpow *= m;
    p *= mid;
  }
  std::lock_guard<std::mutex> lock(mutex_);
  if (fixed_.size() <= step) fixed_.resize(step + 1);
  if (!fixed_[step]) fixed_[step] = fp;
  return fixed_[step];
}

// ---------------------------------------------------------------------------

namespace {

FieldPtr unify(const FieldPtr& a, const FieldPtr& b) {
  if (!a) return b ? b : RealField::rationals();
  if (!b) return a;
  if (a == b) return a;
  if (a->degree() == 1) return b;
  if (b->degree() == 1) return a;
  if (a->same_as(*b)) return a;
  fail("BadParams", "field elements from different number fields");
}

std::vector<Rational> lift(const std::vector<Rational>& c, const FieldPtr& f) {
  std::vector<Rational> out(static_cast<std::size_t>(f->degree()), Rational(0));
  for (std::size_t i = 0; i < c.size() && i < out.size(); ++i) out[i] = c[i];
  return out;
}

}  // namespace

FieldElement::FieldElement(FieldPtr field, const Rational& value) : field_(field ? std::move(field) : RealField::rationals()) {
  c_.assign(static_cast<std::size_t>(field_->degree()), Rational(0));
  c_[0] = value;
}

FieldElement::FieldElement(FieldPtr field, std::vector<Rational> coordinates)
    : field_(field ? std::move(field) : RealField::rationals()), c_(std::move(coordinates)) {
  if (c_.size() > static_cast<std::size_t>(field_->degree())) fail("BadParams", "too many field coordinates");
  c_.resize(static_cast<std::size_t>(field_->degree()), Rational(0));
}

FieldElement FieldElement::theta(FieldPtr field) {
  std::vector<Rational> c(static_cast<std::size_t>(field->degree()), Rational(0));
  if (field->degree() == 1) return FieldElement(field, Rational(0));
  c[1] = 1;
  return FieldElement(field, c);
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
  FieldPtr f = unify(field_, o.field_);
  auto a = lift(c_, f);
  auto b = lift(o.c_, f);
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return FieldElement(f, std::move(a));
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
  FieldPtr f = unify(field_, o.field_);
  auto a = lift(c_, f);
  auto b = lift(o.c_, f);
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return FieldElement(f, std::move(a));
}

FieldElement FieldElement::operator-() const {
  auto a = c_;
  for (auto& v : a) v = -v;
  return FieldElement(field_, std::move(a));
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
  FieldPtr f = unify(field_, o.field_);
  auto a = lift(c_, f);
  auto b = lift(o.c_, f);
  const std::size_t n = a.size();
  std::vector<Rational> prod(2 * n - 1, Rational(0));
  for (std::size_t i = 0; i < n; ++i) {
    if (sgn(a[i]) == 0) continue;
    for (std::size_t j = 0; j < n; ++j) prod[i + j] += a[i] * b[j];
  }
  std::vector<Rational> out(prod.begin(), prod.begin() + static_cast<long>(n));
  for (std::size_t j = n; j < prod.size(); ++j) {
    if (sgn(prod[j]) == 0) continue;
    const auto& red = f->power_coordinates(static_cast<int>(j));
    for (std::size_t i = 0; i < n; ++i) out[i] += prod[j] * red[i];
  }
  return FieldElement(f, std::move(out));
}

FieldElement FieldElement::operator/(const FieldElement& o) const { return *this * o.inverse(); }

FieldElement FieldElement::operator+(const Rational& q) const {
  auto a = c_;
  a[0] += q;
  return FieldElement(field_, std::move(a));
}

FieldElement FieldElement::operator-(const Rational& q) const {
  auto a = c_;
  a[0] -= q;
  return FieldElement(field_, std::move(a));
}

FieldElement FieldElement::operator*(const Rational& q) const {
  auto a = c_;
  for (auto& v : a) v *= q;
  return FieldElement(field_, std::move(a));
}

FieldElement& FieldElement::operator+=(const FieldElement& o) { return *this = *this + o; }
FieldElement& FieldElement::operator-=(const FieldElement& o) { return *this = *this - o; }

bool FieldElement::operator==(const FieldElement& o) const {
  if (c_.size() == o.c_.size()) return c_ == o.c_;
  return (*this - o).is_zero();
}

bool FieldElement::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const Rational& v) { return sgn(v) == 0; });
}

bool FieldElement::is_rational() const {
  return std::all_of(c_.begin() + (c_.empty() ? 0 : 1), c_.end(), [](const Rational& v) { return sgn(v) == 0; });
}

int FieldElement::sign() const { return sign_of(c_); }

int FieldElement::sign_minus(const Rational& offset) const {
  if (c_.empty()) return -sgn(offset);
  if (is_rational()) return sgn(c_[0] - offset);
  auto c = c_;
  c[0] -= offset;
  return sign_of(c);
}

int FieldElement::sign_of(const std::vector<Rational>& c) const {
  if (c.empty()) return 0;
  bool rational = true;
  for (std::size_t i = 1; i < c.size(); ++i)
    if (sgn(c[i]) != 0) rational = false;
  if (rational) return sgn(c[0]);
  const FieldPtr& f = field_;

  // Double filter.
  const auto& dp = f->double_powers();
  double v = 0, mag = 0;
  bool finite = true;
  for (std::size_t i = 0; i < c.size(); ++i) {
    double ci = c[i].get_d();
    if (!std::isfinite(ci) || (ci == 0 && sgn(c[i]) != 0)) finite = false;
    v += ci * dp[i];
    mag += std::fabs(ci * dp[i]);
  }
  if (finite && std::isfinite(v) && std::fabs(v) > 1e-11 * mag + 1e-250) return v > 0 ? 1 : -1;

  // Fixed-point evaluation with a common denominator.
  Integer den = 1;
  for (const auto& q : c) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den_mpz_t());
  std::vector<Integer> num(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) num[i] = c[i].get_num() * (den / c[i].get_den());
  for (std::size_t step = 0;; ++step) {
    auto fp = f->fixed_point(step);
    Integer s = 0, e = 0;
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (sgn(num[i]) == 0) continue;
      s += num[i] * fp->value[i];
      e += abs(num[i]) * fp->error[i];
    }
    if (abs(s) > e) return sgn(s);
  }
}

FieldElement FieldElement::inverse() const {
  if (is_zero()) fail("BadParams", "division by zero in number field");
  if (is_rational()) return FieldElement(field_, Rational(1) / c_[0]);
  const std::size_t n = c_.size();
  RationalMatrix m = qmat::zeros(n, n);
  FieldElement col = *this;
  FieldElement t = theta(field_);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) m[i][j] = col.c_[i];
    col = col * t;
  }
  std::vector<Rational> rhs(n, Rational(0));
  rhs[0] = 1;
  auto y = qmat::solve(m, rhs);
  return FieldElement(field_, *y);
}

Integer FieldElement::floor() const {
  if (is_rational()) return floor_q(rational_part());
  Integer m;
  auto [v, err] = approx_with_error();
  if (std::isfinite(v) && std::isfinite(err) && std::fabs(v) < 1e15) {
    double lo = std::floor(v - err), hi = std::floor(v + err);
    if (lo == hi) return Integer(lo);
    m = Integer(std::floor(v));
  } else if (std::isfinite(v) && std::fabs(v) < 1e15) {
    m = Integer(std::floor(v));
  } else {
    auto iv = to_interval(Rational(1, 4));
    m = floor_q(iv.lo);
  }
  while (sign_minus(Rational(m)) < 0) m -= 1;
  while (sign_minus(Rational(m + 1)) >= 0) m += 1;
  return m;
}

Integer FieldElement::ceil() const { return -(-*this).floor(); }

std::pair<Integer, FieldElement> FieldElement::floor_frac() const {
  Integer m = floor();
  return {m, *this - Rational(m)};
}

RationalInterval FieldElement::to_interval(const Rational& width) const {
  if (is_rational()) return {rational_part(), rational_part()};
  const FieldPtr& f = field_;
  for (std::size_t level = 1;; ++level) {
    RationalInterval j = f->root_interval(level);
    RationalInterval x{c_.back(), c_.back()};
    for (std::size_t i = c_.size() - 1; i-- > 0;) {
      x = imul(x, j);
      x.lo += c_[i];
      x.hi += c_[i];
    }
    if (x.width() <= width) return x;
  }
}

std::pair<double, double> FieldElement::approx_with_error() const {
  if (is_rational()) {
    double v = rational_part().get_d();
    return {v, std::fabs(v) * 2.3e-16};
  }
  const auto& dp = field_->double_powers();
  double v = 0, mag = 0;
  bool finite = true;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    double ci = c_[i].get_d();
    if (!std::isfinite(ci)) finite = false;
    v += ci * dp[i];
    mag += std::fabs(ci * dp[i]);
  }
  if (finite && std::isfinite(mag)) return {v, 1e-11 * mag + 1e-250};
  return {v, std::numeric_limits<double>::infinity()};
}

double FieldElement::to_double() const {
  auto [v, err] = approx_with_error();
  if (std::isfinite(err) && err <= 1e-9 * std::fabs(v)) return v;
  auto iv = to_interval(Rational(1, 1L << 40));
  return Rational((iv.lo + iv.hi) / 2).get_d();
}

std::optional<std::array<Integer, 3>> FieldElement::quadratic_relation() const {
  if (is_rational()) return std::nullopt;
  FieldElement one(field_, Rational(1));
  FieldElement sq = *this * *this;
  const std::size_t n = c_.size();
  RationalMatrix m = qmat::zeros(n, 3);
  for (std::size_t i = 0; i < n; ++i) {
    m[i][0] = one.c_[i];
    m[i][1] = c_[i];
    m[i][2] = sq.c_[i];
  }
  auto ns = qmat::nullspace(m, 3);
  if (ns.empty()) return std::nullopt;
  auto v = ns[0];
  if (sgn(v[2]) == 0) return std::nullopt;
  Integer den = 1;
  for (auto& q : v) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den_mpz_t());
  std::array<Integer, 3> r;  // a, b, c
  Integer g = 0;
  for (int i = 0; i < 3; ++i) {
    Integer val = Rational(v[static_cast<std::size_t>(2 - i)] * den).get_num();
    r[static_cast<std::size_t>(i)] = val;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), val.get_mpz_t());
  }
  if (r[0] < 0) g = -g;
  for (auto& x : r) x /= g;
  return r;
}

std::vector<std::string> FieldElement::coordinate_strings() const {
  std::vector<std::string> out;
  for (const auto& q : c_) out.push_back(q.get_str());
  return out;
}

std::string FieldElement::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (sgn(c_[i]) == 0) continue;
    if (!first) os << " + ";
    first = false;
    os << c_[i].get_str();
    if (i == 1) os << "*t";
    if (i > 1) os << "*t^" << i;
  }
  if (first) os << "0";
  return os.str();
}

Rational parse_rational(const std::string& text) {
  std::string s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
  if (s.empty()) fail("ParseError", "empty number");
  try {
    auto dotpos = s.find('.');
    if (dotpos == std::string::npos) {
      Rational q(s, 10);
      if (q.get_den() == 0) fail("ParseError", "zero denominator: " + text);
      q.canonicalize();
      return q;
    }
    bool neg = s[0] == '-';
    std::string body = (neg || s[0] == '+') ? s.substr(1) : s;
    dotpos = body.find('.');
    std::string digits = body.substr(0, dotpos) + body.substr(dotpos + 1);
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
      fail("ParseError", "bad decimal: " + text);
    Rational q(Integer(digits, 10));
    mpz_ui_pow_ui(q.get_den_mpz_t(), 10, static_cast<unsigned long>(body.size() - dotpos - 1));
    q.canonicalize();
    return neg ? Rational(-q) : q;
  } catch (const std::invalid_argument&) {
    fail("ParseError", "not a number: " + text);
  }
}

}  // namespace lrcut
