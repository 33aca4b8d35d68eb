#include <doctest.h>

#include <random>

#include "lrcut/error.hpp"
#include "lrcut/exact_reals.hpp"

using namespace lrcut;

namespace {

FieldPtr sqrt_field(long n) { return RealField::create({Integer(-n), Integer(0), Integer(1)}, Rational(n)); }

// Independent high precision evaluation: Newton iteration in mpf.
mpf_class mpf_root(const std::vector<long>& coeffs, double start) {
  mpf_class x(start, 1024);
  for (int it = 0; it < 200; ++it) {
    mpf_class p(0, 1024), dp(0, 1024);
    for (std::size_t i = coeffs.size(); i-- > 0;) {
      dp = dp * x + p;
      p = p * x + coeffs[i];
    }
    x -= p / dp;
  }
  return x;
}

mpf_class mpf_eval(const FieldElement& e, const mpf_class& theta) {
  mpf_class acc(0, 1024), pw(1, 1024);
  for (const auto& q : e.coordinates()) {
    acc += mpf_class(q, 1024) * pw;
    pw *= theta;
  }
  return acc;
}

}  // namespace

TEST_CASE("sign of zero and simple quadratic elements") {
  auto q2 = sqrt_field(2);
  FieldElement r2 = FieldElement::theta(q2);
  CHECK(FieldElement(q2, Rational(0)).sign() == 0);
  CHECK((r2 - Rational(7, 5)).sign() == 1);
  CHECK((r2 - Rational(141421, 100000)).sign() == 1);
  CHECK((r2 - Rational(141422, 100000)).sign() == -1);

  auto q5 = sqrt_field(5);
  FieldElement r5 = FieldElement::theta(q5);
  FieldElement phi = (r5 + Rational(1)) * Rational(1, 2);
  CHECK((phi - Rational(2)).sign() == -1);
  CHECK((phi * phi - phi - Rational(1)).is_zero());
}

TEST_CASE("floor_frac examples") {
  auto qq = RealField::rationals();
  auto [f0, r0] = FieldElement(qq, Rational(3, 2)).floor_frac();
  CHECK(f0 == 1);
  CHECK(r0 == FieldElement(qq, Rational(1, 2)));

  auto q2 = sqrt_field(2);
  FieldElement r2 = FieldElement::theta(q2);
  auto [f1, r1] = (r2 * Rational(3)).floor_frac();
  CHECK(f1 == 4);
  CHECK(r1 == r2 * Rational(3) - Rational(4));
  auto [f2, rr2] = (-r2).floor_frac();
  CHECK(f2 == -2);
  CHECK(rr2 == FieldElement(q2, Rational(2)) - r2);
  CHECK(rr2.sign() >= 0);
  CHECK((rr2 - Rational(1)).sign() < 0);
}

TEST_CASE("to_interval contains the value and respects width") {
  auto qq = RealField::rationals();
  auto p = FieldElement(qq, Rational(1, 3)).to_interval(Rational(1, 10));
  CHECK(p.lo == Rational(1, 3));
  CHECK(p.hi == Rational(1, 3));

  auto q2 = sqrt_field(2);
  FieldElement r2 = FieldElement::theta(q2);
  auto iv = r2.to_interval(Rational(1, 100));
  CHECK(iv.width() <= Rational(1, 100));
  CHECK(iv.lo * iv.lo <= 2);
  CHECK(iv.hi * iv.hi >= 2);
  CHECK(iv.lo >= 0);

  auto iv2 = (r2 + r2).to_interval(Rational(1, 4));
  CHECK(iv2.width() <= Rational(1, 4));
  CHECK(iv2.lo * iv2.lo <= 8);
  CHECK(iv2.hi * iv2.hi >= 8);

  RationalInterval prev = r2.to_interval(Rational(1));
  for (int k = 1; k < 80; ++k) {
    Rational w(1);
    mpz_mul_2exp(w.get_den_mpz_t(), w.get_den_mpz_t(), static_cast<mp_bitcnt_t>(k));
    auto cur = r2.to_interval(w);
    CHECK(cur.width() <= w);
    CHECK(prev.lo <= cur.lo);
    CHECK(cur.hi <= prev.hi);
    prev = cur;
  }
}

TEST_CASE("cubic field sign agrees with high precision evaluation") {
  auto f = RealField::create({Integer(-2), Integer(0), Integer(0), Integer(1)}, Rational(126, 100));
  mpf_class theta = mpf_root({-2, 0, 0, 1}, 1.26);
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> coef(-40, 40);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<Rational> c;
    for (int i = 0; i < 3; ++i) c.emplace_back(coef(rng), 1 + (trial % 7));
    FieldElement x(f, c);
    FieldElement y(f, {Rational(coef(rng)), Rational(coef(rng)), Rational(coef(rng), 3)});
    mpf_class vx = mpf_eval(x, theta);
    int expect = x.is_zero() ? 0 : sgn(vx);
    CHECK(x.sign() == expect);
    CHECK((x * y).sign() == x.sign() * y.sign());
    if (!x.is_zero()) CHECK((x * x.inverse() - Rational(1)).is_zero());
    auto [fl, fr] = x.floor_frac();
    CHECK(x == fr + Rational(fl));
    CHECK(fr.sign() >= 0);
    CHECK((fr - Rational(1)).sign() < 0);
  }
}

TEST_CASE("near-cancellation sign in the cubic field") {
  auto f = RealField::create({Integer(-2), Integer(0), Integer(0), Integer(1)}, Rational(1));
  FieldElement t = FieldElement::theta(f);
  mpf_class theta = mpf_root({-2, 0, 0, 1}, 1.26);
  // Good rational approximations of 2^(1/3) give tiny differences.
  for (const auto& q : {Rational(635, 504), Rational(7225, 5734), Rational(1458635, 1157716)}) {
    FieldElement x = t - q;
    CHECK(x.sign() == sgn(mpf_eval(x, theta)));
  }
}

TEST_CASE("field construction errors and root selection") {
  CHECK_THROWS_AS(RealField::create({Integer(-4), Integer(0), Integer(1)}, Rational(2)), Error);
  CHECK_THROWS_AS(RealField::create({Integer(1), Integer(0), Integer(2)}, Rational(0)), Error);
  auto neg = RealField::create({Integer(-2), Integer(0), Integer(1)}, Rational(-1));
  CHECK(FieldElement::theta(neg).sign() == -1);
  CHECK(RealField::create({Integer(0), Integer(1)}, Rational(0))->degree() == 1);
}

TEST_CASE("quadratic relation") {
  auto f = RealField::create({Integer(-2), Integer(0), Integer(0), Integer(0), Integer(0), Integer(0), Integer(1)},
                             Rational(112, 100));
  FieldElement t = FieldElement::theta(f);
  FieldElement r2 = t * t * t;  // sqrt 2
  auto rel = (r2 + Rational(1)).quadratic_relation();
  REQUIRE(rel.has_value());
  // (x - 1)^2 = 2  =>  x^2 - 2x - 1 = 0
  CHECK((*rel)[0] == 1);
  CHECK((*rel)[1] == -2);
  CHECK((*rel)[2] == -1);
  CHECK_FALSE(t.quadratic_relation().has_value());
  CHECK_FALSE(FieldElement(f, Rational(3)).quadratic_relation().has_value());
}
