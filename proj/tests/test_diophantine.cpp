#include <doctest.h>

#include "lrcut/diophantine.hpp"
#include "lrcut/error.hpp"
#include "lrcut/gallery.hpp"

using namespace lrcut;

namespace {

IntVec iv(std::initializer_list<long> xs) {
  IntVec v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

Sublattice span(std::initializer_list<IntVec> gens) {
  IntMatrix m(gens);
  return Sublattice::from_generators(m.empty() ? 0 : m[0].size(), m);
}

std::vector<Integer> ints(std::initializer_list<long> xs) {
  std::vector<Integer> v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

std::string error_code(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return "";
}

// Partial quotients of x from a 4000-bit float, independent of the field code.
std::vector<long> float_cf(mpf_class x, std::size_t n) {
  std::vector<long> out;
  for (std::size_t i = 0; i < n; ++i) {
    mpf_class fl = floor(x);
    out.push_back(fl.get_si());
    x = 1 / (x - fl);
  }
  return out;
}

}  // namespace

TEST_CASE("continued fraction examples") {
  auto q5 = RealField::create(ints({-5, 0, 1}), Rational(2236, 1000));
  FieldElement phi(q5, std::vector<Rational>{Rational(1, 2), Rational(1, 2)});
  auto cf = continued_fraction(phi, 20);
  REQUIRE(cf.period.has_value());
  CHECK(*cf.period == std::make_pair(std::size_t(0), std::size_t(1)));
  CHECK(cf.quotients == ints({1}));

  auto q2 = RealField::create(ints({-2, 0, 1}), Rational(1414, 1000));
  auto s2 = continued_fraction(FieldElement::theta(q2), 20);
  CHECK(*s2.period == std::make_pair(std::size_t(1), std::size_t(1)));
  CHECK(s2.quotients == ints({1, 2}));

  auto r = continued_fraction(FieldElement(nullptr, Rational(7, 3)), 20);
  CHECK(r.terminated);
  CHECK(r.quotients == ints({2, 3}));
  CHECK(continued_fraction(FieldElement(nullptr, Rational(-7, 3)), 20).quotients == ints({-3, 1, 2}));
}

TEST_CASE("continued fractions of cubic irrationals match a float oracle") {
  auto f = RealField::create(ints({-2, 0, 0, 1}), Rational(126, 100));
  FieldElement t = FieldElement::theta(f);
  mpf_set_default_prec(4000);
  mpf_class cube_root_two;
  {
    mpf_class lo(1), hi(2);
    for (int i = 0; i < 3900; ++i) {
      mpf_class mid = (lo + hi) / 2;
      if (mid * mid * mid < 2) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    cube_root_two = lo;
  }
  auto cf = continued_fraction(t, 40);
  auto oracle = float_cf(cube_root_two, 40);
  for (std::size_t i = 0; i < 40; ++i) CHECK(cf.quotients[i] == oracle[i]);
  CHECK(cf.quotients[9] == 8);
  CHECK_FALSE(cf.period.has_value());

  // convergent recurrence and the approximation bound
  auto conv = cf.convergents();
  for (std::size_t n = 0; n + 1 < conv.size(); ++n) {
    const auto& [p, q] = conv[n];
    if (n >= 1) {
      Integer det = p * conv[n - 1].second - q * conv[n - 1].first;
      CHECK(abs(det) == 1);
    }
    FieldElement err = t - Rational(p, q);
    FieldElement bound(f, Rational(1, q * conv[n + 1].second));
    CHECK((err.sign() >= 0 ? err : -err) < bound);
  }
}

TEST_CASE("quadratic gallery values are eventually periodic") {
  for (const auto& name : {"fibonacci", "ammann_beenker", "penrose"}) {
    auto s = build(name).scheme;
    for (const auto& row : s.forms)
      for (const auto& x : row) {
        if (x.is_rational()) continue;
        auto cf = continued_fraction(x, 200);
        CHECK(cf.period.has_value());
        // reconstruct the value from one full period: check convergents bracket x
        auto conv = cf.convergents();
        const auto& [p, q] = conv.back();
        FieldElement err = x - Rational(p, q);
        CHECK((err.sign() >= 0 ? err : -err) < FieldElement(x.field(), Rational(1, q * q)));
      }
  }
}

TEST_CASE("inexact rational expansions stop where they become ambiguous") {
  auto e = build("liouville").scheme;
  FieldElement x = e.forms[0][0];
  auto cf = continued_fraction(x, 3, true);
  CHECK(cf.quotients == ints({0, 9, 11}));
  CHECK(error_code([&] { continued_fraction(x, 200, true); }) == "PrecisionExhausted");
  CHECK(continued_fraction(x, 200).terminated);
}

TEST_CASE("bad scan") {
  auto fib = build("fibonacci").scheme;
  FieldVec form = fib.forms[0];
  auto res = bad_scan(form, Sublattice::full(1), 100);
  FieldElement expected = FieldElement(fib.field, Rational(1)) - form[0];
  CHECK(res.infimum == expected);
  CHECK(res.witness_point == iv({1}));
  CHECK(res.precondition_ok);
  FieldElement prev = res.infimum;
  for (long n : {1, 10, 100, 1000, 10000}) {
    auto r = bad_scan(form, Sublattice::full(1), n, 2);
    CHECK_FALSE(prev < r.infimum);
    prev = r.infimum;
  }
  // brute force at a small depth
  FieldElement best = nearest_integer_distance(form[0]);
  for (long n = 1; n <= 300; ++n) {
    FieldElement v = nearest_integer_distance(form[0] * Rational(n)) * Rational(n);
    if (v < best) best = v;
  }
  CHECK(bad_scan(form, Sublattice::full(1), 300, 3).infimum == best);

  FieldVec half{FieldElement(nullptr, Rational(1, 2))};
  CHECK_FALSE(bad_scan(half, Sublattice::full(1), 10).precondition_ok);

  auto lio = build("liouville").scheme;
  auto deep = bad_scan(lio.forms[0], Sublattice::full(1), 1000000, 4);
  CHECK(deep.infimum < FieldElement(nullptr, Rational(1, 10000)));
  CHECK(deep.witness_point == iv({1000000}));
}

TEST_CASE("two dimensional scans agree with brute force") {
  auto s = build("lemma_5_3").scheme;
  Sublattice lam = span({iv({1, 0, 0}), iv({0, 1, 0})});
  auto r = bad_scan(s.forms[0], lam, 12, 3);
  FieldElement best(s.field, Rational(1000));
  for (long a = -12; a <= 12; ++a)
    for (long b = -12; b <= 12; ++b) {
      if (a == 0 && b == 0) continue;
      FieldElement v = s.forms[0][0] * Rational(a) + s.forms[0][1] * Rational(b);
      long nrm = std::max(std::labs(a), std::labs(b));
      FieldElement w = nearest_integer_distance(v) * Rational(nrm * nrm);
      if (w < best) best = w;
    }
  CHECK(r.infimum == best);
}

TEST_CASE("relatively badly approximable verdicts") {
  auto ab = build("ammann_beenker").scheme;
  Sublattice s1 = kernel_mod_one(ab.forms[0], 2);
  CHECK(s1 == span({iv({1, -1})}));
  auto v = relatively_bad(ab.forms[0], s1, span({iv({1, 1})}));
  CHECK(v.status == BadStatus::ProvenBad);
  CHECK(v.certificate == "PeriodicContinuedFraction");

  auto l53 = build("lemma_5_3").scheme;
  auto v53 = relatively_bad(l53.forms[0], kernel_mod_one(l53.forms[0], 3), span({iv({1, 0, 0}), iv({0, 1, 0})}));
  CHECK(v53.status == BadStatus::ProvenBad);
  CHECK(v53.certificate == "PerronBasis");

  for (const char* m : {"2", "3", "1,2"}) {
    auto nf = build("numberfield", {{"m", m}}).scheme;
    std::vector<Sublattice> kernels;
    for (const auto& row : nf.forms) kernels.push_back(kernel_mod_one(row, nf.d));
    auto cg = complement_groups(kernels);
    for (std::size_t i = 0; i < nf.forms.size(); ++i) {
      auto vi = relatively_bad(nf.forms[i], kernels[i], cg.lambda[i]);
      CHECK(vi.status == BadStatus::ProvenBad);
    }
  }

  // a cubic irrational alone has no exact certificate
  auto cubic = RealField::create(ints({-2, 0, 0, 1}), Rational(126, 100));
  FieldVec row{FieldElement::theta(cubic)};
  auto ve = relatively_bad(row, Sublattice::zero(1), Sublattice::full(1), 20000);
  CHECK(ve.status == BadStatus::EmpiricalBad);
  CHECK(ve.depth == 20000);
  CHECK(ve.infimum->sign() > 0);

  auto lio = build("liouville").scheme;
  auto vl = relatively_bad(lio.forms[0], Sublattice::zero(1), Sublattice::full(1), 0, true);
  CHECK(vl.status == BadStatus::ProvenNotBad);
  CHECK(vl.certificate == "QuotientGrowth");
  auto vs = relatively_bad(lio.forms[0], Sublattice::zero(1), Sublattice::full(1), 1000000, false, 4);
  CHECK(vs.status == BadStatus::EmpiricalNotBad);

  FieldVec half{FieldElement(nullptr, Rational(1, 2))};
  CHECK(error_code([&] { relatively_bad(half, kernel_mod_one(half, 1), Sublattice::full(1)); }) ==
        "ComplementInvalid");
  CHECK(error_code([&] { relatively_bad(ab.forms[0], s1, Sublattice::zero(2)); }) == "ComplementInvalid");
  CHECK(default_depth(1) == 1000000);
  CHECK(default_depth(2) == 1000);
  CHECK(default_depth(3) == 100);
}

TEST_CASE("certificates agree with scans") {
  for (const auto& name : {"fibonacci", "ammann_beenker", "lemma_5_3", "codim1", "numberfield"}) {
    auto s = build(name).scheme;
    std::vector<Sublattice> kernels;
    for (const auto& row : s.forms) kernels.push_back(kernel_mod_one(row, s.d));
    auto cg = complement_groups(kernels);
    for (std::size_t i = 0; i < s.forms.size(); ++i) {
      auto v = relatively_bad(s.forms[i], kernels[i], cg.lambda[i]);
      REQUIRE(v.status == BadStatus::ProvenBad);
      long depth = cg.lambda[i].rank() == 1 ? 1000 : 60;
      auto scan = bad_scan(s.forms[i], cg.lambda[i], depth, 2);
      CHECK(scan.infimum.to_double() > 0.01);
    }
  }
}

TEST_CASE("cosets of the complement stay bounded away from integers") {
  // Ammann-Beenker: Z^2 / (Lambda_1 + Lambda_2) has representatives 0, e_1.
  auto ab = build("ammann_beenker").scheme;
  auto cg = complement_groups({kernel_mod_one(ab.forms[0], 2), kernel_mod_one(ab.forms[1], 2)});
  auto reps = coset_representatives(cg.total);
  CHECK(reps.index == 2);
  double lowest = 1e9;
  for (const auto& f : reps.representatives) {
    for (long t = -1000; t <= 1000; ++t) {
      IntVec lam = cg.lambda[0].basis()[0];
      FieldElement v = ab.form_value(0, IntVec{lam[0] * t + f[0], lam[1] * t + f[1]});
      if (v.is_zero()) continue;
      double w = (1.0 + std::labs(t)) * nearest_integer_distance(v).to_double();
      lowest = std::min(lowest, w);
    }
  }
  CHECK(lowest > 0.1);
}

TEST_CASE("complement independence") {
  auto ab = build("ammann_beenker").scheme;
  Sublattice s1 = kernel_mod_one(ab.forms[0], 2);
  auto r = complement_independence_check(ab.forms[0], s1, span({iv({1, 1})}), span({iv({2, 1})}), 1000, 2);
  CHECK(r.both_positive);
  CHECK(r.ratio > 0);
  auto same = complement_independence_check(ab.forms[0], s1, span({iv({1, 1})}), span({iv({1, 1})}), 1000);
  CHECK(same.first.infimum == same.second.infimum);
  CHECK(same.first.witness == same.second.witness);
  CHECK(same.ratio == doctest::Approx(1.0));
  CHECK(error_code([&] { complement_independence_check(ab.forms[0], s1, span({iv({1, 1})}), s1, 10); }) ==
        "ComplementInvalid");
}

TEST_CASE("transference probe") {
  auto fib = build("fibonacci").scheme;
  auto targets = random_targets(12345, 100);
  CHECK(targets == random_targets(12345, 100));
  for (const auto& g : targets) {
    CHECK(g >= 0);
    CHECK(g < 1);
  }
  targets.insert(targets.begin(), Rational(0));
  auto rep = transference_probe(fib.forms[0], 1000, targets, 1, 4);
  REQUIRE(rep.dirichlet.size() == 3);
  for (const auto& d : rep.dirichlet) CHECK(d.holds);
  // gamma = 0 with n = 0 excluded is the homogeneous minimum
  FieldElement homog(fib.field, Rational(1));
  for (long n = 1; n <= 1000; ++n) {
    FieldElement v = nearest_integer_distance(fib.forms[0][0] * Rational(n));
    if (v < homog) homog = v;
  }
  CHECK(rep.targets[0].best == homog);
  CHECK(rep.dirichlet.back().best == homog);
  CHECK(rep.max_scaled <= 3.0);
  CHECK(rep.c1_estimate == FieldElement(fib.field, Rational(1)) - fib.forms[0][0]);
}
