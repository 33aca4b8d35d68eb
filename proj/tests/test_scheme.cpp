#include <doctest.h>

#include <cmath>
#include <set>

#include "lrcut/error.hpp"
#include "lrcut/gallery.hpp"
#include "lrcut/scheme.hpp"
#include "lrcut/window.hpp"

using namespace lrcut;

namespace {

IntVec iv(std::initializer_list<long> xs) {
  IntVec v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

Scheme fib_with_shift(const Rational& s2) {
  Scheme s = build("fibonacci").scheme;
  s.s2 = {FieldElement(s.field, s2)};
  return s;
}

}  // namespace

TEST_CASE("check_regular examples") {
  Scheme s = fib_with_shift(Rational(1, 3));
  CHECK(check_regular(s).regular);

  Scheme z = fib_with_shift(Rational(0));
  auto reg = check_regular(z);
  CHECK_FALSE(reg.regular);
  CHECK(reg.witness_n == iv({0}));

  Scheme hit = build("fibonacci").scheme;
  hit.s2 = {hit.forms[0][0].frac()};
  auto reg2 = check_regular(hit);
  CHECK_FALSE(reg2.regular);
  CHECK(reg2.witness_n == iv({1}));
  // the witness really lies on the window boundary
  auto w = internal_point(hit, reg2.witness_n, reg2.witness_offset);
  CHECK(w[0].is_zero());

  CHECK_THROWS_AS(generate(z, 3), Error);
}

TEST_CASE("generate on the Fibonacci scheme") {
  Scheme s = fib_with_shift(Rational(1, 3));
  auto pts = generate(s, 2);
  REQUIRE(pts.size() == 5);
  const long double phi_inv = (std::sqrt(5.0L) - 1.0L) / 2.0L;
  for (std::size_t i = 0; i < 5; ++i) {
    long n = static_cast<long>(i) - 2;
    CHECK(pts[i].n == iv({n}));
    CHECK(pts[i].offset[0] == static_cast<long>(std::ceil(phi_inv * n - 1.0L / 3.0L)));
    CHECK(pts[i].internal[0].sign() >= 0);
    CHECK((pts[i].internal[0] - Rational(1)).sign() < 0);
  }
  CHECK(generate(s, 0).size() == 1);
  auto emb = generate(s, 1, true);
  REQUIRE(emb[0].embedded.size() == 1);
  // orthonormal coordinate along (1, phi^-1)
  CHECK(std::fabs(emb[2].embedded[0] - std::sqrt(1 + static_cast<double>(phi_inv * phi_inv))) < 1e-12);
}

TEST_CASE("cubical acceptance is unique") {
  Scheme s = build("ammann_beenker").scheme;
  auto pts = generate(s, 4);
  CHECK(pts.size() == 81);
  for (const auto& p : pts) {
    for (std::size_t i = 0; i < 2; ++i) {
      int hits = 0;
      for (long dm = -2; dm <= 2; ++dm) {
        IntVec off = p.offset;
        off[i] += dm;
        auto w = internal_point(s, p.n, off);
        if (w[i].sign() >= 0 && (w[i] - Rational(1)).sign() < 0) ++hits;
      }
      CHECK(hits == 1);
    }
  }
}

TEST_CASE("canonical Ammann-Beenker density and consistency") {
  Scheme s = build("ammann_beenker", {{"window", "canonical"}}).scheme;
  CHECK(check_regular(s).regular);
  auto pts = generate(s, 10);
  double density = static_cast<double>(pts.size()) / 441.0;
  double area = 2.0 + 2.0 * std::sqrt(2.0);
  CHECK(std::fabs(density - area) / area < 0.15);
  Zonotope z = s.canonical_window();
  std::set<std::pair<IntVec, IntVec>> accepted;
  for (const auto& p : pts) {
    CHECK(z.membership(p.internal) == Membership::Inside);
    accepted.insert({p.n, p.offset});
  }
  // every lift inside the window is generated
  for (long a = -3; a <= 3; ++a)
    for (long b = -3; b <= 3; ++b)
      for (long m1 = -3; m1 <= 3; ++m1)
        for (long m2 = -3; m2 <= 3; ++m2) {
          IntVec n = iv({a, b}), m = iv({m1, m2});
          bool inside = z.membership(internal_point(s, n, m)) == Membership::Inside;
          CHECK(inside == (accepted.count({n, m}) == 1));
        }
}

TEST_CASE("patch_at and distinct_patches") {
  Scheme s = fib_with_shift(Rational(1, 3));
  auto p0 = patch_at(s, iv({5}), 0);
  CHECK(p0.code == std::vector<std::int64_t>{1, 0});

  std::set<std::vector<std::int64_t>> classes;
  for (long n0 = -50; n0 <= 50; ++n0) {
    auto p = patch_at(s, iv({n0}), 1);
    for (const auto& [delta, off] : p.entries(1, 1)) {
      CHECK(off[0] >= -1);
      CHECK(off[0] <= 1);
    }
    classes.insert(p.code);
  }
  // three classes, matching the three regions at r = 1
  CHECK(classes.size() == 3);
  CHECK(region_summary(s, 1).count == 3);

  CHECK(distinct_patches(s, 3, 0).size() == 1);
  auto occ = distinct_patches(s, 3, 200);
  CHECK(occ.size() == region_summary(s, 3).count.get_ui());
  std::size_t prev = 0;
  for (long R : {10, 20, 40, 80}) {
    std::size_t c = distinct_patches(s, 3, R).size();
    CHECK(c >= prev);
    prev = c;
  }
  for (long r = 1; r <= 8; ++r)
    CHECK(distinct_patches(s, static_cast<int>(r), 300).size() == static_cast<std::size_t>(2 * r + 1));
  CHECK_THROWS_AS(patch_at(build("ammann_beenker", {{"window", "canonical"}}).scheme, iv({0, 0}), iv({5, 5}), 1),
                  Error);
}

TEST_CASE("shift equivariance") {
  Scheme s = build("ammann_beenker").scheme;
  Scheme t = s;
  IntVec z = iv({2, -1});
  for (std::size_t j = 0; j < 2; ++j) t.s1[j] = t.s1[j] + Rational(z[j]);
  for (std::size_t i = 0; i < 2; ++i) t.s2[i] = t.s2[i] + s.form_value(i, z) + Rational(1);
  auto a = generate(s, 3);
  auto b = generate(t, 3);
  REQUIRE(a.size() == b.size());
  for (std::size_t q = 0; q < a.size(); ++q) {
    CHECK(a[q].n == b[q].n);
    for (std::size_t i = 0; i < 2; ++i) CHECK(a[q].offset[i] == b[q].offset[i] + 1);
  }
}

TEST_CASE("patch count is stable between cube and ball shaped patches") {
  // In dimension one the ball and the cube coincide, so the sandwich
  // reduces to monotonicity in r.
  Scheme s = fib_with_shift(Rational(1, 3));
  for (int r = 1; r <= 10; ++r) {
    auto cube = distinct_patches(s, r, 400).size();
    CHECK(cube >= distinct_patches(s, r - 1, 400).size());
    CHECK(cube <= distinct_patches(s, r + 1, 400).size());
  }
}
