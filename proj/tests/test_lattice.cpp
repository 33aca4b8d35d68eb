#include <doctest.h>

#include <random>
#include <set>

#include "lrcut/error.hpp"
#include "lrcut/lattice.hpp"
#include "lrcut/rational_matrix.hpp"

using namespace lrcut;

namespace {

IntVec iv(std::initializer_list<long> xs) {
  IntVec v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

std::size_t rational_rank(const IntMatrix& rows) {
  if (rows.empty()) return 0;
  RationalMatrix m;
  for (const auto& r : rows) m.emplace_back(r.begin(), r.end());
  return qmat::rank(m);
}

FieldPtr q2() { return RealField::create({Integer(-2), Integer(0), Integer(1)}, Rational(1)); }

bool form_integral(const std::vector<FieldElement>& row, const IntVec& n) {
  FieldElement acc(row[0].field(), Rational(0));
  for (std::size_t j = 0; j < row.size(); ++j) acc += row[j] * Rational(n[j]);
  return acc.is_rational() && acc.rational_part().get_den() == 1;
}

void for_box(std::size_t d, long radius, const std::function<void(const IntVec&)>& fn) {
  IntVec cur(d, Integer(-radius));
  while (true) {
    fn(cur);
    std::size_t i = 0;
    while (i < d && cur[i] == radius) cur[i++] = -radius;
    if (i == d) return;
    cur[i] += 1;
  }
}

Sublattice random_lattice(std::mt19937_64& rng, std::size_t d) {
  std::uniform_int_distribution<int> count(0, static_cast<int>(d));
  std::uniform_int_distribution<int> entry(-3, 3);
  IntMatrix gens;
  int c = count(rng);
  for (int i = 0; i < c; ++i) {
    IntVec g(d);
    for (auto& x : g) x = entry(rng);
    gens.push_back(g);
  }
  return Sublattice::from_generators(d, gens);
}

}  // namespace

TEST_CASE("kernel_mod_one examples") {
  auto f = q2();
  FieldElement r2 = FieldElement::theta(f);
  auto s1 = kernel_mod_one({r2}, 1);
  CHECK(s1.rank() == 0);

  FieldElement h = r2 * Rational(1, 2);
  std::vector<FieldElement> row{h, h};
  auto s2 = kernel_mod_one(row, 2);
  CHECK(s2.rank() == 1);
  CHECK(s2 == Sublattice::from_generators(2, {iv({1, -1})}));
  for_box(2, 10, [&](const IntVec& n) { CHECK(s2.contains(n) == form_integral(row, n)); });

  auto qq = RealField::rationals();
  auto s3 = kernel_mod_one({FieldElement(qq, Rational(1, 2))}, 1);
  CHECK(s3 == Sublattice::from_generators(1, {iv({2})}));
}

TEST_CASE("kernel_mod_one mixes integrality and vanishing") {
  auto f = q2();
  FieldElement r2 = FieldElement::theta(f);
  // L(n) = (1/3 + r2) n1 + (1/2 - r2) n2 + (2/3) n3
  std::vector<FieldElement> row{r2 + Rational(1, 3), FieldElement(f, Rational(1, 2)) - r2, FieldElement(f, Rational(2, 3))};
  auto s = kernel_mod_one(row, 3);
  for_box(3, 6, [&](const IntVec& n) { CHECK(s.contains(n) == form_integral(row, n)); });
  CHECK(s.rank() == 2);
}

TEST_CASE("intersect and sum examples") {
  auto z2 = Sublattice::full(2);
  CHECK(intersect(z2, z2) == z2);
  auto a = Sublattice::from_generators(2, {iv({1, -1})});
  auto b = Sublattice::from_generators(2, {iv({1, 1})});
  CHECK(intersect(a, b).rank() == 0);
  auto c = Sublattice::from_generators(2, {iv({2, 0}), iv({0, 1})});
  auto e = Sublattice::from_generators(2, {iv({1, 0}), iv({0, 3})});
  CHECK(intersect(c, e) == Sublattice::from_generators(2, {iv({2, 0}), iv({0, 3})}));

  auto s = sum(a, b);
  CHECK(s.index() == 2);
  CHECK(s.contains(iv({2, 0})));
  CHECK(s.contains(iv({0, 2})));
  CHECK(s.contains(iv({1, 1})));
  CHECK_FALSE(s.contains(iv({1, 0})));
  CHECK(sum(a, Sublattice::zero(2)) == a);
  auto t = sum(Sublattice::from_generators(1, {iv({2})}), Sublattice::from_generators(1, {iv({3})}));
  CHECK(t == Sublattice::full(1));
}

TEST_CASE("coset representatives") {
  auto one = coset_representatives(Sublattice::full(2));
  CHECK(one.index == 1);
  CHECK(one.representatives == IntMatrix{iv({0, 0})});

  auto two = coset_representatives(Sublattice::from_generators(2, {iv({2, 0}), iv({0, 1})}));
  CHECK(two.index == 2);
  CHECK(two.representatives == IntMatrix{iv({0, 0}), iv({1, 0})});

  auto lat = Sublattice::from_generators(2, {iv({1, 1}), iv({1, -1})});
  auto cs = coset_representatives(lat);
  CHECK(cs.index == 2);
  CHECK(cs.representatives == IntMatrix{iv({0, 0}), iv({1, 0})});
  // pairwise incongruent; every small vector congruent to exactly one
  for_box(2, 5, [&](const IntVec& n) {
    int hits = 0;
    for (const auto& r : cs.representatives) {
      IntVec diff{n[0] - r[0], n[1] - r[1]};
      if (lat.contains(diff)) ++hits;
    }
    CHECK(hits == 1);
  });
  CHECK_THROWS_AS(coset_representatives(Sublattice::from_generators(2, {iv({1, 1})})), Error);
}

TEST_CASE("complement groups for the octagonal forms") {
  auto f = q2();
  FieldElement h = FieldElement::theta(f) * Rational(1, 2);
  auto s1 = kernel_mod_one({h, h}, 2);
  auto s2 = kernel_mod_one({h, -h}, 2);
  auto cg = complement_groups({s1, s2});
  CHECK(cg.lambda[0] == Sublattice::from_generators(2, {iv({1, 1})}));
  CHECK(cg.lambda[1] == Sublattice::from_generators(2, {iv({1, -1})}));
  CHECK(cg.total.index() == 2);
  CHECK(cg.ranks == std::vector<std::size_t>{1, 1});

  auto single = complement_groups({Sublattice::zero(3)});
  CHECK(single.lambda[0] == Sublattice::full(3));
  CHECK_THROWS_AS(complement_groups({s1, s1}), Error);
}

TEST_CASE("randomized sublattice properties") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t d = 1 + static_cast<std::size_t>(trial % 4);
    auto a = random_lattice(rng, d);
    auto b = random_lattice(rng, d);
    auto i = intersect(a, b);
    auto s = sum(a, b);
    // ranks against an independent rational computation
    IntMatrix stacked = a.basis();
    stacked.insert(stacked.end(), b.basis().begin(), b.basis().end());
    CHECK(s.rank() == rational_rank(stacked));
    CHECK(a.rank() == rational_rank(a.basis()));
    CHECK(s.rank() + i.rank() == a.rank() + b.rank());
    CHECK(Sublattice::from_generators(d, a.basis()) == a);
    for (const auto& v : i.basis()) {
      CHECK(a.contains(v));
      CHECK(b.contains(v));
    }
    for_box(d, d <= 2 ? 4 : 2, [&](const IntVec& n) {
      CHECK(i.contains(n) == (a.contains(n) && b.contains(n)));
    });
    auto x = imat::solve_integer(a.basis(), a.basis().empty() ? IntVec(d, Integer(0)) : a.basis()[0]);
    CHECK(x.has_value());
  }
}
