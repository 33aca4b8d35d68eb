#include <doctest.h>

#include <cmath>
#include <map>
#include <set>

#include "lrcut/gallery.hpp"
#include "lrcut/window.hpp"

using namespace lrcut;

namespace {

IntVec iv(std::initializer_list<long> xs) {
  IntVec v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

FieldElement sum_all(const std::vector<FieldElement>& xs, const FieldPtr& f) {
  FieldElement acc(f, Rational(0));
  for (const auto& x : xs) acc += x;
  return acc;
}

}  // namespace

TEST_CASE("cut sets") {
  Scheme fib = build("fibonacci").scheme;
  FieldElement phi_inv = fib.forms[0][0];
  auto c1 = cut_sets(fib, 1);
  REQUIRE(c1.size() == 1);
  REQUIRE(c1[0].size() == 3);
  CHECK(c1[0][0].is_zero());
  CHECK(c1[0][1] == FieldElement(fib.field, Rational(1)) - phi_inv);
  CHECK(c1[0][2] == phi_inv);
  auto c0 = cut_sets(fib, 0);
  CHECK(c0[0].size() == 1);

  Scheme ab = build("ammann_beenker").scheme;
  auto ca = cut_sets(ab, 1);
  CHECK(ca[0].size() == 5);
  CHECK(ca[1].size() == 5);
  CHECK(cut_sets(ab, 0)[1].size() == 1);
}

TEST_CASE("region components") {
  Scheme fib = build("fibonacci").scheme;
  FieldElement phi_inv = fib.forms[0][0];
  FieldElement one(fib.field, Rational(1));
  auto comps = region_components(fib, 1);
  REQUIRE(comps.size() == 3);
  std::multiset<std::string> vols, expect;
  for (const auto& c : comps) vols.insert(c.volume.to_string());
  expect.insert((phi_inv - (one - phi_inv)).to_string());
  expect.insert((one - phi_inv).to_string());
  expect.insert((one - phi_inv).to_string());
  CHECK(vols == expect);

  auto c0 = region_components(fib, 0);
  REQUIRE(c0.size() == 1);
  CHECK(c0[0].volume == one);

  for (int r = 0; r <= 20; ++r) {
    std::vector<FieldElement> v;
    for (const auto& c : region_components(fib, r)) v.push_back(c.volume);
    CHECK(sum_all(v, fib.field) == one);
  }
  Scheme ab = build("ammann_beenker").scheme;
  for (int r : {0, 1, 3, 7}) {
    std::vector<FieldElement> v;
    for (const auto& c : region_components(ab, r)) v.push_back(c.volume);
    CHECK(sum_all(v, ab.field) == FieldElement(ab.field, Rational(1)));
  }
  // gap sums for every gallery cubical scheme up to r = 20
  for (const auto& name : {"fibonacci", "ammann_beenker", "lemma_5_3", "codim1", "numberfield", "cubic_line"}) {
    Scheme s = build(name).scheme;
    for (int r : {1, 5, 20}) {
      for (const auto& cuts : cut_sets(s, r))
        CHECK(sum_all(circular_gaps(cuts), s.field) == FieldElement(s.field, Rational(1)));
    }
  }
}

TEST_CASE("complexity growth depends on lr1") {
  Scheme ab = build("ammann_beenker").scheme;
  for (int r = 1; r <= 20; ++r) {
    double c = region_summary(ab, r).count.get_d();
    CHECK(c / (r * r) <= 30.0);
  }
  Scheme line = build("cubic_line").scheme;
  for (int r = 5; r <= 40; r += 5) {
    double c = region_summary(line, r).count.get_d();
    CHECK(c / (r * r) >= 1.0);
  }
}

TEST_CASE("three gap property") {
  for (const auto& name : {"fibonacci", "liouville"}) {
    Scheme s = build(name).scheme;
    for (int r = 1; r <= 60; ++r) {
      auto gaps = circular_gaps(cut_sets(s, r)[0]);
      std::vector<FieldElement> distinct;
      for (const auto& g : gaps)
        if (std::find(distinct.begin(), distinct.end(), g) == distinct.end()) distinct.push_back(g);
      CHECK(distinct.size() <= 3);
    }
  }
}

TEST_CASE("tracker agrees with direct cut sets") {
  Scheme s = build("ammann_beenker").scheme;
  CutSetTracker t(s, 1);
  for (int r = 0; r <= 12; ++r) {
    t.grow_to(r);
    auto summary = region_summary(s, r);
    CHECK(t.size() == summary.sizes[1]);
    CHECK(t.min_gap() == summary.min_gap[1]);
  }
}

TEST_CASE("regions and patch classes correspond") {
  for (const auto& name : {"fibonacci", "ammann_beenker"}) {
    Scheme s = build(name).scheme;
    for (int r = 1; r <= 3; ++r) {
      auto cuts = cut_sets(s, r);
      std::map<std::vector<std::int64_t>, std::vector<std::size_t>> class_region;
      long R = s.d == 1 ? 100 : 25;
      auto pts = generate(s, R);
      std::set<std::vector<std::size_t>> regions;
      for (const auto& p : pts) {
        long m = 0;
        for (const auto& x : p.n) m = std::max(m, std::labs(x.get_si()));
        if (m > R - r) continue;
        auto loc = locate(cuts, p.internal);
        REQUIRE(loc.has_value());
        auto code = patch_at(s, p.n, r).code;
        auto it = class_region.find(code);
        if (it == class_region.end()) {
          class_region.emplace(code, *loc);
        } else {
          CHECK(it->second == *loc);
        }
        regions.insert(*loc);
      }
      CHECK(class_region.size() == regions.size());
    }
  }
}

TEST_CASE("zonotope membership") {
  Scheme ab = build("ammann_beenker", {{"window", "canonical"}}).scheme;
  Zonotope z = ab.canonical_window();
  FieldPtr f = ab.field;
  FieldVec mid = z.subset_sum(std::vector<bool>(4, false));
  for (const auto& g : z.generators())
    for (std::size_t i = 0; i < 2; ++i) mid[i] += g[i] * Rational(1, 2);
  CHECK(z.membership(mid) == Membership::Inside);
  CHECK(z.membership_elimination(mid) == Membership::Inside);
  for (int mask = 0; mask < 16; ++mask) {
    std::vector<bool> ch(4);
    for (int j = 0; j < 4; ++j) ch[static_cast<std::size_t>(j)] = (mask >> j) & 1;
    auto v = z.subset_sum(ch);
    CHECK(z.membership(v) != Membership::Outside);
    CHECK(z.membership(v) == z.membership_elimination(v));
  }

  // The octagon as printed in the literature is generated by +L(e_j); it is
  // the point reflection w -> (1,1) - w of the window used here.
  FieldElement r2 = FieldElement::theta(f);
  FieldElement c = (r2 + Rational(1)) * Rational(1, 2);
  FieldElement half(f, Rational(1, 2));
  std::vector<FieldVec> verts;
  for (int sx : {-1, 1})
    for (int sy : {-1, 1}) {
      verts.push_back({c + c * Rational(sx), half + half * Rational(sy)});
      verts.push_back({c + half * Rational(sx), half + c * Rational(sy)});
    }
  std::vector<FieldVec> plus_gens;
  for (const auto& g : z.generators()) plus_gens.push_back(g);
  for (std::size_t j = 0; j < 2; ++j)
    for (auto& x : plus_gens[j]) x = -x;
  Zonotope plus(plus_gens, 2);
  FieldElement one(f, Rational(1));
  for (const auto& v : verts) {
    CHECK(plus.membership(v) == Membership::Boundary);
    FieldVec refl{one - v[0], one - v[1]};
    CHECK(z.membership(refl) == Membership::Boundary);
    CHECK(z.membership_elimination(refl) == Membership::Boundary);
  }
  FieldVec far{FieldElement(f, Rational(3)), FieldElement(f, Rational(0))};
  CHECK(z.membership(far) == Membership::Outside);
  CHECK(z.membership_elimination(far) == Membership::Outside);

  // random agreement between the two decision procedures, including Penrose
  for (const auto& name : {"ammann_beenker", "penrose", "lemma_5_3"}) {
    Scheme s = build(name, {{"window", "canonical"}}).scheme;
    Zonotope w = s.canonical_window();
    for (long a = -2; a <= 2; ++a)
      for (long b = -2; b <= 2; ++b) {
        IntVec n(s.d, Integer(0));
        n[0] = a;
        n[1] = b;
        IntVec m(s.codim(), Integer(0));
        for (long t = -1; t <= 2; ++t) {
          m[0] = t;
          auto p = internal_point(s, n, m);
          CHECK(w.membership(p) == w.membership_elimination(p));
        }
      }
  }
}

TEST_CASE("sampled frequencies") {
  Scheme fib = build("fibonacci").scheme;
  auto r0 = sampled_frequencies(fib, 0, 100);
  REQUIRE(r0.classes.size() == 1);
  CHECK(r0.classes[0].frequency == doctest::Approx(1.0));

  auto rep = sampled_frequencies(fib, 1, 10000);
  auto comps = region_components(fib, 1);
  REQUIRE(rep.classes.size() == comps.size());
  std::multiset<long> got, want;
  double total = 0;
  for (const auto& c : rep.classes) {
    total += c.frequency;
    got.insert(std::lround(c.frequency * 1000));
  }
  for (const auto& c : comps) want.insert(std::lround(c.volume.to_double() * 1000));
  CHECK(got == want);
  CHECK(total == doctest::Approx(1.0));

  // hashed census equals the exact census
  for (const auto& name : {"fibonacci", "ammann_beenker", "penrose", "lemma_5_3"}) {
    for (const auto& window : {"cubical", "canonical"}) {
      Scheme s = build(name, {{"window", window}}).scheme;
      for (int r : {1, 2}) {
        long R = s.d == 1 ? 60 : (s.d == 2 ? 12 : 5);
        auto fast = sampled_frequencies(s, r, R, 2);
        auto exact = sampled_frequencies_exact(s, r, R);
        REQUIRE(fast.classes.size() == exact.classes.size());
        CHECK(fast.total == exact.total);
        std::vector<std::pair<std::vector<long>, std::size_t>> a, b;
        for (const auto& c : fast.classes) a.push_back({c.first_n, c.count});
        for (const auto& c : exact.classes) b.push_back({c.first_n, c.count});
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        CHECK(a == b);
      }
    }
  }
}

TEST_CASE("local derivability") {
  auto ab = local_derivability(build("ammann_beenker").scheme);
  CHECK(ab.cubical_from_canonical);
  CHECK_FALSE(ab.canonical_from_cubical);
  CHECK(ab.witnesses == std::vector<std::size_t>{1, 2});
  CHECK(local_derivability(build("fibonacci").scheme).canonical_from_cubical);
  CHECK(local_derivability(build("numberfield", {{"m", "1,1"}}).scheme).canonical_from_cubical);
  CHECK_FALSE(local_derivability(build("lemma_5_3").scheme).canonical_from_cubical);
}

TEST_CASE("region frequencies") {
  // cubical windows: the region is the component containing the point
  for (const auto& name : {"fibonacci", "ammann_beenker"}) {
    Scheme s = build(name).scheme;
    for (int r = 1; r <= 3; ++r) {
      RegionFrequency rf(s, r);
      auto cuts = cut_sets(s, r);
      auto comps = region_components(s, r);
      for (const auto& p : generate(s, s.d == 1 ? 40 : 6)) {
        FieldVec w = internal_point(s, p.n, p.offset);
        std::vector<double> wd;
        for (const auto& x : w) wd.push_back(x.to_double());
        auto loc = locate(cuts, w);
        REQUIRE(loc.has_value());
        std::size_t idx = 0;
        for (std::size_t i = 0; i < loc->size(); ++i) idx = idx * cuts[i].size() + (*loc)[i];
        CHECK(rf(wd) == doctest::Approx(comps[idx].volume.to_double()).epsilon(1e-9));
      }
    }
  }
  // canonical windows: one point per class, areas sum to one and match
  // the sampled census
  for (const auto& name : {"fibonacci", "ammann_beenker"}) {
    Scheme s = build(name, {{"window", "canonical"}}).scheme;
    long R = s.d == 1 ? 20000 : 150;
    auto rep = sampled_frequencies(s, 1, R);
    RegionFrequency rf(s, 1);
    std::map<std::vector<long>, std::vector<double>> first;
    for (const auto& p : generate(s, R)) {
      std::vector<long> n;
      for (const auto& x : p.n) n.push_back(x.get_si());
      if (first.count(n)) continue;
      std::vector<double> wd;
      for (const auto& x : internal_point(s, p.n, p.offset)) wd.push_back(x.to_double());
      first.emplace(n, wd);
    }
    double total = 0;
    for (const auto& c : rep.classes) {
      double f = rf(first.at(c.first_n));
      total += f;
      CHECK(std::fabs(f - c.frequency) < 5e-4);
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
  }
  CHECK_THROWS(RegionFrequency(build("penrose").scheme, 1));
}
