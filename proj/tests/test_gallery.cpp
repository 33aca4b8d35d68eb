#include <doctest.h>

#include "lrcut/error.hpp"
#include "lrcut/gallery.hpp"
#include "lrcut/lattice.hpp"

using namespace lrcut;

namespace {

std::vector<std::size_t> kernel_ranks(const Scheme& s) {
  std::vector<std::size_t> out;
  for (const auto& row : s.forms) out.push_back(kernel_mod_one(row, s.d).rank());
  return out;
}

const GalleryParams kLemma55{{"minpoly", "1,0,-10,0,1"},
                             {"root_hint", "3.146"},
                             {"alpha", "0;-9/2;0;1/2"},
                             {"beta", "0;11/2;0;-1/2"}};

GalleryParams params_for(const std::string& name) { return name == "lemma_5_5" ? kLemma55 : GalleryParams{}; }

}  // namespace

TEST_CASE("every entry builds with its expected kernel ranks") {
  for (const auto& name : gallery_names()) {
    CAPTURE(name);
    auto e = build(name, params_for(name));
    CHECK(e.name == name);
    CHECK(e.scheme.k > e.scheme.d);
    CHECK(e.scheme.forms.size() == e.scheme.codim());
    CHECK(kernel_ranks(e.scheme) == e.expect.kernel_ranks);
    CHECK(check_regular(e.scheme).regular);
    std::size_t sum = 0;
    for (auto r : e.expect.kernel_ranks) sum += r;
    bool lr1 = sum == e.scheme.d * (e.scheme.codim() - 1);
    if (e.expect.totally_irrational) CHECK(lr1 == e.expect.lr1);
  }
}

TEST_CASE("ammann beenker coefficients") {
  auto s = build("ammann_beenker").scheme;
  CHECK(s.k == 4);
  CHECK(s.d == 2);
  CHECK(s.window == WindowKind::Cubical);
  FieldElement h = FieldElement::theta(s.field) * Rational(1, 2);
  CHECK((h * h) == FieldElement(s.field, Rational(1, 2)));
  CHECK(s.forms[0][0] == h);
  CHECK(s.forms[0][1] == h);
  CHECK(s.forms[1][0] == h);
  CHECK(s.forms[1][1] == -h);
  auto cg = complement_groups({kernel_mod_one(s.forms[0], 2), kernel_mod_one(s.forms[1], 2)});
  CHECK(cg.ranks == std::vector<std::size_t>{1, 1});
  CHECK(cg.lambda[0].contains(IntVec{Integer(1), Integer(1)}));
  CHECK(cg.lambda[1].contains(IntVec{Integer(1), Integer(-1)}));
}

TEST_CASE("fibonacci and penrose") {
  auto fib = build("fibonacci").scheme;
  FieldElement x = fib.forms[0][0];
  CHECK(x * x + x == FieldElement(fib.field, Rational(1)));
  CHECK(x.to_double() == doctest::Approx(0.6180339887));

  auto pen = build("penrose").scheme;
  CHECK(pen.k == 5);
  CHECK(pen.window == WindowKind::Canonical);
  FieldElement a2 = pen.forms[0][1];
  // 4 a^2 + 2 a - 1 = 0 with a2 = 2a
  CHECK(a2 * a2 + a2 == FieldElement(pen.field, Rational(1)));
  // the three forms sum to an integer form, so they vanish together mod 1
  for (std::size_t j = 0; j < 2; ++j) {
    FieldElement t = pen.forms[0][j] + pen.forms[1][j] + pen.forms[2][j];
    CHECK(t == FieldElement(pen.field, Rational(-1)));
  }
  std::size_t total = 0;
  for (auto r : kernel_ranks(pen)) total += r;
  CHECK(total == 3);
}

TEST_CASE("split-block and quadratic entries") {
  auto s = build("lemma_5_3").scheme;
  CHECK(s.k == 5);
  CHECK(s.d == 3);
  FieldElement a1 = -s.forms[0][0], a2 = -s.forms[0][1];
  CHECK(a1 * a1 * a1 == FieldElement(s.field, Rational(2)));
  CHECK(a2 == a1 * a1);
  CHECK(s.forms[0][2] == FieldElement(s.field, Rational(-1)));
  FieldElement beta = -s.forms[1][2];
  CHECK(beta * beta == FieldElement(s.field, Rational(2)));

  auto e = build("lemma_5_5", kLemma55).scheme;
  FieldElement alpha = -e.forms[0][1];
  FieldElement b = -e.forms[1][0];
  CHECK(alpha * alpha == FieldElement(e.field, Rational(2)));
  CHECK(b * b == FieldElement(e.field, Rational(3)));
  CHECK(e.forms[0][0] == FieldElement(e.field, Rational(-2, 5)));
  CHECK(e.forms[1][1] == b * Rational(-5, 2));
  CHECK(kernel_mod_one(e.forms[0], 2) == Sublattice::from_generators(2, {{Integer(5), Integer(0)}}));
  CHECK(kernel_mod_one(e.forms[1], 2) == Sublattice::from_generators(2, {{Integer(5), Integer(-2)}}));
}

TEST_CASE("parameters") {
  CHECK(build("codim1", {{"d", "3"}}).scheme.k == 4);
  auto nf = build("numberfield", {{"m", "2,1"}});
  CHECK(nf.scheme.d == 3);
  CHECK(nf.scheme.k == 5);
  CHECK(kernel_ranks(nf.scheme) == std::vector<std::size_t>{1, 2});
  CHECK(build("ammann_beenker", {{"window", "canonical"}}).scheme.window == WindowKind::Canonical);

  auto code = [](auto fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return std::string();
  };
  CHECK(code([] { build("lemma_5_5"); }) == "BadParams");
  CHECK(code([] { build("lemma_5_5", {{"alpha", "3/2"}, {"beta", "1"}}); }) == "BadParams");
  CHECK(code([] {
          auto p = kLemma55;
          p["alpha"] = "0;9/2;0;-1/2";
          build("lemma_5_5", p);
        }) == "BadParams");
  CHECK(code([] { build("nope"); }) == "BadParams");
  CHECK(code([] { build("fibonacci", {{"window", "round"}}); }) == "BadParams");
  CHECK(code([] { build("numberfield", {{"m", "0"}}); }) == "BadParams");
}

TEST_CASE("liouville entry") {
  auto e = build("liouville");
  CHECK(e.scheme.inexact);
  CHECK(e.scheme.forms[0][0].is_rational());
  CHECK(e.expect.overall == "NotLR_Empirical");
  // the truncation is periodic with period 10^24
  auto ker = kernel_mod_one(e.scheme.forms[0], 1);
  Integer period;
  mpz_ui_pow_ui(period.get_mpz_t(), 10, 24);
  CHECK(ker == Sublattice::from_generators(1, {{period}}));
}
