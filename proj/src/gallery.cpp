#include "lrcut/gallery.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "lrcut/error.hpp"

namespace lrcut {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep))
    if (!item.empty()) out.push_back(item);
  return out;
}

std::string param(const GalleryParams& p, const std::string& key, const std::string& fallback) {
  auto it = p.find(key);
  return it == p.end() ? fallback : it->second;
}

WindowKind window_param(const GalleryParams& p, WindowKind fallback) {
  std::string w = param(p, "window", fallback == WindowKind::Cubical ? "cubical" : "canonical");
  if (w == "cubical") return WindowKind::Cubical;
  if (w == "canonical") return WindowKind::Canonical;
  fail("BadParams", "window must be cubical or canonical");
}

FieldPtr root_of_two(long degree) {
  std::vector<Integer> mp(static_cast<std::size_t>(degree) + 1, Integer(0));
  mp[0] = -2;
  mp.back() = 1;
  return RealField::create(mp, Rational(1));
}

FieldElement power(const FieldElement& x, long e) {
  FieldElement r(x.field(), Rational(1));
  for (long i = 0; i < e; ++i) r = r * x;
  return r;
}

FieldElement q(const FieldPtr& f, long num, long den = 1) { return FieldElement(f, Rational(num, den)); }

GalleryEntry fibonacci(const GalleryParams& p) {
  auto f = RealField::create({Integer(-5), Integer(0), Integer(1)}, Rational(2236, 1000));
  FieldElement phi_inv(f, std::vector<Rational>{Rational(-1, 2), Rational(1, 2)});
  GalleryEntry e{"fibonacci", make_scheme(f, 2, 1, {{phi_inv}}, window_param(p, WindowKind::Cubical)), {}};
  e.expect.kernel_ranks = {0};
  e.expect.certificate = "PeriodicContinuedFraction";
  e.expect.overall = "LR_Proven";
  return e;
}

// L = sum_j theta^j x_j over Q(2^(1/(d+1))).
GalleryEntry codim1(const GalleryParams& p) {
  long d = std::stol(param(p, "d", "2"));
  if (d < 1 || d > 8) fail("BadParams", "codim1 needs 1 <= d <= 8");
  auto f = root_of_two(d + 1);
  FieldElement t = FieldElement::theta(f);
  FieldVec row;
  for (long j = 1; j <= d; ++j) row.push_back(power(t, j));
  GalleryEntry e{"codim1", make_scheme(f, static_cast<std::size_t>(d + 1), static_cast<std::size_t>(d), {row},
                                       window_param(p, WindowKind::Cubical)),
                 {}};
  e.expect.kernel_ranks = {0};
  e.expect.certificate = d == 1 ? "PeriodicContinuedFraction" : "PerronBasis";
  e.expect.overall = "LR_Proven";
  return e;
}

// Form i uses its own block of m_i variables with coefficients gamma_i^j,
// gamma_i = 2^(1/(m_i+1)), all inside Q(2^(1/D)).
GalleryEntry numberfield(const GalleryParams& p) {
  std::vector<long> m;
  for (const auto& s : split(param(p, "m", "1,1"), ',')) m.push_back(std::stol(s));
  if (m.empty()) fail("BadParams", "numberfield needs a nonempty partition m");
  long d = 0, lcm = 1;
  for (long mi : m) {
    if (mi < 1) fail("BadParams", "parts of m must be positive");
    d += mi;
    lcm = std::lcm(lcm, mi + 1);
  }
  if (lcm > 12) fail("BadParams", "field degree too large");
  auto f = root_of_two(lcm);
  FieldElement t = FieldElement::theta(f);
  std::vector<FieldVec> forms;
  long start = 0;
  std::vector<std::size_t> ranks;
  for (long mi : m) {
    FieldElement gamma = power(t, lcm / (mi + 1));
    FieldVec row(static_cast<std::size_t>(d), q(f, 0));
    for (long j = 1; j <= mi; ++j) row[static_cast<std::size_t>(start + j - 1)] = power(gamma, j);
    forms.push_back(row);
    ranks.push_back(static_cast<std::size_t>(d - mi));
    start += mi;
  }
  std::size_t k = static_cast<std::size_t>(d) + m.size();
  GalleryEntry e{"numberfield", make_scheme(f, k, static_cast<std::size_t>(d), forms, window_param(p, WindowKind::Cubical)), {}};
  e.expect.kernel_ranks = ranks;
  bool higher = std::any_of(m.begin(), m.end(), [](long mi) { return mi >= 2; });
  e.expect.certificate = higher ? "PerronBasis" : "PeriodicContinuedFraction";
  e.expect.overall = "LR_Proven";
  return e;
}

GalleryEntry ammann_beenker(const GalleryParams& p) {
  auto f = RealField::create({Integer(-2), Integer(0), Integer(1)}, Rational(1414, 1000));
  FieldElement h = FieldElement::theta(f) * Rational(1, 2);
  std::vector<FieldVec> forms{{h, h}, {h, -h}};
  GalleryEntry e{"ammann_beenker", make_scheme(f, 4, 2, forms, window_param(p, WindowKind::Cubical)), {}};
  e.expect.kernel_ranks = {1, 1};
  e.expect.certificate = "PeriodicContinuedFraction";
  e.expect.overall = "LR_Proven";
  return e;
}

GalleryEntry penrose(const GalleryParams& p) {
  auto f = RealField::create({Integer(-5), Integer(0), Integer(1)}, Rational(2236, 1000));
  FieldElement a2(f, std::vector<Rational>{Rational(-1, 2), Rational(1, 2)});  // 2 alpha_1
  std::vector<FieldVec> forms{{q(f, -1), a2}, {-a2, -a2}, {a2, q(f, -1)}};
  GalleryEntry e{"penrose", make_scheme(f, 5, 2, forms, window_param(p, WindowKind::Canonical)), {}};
  e.expect.kernel_ranks = {1, 1, 1};
  e.expect.lr1 = false;
  e.expect.totally_irrational = false;
  e.expect.overall = "Inapplicable";
  return e;
}

// alpha_1 = 2^(1/3), alpha_2 = 2^(2/3), beta = sqrt 2 inside Q(2^(1/6)).
GalleryEntry lemma_5_3(const GalleryParams& p) {
  auto f = root_of_two(6);
  FieldElement t = FieldElement::theta(f);
  FieldElement a1 = power(t, 2), a2 = power(t, 4), beta = power(t, 3);
  std::vector<FieldVec> forms{{-a1, -a2, q(f, -1)}, {q(f, 0), q(f, 0), -beta}};
  GalleryEntry e{"lemma_5_3", make_scheme(f, 5, 3, forms, window_param(p, WindowKind::Cubical)), {}};
  e.expect.kernel_ranks = {1, 2};
  e.expect.certificate = "PerronBasis";
  e.expect.overall = "LR_Proven";
  return e;
}

FieldElement parse_element(const FieldPtr& f, const std::string& s) {
  std::vector<Rational> c;
  for (const auto& part : split(s, ';')) c.push_back(parse_rational(part));
  if (c.empty() || c.size() > static_cast<std::size_t>(f->degree())) fail("BadParams", "bad field element: " + s);
  return FieldElement(f, c);
}

GalleryEntry lemma_5_5(const GalleryParams& p) {
  if (!p.count("alpha") || !p.count("beta"))
    fail("BadParams", "lemma_5_5 needs alpha and beta (coordinates separated by ';')");
  FieldPtr f = RealField::rationals();
  if (p.count("minpoly")) {
    std::vector<Integer> mp;
    for (const auto& s : split(p.at("minpoly"), ',')) mp.emplace_back(s);
    f = RealField::create(mp, parse_rational(param(p, "root_hint", "0")));
  }
  FieldElement alpha = parse_element(f, p.at("alpha"));
  FieldElement beta = parse_element(f, p.at("beta"));
  if (alpha.sign() <= 0 || alpha.is_rational()) fail("BadParams", "alpha must be a positive irrational");
  if (beta.sign() <= 0 || beta.is_rational()) fail("BadParams", "beta must be a positive irrational");
  std::vector<FieldVec> forms{{q(f, -2, 5), -alpha}, {-beta, beta * Rational(-5, 2)}};
  GalleryEntry e{"lemma_5_5", make_scheme(f, 4, 2, forms, window_param(p, WindowKind::Cubical)), {}};
  e.expect.kernel_ranks = {1, 1};
  // Quadratic constants are certified through their periodic expansions.
  bool quadratic = alpha.quadratic_relation().has_value() && beta.quadratic_relation().has_value();
  e.expect.certificate = quadratic ? "PeriodicContinuedFraction" : "";
  e.expect.overall = quadratic ? "LR_Proven" : "LR_Empirical";
  return e;
}

// Rational truncation of sum_{j<=4} 10^(-j!), flagged inexact.
GalleryEntry liouville(const GalleryParams& p) {
  auto f = RealField::rationals();
  Rational x = Rational(1, 10) + Rational(1, 100) + Rational(1, 1000000);
  Rational tiny(1);
  mpz_ui_pow_ui(tiny.get_den_mpz_t(), 10, 24);
  x += tiny;
  GalleryEntry e{"liouville", make_scheme(f, 2, 1, {{FieldElement(f, x)}}, window_param(p, WindowKind::Cubical)), {}};
  e.scheme.inexact = true;
  e.expect.kernel_ranks = {1};
  e.expect.lr1 = false;
  e.expect.overall = "NotLR_Empirical";
  return e;
}

GalleryEntry cubic_line(const GalleryParams& p) {
  auto f = root_of_two(3);
  FieldElement t = FieldElement::theta(f);
  GalleryEntry e{"cubic_line", make_scheme(f, 3, 1, {{t}, {t * t}}, window_param(p, WindowKind::Cubical)), {}};
  e.expect.kernel_ranks = {0, 0};
  e.expect.lr1 = false;
  e.expect.overall = "NotLR_Proven";
  return e;
}

}  // namespace

std::vector<std::string> gallery_names() {
  return {"fibonacci", "codim1", "numberfield", "ammann_beenker", "penrose", "lemma_5_3", "lemma_5_5", "liouville", "cubic_line"};
}

GalleryEntry build(const std::string& name, const GalleryParams& params) {
  if (name == "fibonacci") return fibonacci(params);
  if (name == "codim1") return codim1(params);
  if (name == "numberfield") return numberfield(params);
  if (name == "ammann_beenker") return ammann_beenker(params);
  if (name == "penrose") return penrose(params);
  if (name == "lemma_5_3") return lemma_5_3(params);
  if (name == "lemma_5_5") return lemma_5_5(params);
  if (name == "liouville") return liouville(params);
  if (name == "cubic_line") return cubic_line(params);
  fail("BadParams", "unknown gallery entry: " + name);
}

}  // namespace lrcut
