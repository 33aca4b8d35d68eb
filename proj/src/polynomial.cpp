#include "lrcut/polynomial.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>

namespace lrcut::poly {

Polynomial from_integers(const std::vector<Integer>& coefficients) {
  Polynomial p(coefficients.begin(), coefficients.end());
  normalize(p);
  return p;
}

void normalize(Polynomial& p) {
  while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

int degree(const Polynomial& p) { return static_cast<int>(p.size()) - 1; }

Rational evaluate(const Polynomial& p, const Rational& x) {
  Rational acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

int sign_at(const Polynomial& p, const Rational& x) { return sgn(evaluate(p, x)); }

Polynomial derivative(const Polynomial& p) {
  Polynomial d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<long>(i));
  normalize(d);
  return d;
}

Polynomial multiply(const Polynomial& a, const Polynomial& b) {
  if (a.empty() || b.empty()) return {};
  Polynomial c(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  normalize(c);
  return c;
}

std::pair<Polynomial, Polynomial> divide(const Polynomial& a, const Polynomial& b) {
  Polynomial rem = a;
  normalize(rem);
  const int db = degree(b);
  if (degree(rem) < db) return {{}, rem};
  Polynomial quot(static_cast<std::size_t>(degree(rem) - db + 1), Rational(0));
  while (degree(rem) >= db && !rem.empty()) {
    const int shift = degree(rem) - db;
    Rational factor = rem.back() / b.back();
    quot[static_cast<std::size_t>(shift)] = factor;
    for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(shift + j)] -= factor * b[static_cast<std::size_t>(j)];
    rem.pop_back();
    normalize(rem);
  }
  normalize(quot);
  return {quot, rem};
}

Polynomial gcd(Polynomial a, Polynomial b) {
  normalize(a);
  normalize(b);
  while (!b.empty()) {
    auto r = divide(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    Rational lead = a.back();
    for (auto& c : a) c /= lead;
  }
  return a;
}

std::vector<Polynomial> sturm_sequence(const Polynomial& p) {
  std::vector<Polynomial> seq{p, derivative(p)};
  while (!seq.back().empty()) {
    auto r = divide(seq[seq.size() - 2], seq.back()).second;
    for (auto& c : r) c = -c;
    if (r.empty()) break;
    seq.push_back(std::move(r));
  }
  if (seq.back().empty()) seq.pop_back();
  return seq;
}

namespace {

int sign_changes(const std::vector<Polynomial>& sturm, const Rational& x) {
  int changes = 0;
  int last = 0;
  for (const auto& q : sturm) {
    int s = sign_at(q, x);
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

Rational cauchy_bound(const Polynomial& p) {
  Rational lead = abs(p.back());
  Rational best = 0;
  for (std::size_t i = 0; i + 1 < p.size(); ++i) best = std::max(best, Rational(abs(p[i]) / lead));
  return best + 1;
}

}  // namespace

int count_roots(const std::vector<Polynomial>& sturm, const Rational& a, const Rational& b) {
  return sign_changes(sturm, a) - sign_changes(sturm, b);
}

std::vector<RationalInterval> isolate_real_roots(const Polynomial& p) {
  std::vector<RationalInterval> out;
  if (degree(p) < 1) return out;
  const auto sturm = sturm_sequence(p);
  const Rational bound = cauchy_bound(p);

  std::function<void(const Rational&, const Rational&)> split = [&](const Rational& a, const Rational& b) {
    int n = count_roots(sturm, a, b);
    if (n == 0) return;
    if (n == 1) {
      if (sign_at(p, b) == 0) {
        out.push_back({b, b});
      } else {
        out.push_back({a, b});
      }
      return;
    }
    Rational mid = (a + b) / 2;
    split(a, mid);
    split(mid, b);
  };
  split(-bound, bound);
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.lo < y.lo; });
  return out;
}

RationalInterval refine_root(const Polynomial& p, RationalInterval iv, const Rational& width) {
  if (iv.lo == iv.hi) return iv;
  int slo = sign_at(p, iv.lo);
  if (slo == 0) return {iv.lo, iv.lo};
  if (sign_at(p, iv.hi) == 0) return {iv.hi, iv.hi};
  while (iv.width() > width) {
    Rational mid = (iv.lo + iv.hi) / 2;
    int sm = sign_at(p, mid);
    if (sm == 0) return {mid, mid};
    if (sm == slo) {
      iv.lo = mid;
    } else {
      iv.hi = mid;
    }
  }
  return iv;
}

namespace {

std::vector<Integer> signed_divisors(Integer n, bool positive_only) {
  n = abs(n);
  std::vector<Integer> divs;
  for (Integer i = 1; i * i <= n; ++i) {
    if (n % i == 0) {
      divs.push_back(i);
      if (i * i != n) divs.push_back(n / i);
    }
  }
  if (!positive_only) {
    std::size_t m = divs.size();
    for (std::size_t i = 0; i < m; ++i) divs.push_back(-divs[i]);
  }
  return divs;
}

Polynomial interpolate(const std::vector<Integer>& xs, const std::vector<Integer>& ys) {
  Polynomial result;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    Polynomial basis{Rational(1)};
    Rational denom = 1;
    for (std::size_t j = 0; j < xs.size(); ++j) {
      if (j == i) continue;
      basis = multiply(basis, Polynomial{Rational(-xs[j]), Rational(1)});
      denom *= Rational(xs[i] - xs[j]);
    }
    Rational scale = Rational(ys[i]) / denom;
    if (result.size() < basis.size()) result.resize(basis.size(), Rational(0));
    for (std::size_t k = 0; k < basis.size(); ++k) result[k] += basis[k] * scale;
  }
  normalize(result);
  return result;
}

}  // namespace

std::optional<bool> is_irreducible(const std::vector<Integer>& coefficients) {
  Polynomial p = from_integers(coefficients);
  const int n = degree(p);
  if (n <= 1) return n == 1;
  constexpr long kWorkLimit = 4'000'000;
  long work = 0;

  for (int s = 1; s <= n / 2; ++s) {
    // Pick s+1 integer sample points with the smallest nonzero values.
    std::vector<std::pair<Integer, Integer>> samples;
    for (long t = 0; t <= 24; ++t) {
      for (long x : {t, -t}) {
        if (t == 0 && x != 0) continue;
        Rational v = evaluate(p, Rational(x));
        if (sgn(v) == 0) return false;  // rational root
        samples.emplace_back(Integer(x), v.get_num());
        if (t == 0) break;
      }
    }
    std::sort(samples.begin(), samples.end(), [](const auto& a, const auto& b) { return abs(a.second) < abs(b.second); });
    samples.resize(static_cast<std::size_t>(s + 1));
    for (const auto& smp : samples)
      if (abs(smp.second) > Integer("1000000000000")) return std::nullopt;

    std::vector<Integer> xs;
    std::vector<std::vector<Integer>> choices;
    for (std::size_t i = 0; i < samples.size(); ++i) {
      xs.push_back(samples[i].first);
      choices.push_back(signed_divisors(samples[i].second, i == 0));
    }
    std::vector<std::size_t> idx(choices.size(), 0);
    std::vector<Integer> ys(choices.size());
    while (true) {
      if (++work > kWorkLimit) return std::nullopt;
      for (std::size_t i = 0; i < idx.size(); ++i) ys[i] = choices[i][idx[i]];
      Polynomial g = interpolate(xs, ys);
      if (degree(g) == s) {
        bool integral = std::all_of(g.begin(), g.end(), [](const Rational& c) { return c.get_den() == 1; });
        if (integral && divide(p, g).second.empty()) return false;
      }
      std::size_t pos = 0;
      while (pos < idx.size() && ++idx[pos] == choices[pos].size()) idx[pos++] = 0;
      if (pos == idx.size()) break;
    }
  }
  return true;
}

}  // namespace lrcut::poly
