#include "lrcut/diophantine.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <sstream>
#include <thread>

#include "lrcut/error.hpp"
#include "lrcut/rational_matrix.hpp"

namespace lrcut {

std::vector<std::pair<Integer, Integer>> ContinuedFraction::convergents() const {
  std::vector<std::pair<Integer, Integer>> out;
  Integer p0 = 1, q0 = 0, p1 = 0, q1 = 1;  // p_{-1}, q_{-1}, p_{-2}, q_{-2}
  for (const auto& a : quotients) {
    Integer p = a * p0 + p1;
    Integer q = a * q0 + q1;
    p1 = p0;
    q1 = q0;
    p0 = p;
    q0 = q;
    out.emplace_back(p, q);
  }
  return out;
}

namespace {

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Integer floor_of(const Rational& x) { return floor_div(x.get_num(), x.get_den()); }

ContinuedFraction rational_cf(Rational x, std::size_t max_terms) {
  ContinuedFraction cf;
  while (cf.quotients.size() < max_terms) {
    Integer a = floor_of(x);
    cf.quotients.push_back(a);
    x -= a;
    if (sgn(x) == 0) {
      cf.terminated = true;
      break;
    }
    x = 1 / x;
  }
  return cf;
}

// x = (P + sqrt D) / Q with Q | D - P^2.
ContinuedFraction quadratic_cf(const FieldElement& x, const std::array<Integer, 3>& rel, std::size_t max_terms) {
  const Integer& a = rel[0];
  const Integer& b = rel[1];
  const Integer& c = rel[2];
  Integer disc = b * b - 4 * a * c;
  // Which root: compare x with -b / 2a.
  bool plus = x.sign_minus(Rational(-b, 2 * a)) > 0;
  Integer p = plus ? Integer(-b) : b;
  Integer qd = plus ? Integer(2 * a) : Integer(-2 * a);
  Integer D = disc;
  if ((D - p * p) % qd != 0) {
    Integer m = abs(qd);
    p *= m;
    D *= m * m;
    qd *= m;
  }
  Integer r;
  mpz_sqrt(r.get_mpz_t(), D.get_mpz_t());

  ContinuedFraction cf;
  std::map<std::pair<Integer, Integer>, std::size_t> seen;
  Integer P = p, Q = qd;
  while (cf.quotients.size() < max_terms) {
    auto key = std::make_pair(P, Q);
    auto it = seen.find(key);
    if (it != seen.end()) {
      cf.period = std::make_pair(it->second, cf.quotients.size() - it->second);
      break;
    }
    seen.emplace(key, cf.quotients.size());
    Integer q = Q > 0 ? floor_div(P + r, Q) : floor_div(P + r + 1, Q);
    cf.quotients.push_back(q);
    P = q * Q - P;
    Q = (D - P * P) / Q;
  }
  return cf;
}

// Quotients shared by every rational within 1/q^2 of v, q its denominator.
// The final quotient of a finite expansion is ambiguous (a vs a-1, 1), so
// it is dropped.
std::vector<Integer> inexact_prefix(const Rational& v, std::size_t max_terms) {
  Rational u(1);
  u /= Rational(v.get_den() * v.get_den());
  auto lo = rational_cf(v - u, max_terms + 1);
  auto hi = rational_cf(v + u, max_terms + 1);
  std::vector<Integer> out;
  std::size_t n = std::min(lo.quotients.size(), hi.quotients.size());
  for (std::size_t i = 0; i < n && i < max_terms && lo.quotients[i] == hi.quotients[i]; ++i) {
    if (i + 1 == lo.quotients.size() || i + 1 == hi.quotients.size()) break;
    out.push_back(lo.quotients[i]);
  }
  return out;
}

}  // namespace

ContinuedFraction continued_fraction(const FieldElement& x, std::size_t max_terms, bool inexact) {
  if (x.is_rational()) {
    Rational v = x.rational_part();
    if (!inexact) return rational_cf(v, max_terms);
    ContinuedFraction cf;
    cf.quotients = inexact_prefix(v, max_terms + 1);
    if (cf.quotients.size() < max_terms)
      fail("PrecisionExhausted", "only " + std::to_string(cf.quotients.size()) +
                                     " partial quotients are determined by the inexact input");
    cf.quotients.resize(max_terms);
    return cf;
  }
  if (auto rel = x.quadratic_relation()) return quadratic_cf(x, *rel, max_terms);
  ContinuedFraction cf;
  FieldElement y = x;
  while (cf.quotients.size() < max_terms) {
    auto [a, f] = y.floor_frac();
    cf.quotients.push_back(a);
    y = f.inverse();
  }
  return cf;
}

FieldElement nearest_integer_distance(const FieldElement& x) {
  FieldElement f = x.frac();
  FieldElement g = FieldElement(f.field(), Rational(1)) - f;
  return g < f ? g : f;
}

namespace {

struct Approx {
  long double hi = 0;
  long double lo = 0;
  long double err = 0;
};

Approx approximate(const FieldElement& x) {
  Rational w(1);
  mpq_div_2exp(w.get_mpq_t(), w.get_mpq_t(), 100);
  auto iv = x.to_interval(w);
  Rational mid = (iv.lo + iv.hi) / 2;
  Approx a;
  double h = mid.get_d();
  double l = Rational(mid - h).get_d();
  a.hi = h;
  a.lo = l;
  a.err = 1e-30L + std::fabs(l) * 1.2e-16L;
  return a;
}

struct ScanSpec {
  std::vector<FieldElement> coeffs;
  std::optional<FieldElement> shift;  // subtracted from the form
  long depth = 0;
  unsigned power = 0;      // weight |t|^power
  bool symmetric = true;   // only lex-positive t
};

struct ScanBest {
  std::optional<FieldElement> value;
  std::vector<long> t;
};

Integer ipow(long base, unsigned e) {
  Integer r = 1;
  for (unsigned i = 0; i < e; ++i) r *= base;
  return r;
}

FieldElement exact_value(const ScanSpec& spec, const std::vector<long>& t, long norm) {
  const FieldPtr& f = spec.coeffs[0].field();
  FieldElement s(f, Rational(0));
  for (std::size_t j = 0; j < t.size(); ++j)
    if (t[j] != 0) s += spec.coeffs[j] * Rational(t[j]);
  if (spec.shift) s -= *spec.shift;
  return nearest_integer_distance(s) * Rational(ipow(norm, spec.power));
}

ScanBest scan_chunk(const ScanSpec& spec, const std::vector<Approx>& ap, const Approx& sh, long first_lo,
                    long first_hi) {
  const std::size_t m = spec.coeffs.size();
  const long N = spec.depth;
  ScanBest best;
  long double best_d = INFINITY;
  std::vector<long> t(m, -N);
  const long double eps = 1.1e-19L * static_cast<long double>(m + 2);
  for (long t0 = first_lo; t0 <= first_hi; ++t0) {
    t[0] = t0;
    for (std::size_t j = 1; j < m; ++j) t[j] = -N;
    while (true) {
      bool skip = false;
      if (spec.symmetric) {
        std::size_t j = 0;
        while (j < m && t[j] == 0) ++j;
        skip = j == m || t[j] < 0;
      } else {
        skip = std::all_of(t.begin(), t.end(), [](long v) { return v == 0; });
      }
      if (!skip) {
        long norm = 0;
        long double s = 0, mag = 0, err = sh.err;
        for (std::size_t j = 0; j < m; ++j) {
          long double tj = static_cast<long double>(t[j]);
          s += tj * ap[j].hi + tj * ap[j].lo;
          mag += std::fabs(tj * ap[j].hi);
          err += std::fabs(tj) * ap[j].err;
          norm = std::max(norm, std::labs(t[j]));
        }
        s -= sh.hi + sh.lo;
        mag += std::fabs(sh.hi);
        long double dist = std::fabs(s - std::nearbyint(s));
        long double lower = dist - err - mag * eps - 1e-30L;
        long double w = std::pow(static_cast<long double>(norm), static_cast<long double>(spec.power));
        if (!best.value || w * lower <= best_d) {
          FieldElement v = exact_value(spec, t, norm);
          if (!best.value || v < *best.value) {
            best.value = v;
            best.t = t;
            auto [vd, ve] = v.approx_with_error();
            best_d = std::isfinite(ve) ? static_cast<long double>(vd) + ve + 1e-18L : INFINITY;
            if (std::isfinite(static_cast<double>(best_d))) best_d *= 1 + 1e-12L;
          }
        }
      }
      std::size_t j = m;
      while (j > 1 && t[j - 1] == N) t[--j] = -N;
      if (j <= 1) break;
      ++t[j - 1];
    }
  }
  return best;
}

ScanBest run_scan(const ScanSpec& spec, unsigned threads) {
  std::vector<Approx> ap;
  for (const auto& c : spec.coeffs) ap.push_back(approximate(c));
  Approx sh;
  if (spec.shift) sh = approximate(*spec.shift);
  const long N = spec.depth;
  long lo = spec.symmetric ? 0 : -N;
  long span = N - lo + 1;
  unsigned nt = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::min<long>(span, 64))));
  std::vector<ScanBest> parts(nt);
  std::vector<std::thread> pool;
  for (unsigned i = 0; i < nt; ++i) {
    long a = lo + span * i / nt;
    long b = lo + span * (i + 1) / nt - 1;
    if (nt == 1) {
      parts[i] = scan_chunk(spec, ap, sh, a, b);
    } else {
      pool.emplace_back([&, i, a, b] { parts[i] = scan_chunk(spec, ap, sh, a, b); });
    }
  }
  for (auto& th : pool) th.join();
  ScanBest best;
  for (auto& p : parts)
    if (p.value && (!best.value || *p.value < *best.value)) best = std::move(p);
  return best;
}

}  // namespace

namespace {

std::vector<FieldElement> restricted_values(const FieldVec& form, const Sublattice& lambda) {
  std::vector<FieldElement> out;
  for (const auto& b : lambda.basis()) {
    FieldElement v(form[0].field(), Rational(0));
    for (std::size_t i = 0; i < form.size(); ++i)
      if (sgn(b[i]) != 0) v += form[i] * Rational(b[i]);
    out.push_back(v);
  }
  return out;
}

bool meets_only_in_zero(const Sublattice& kernel, const Sublattice& lambda) {
  return intersect(kernel, lambda).rank() == 0;
}

// dim_Q span{1, c_1..c_m} = m + 1 and the span is closed under products,
// hence a field of degree m + 1.
bool perron_basis(const std::vector<FieldElement>& c) {
  if (c.empty()) return false;
  FieldPtr f = c[0].field();
  int n = f ? f->degree() : 1;
  std::size_t m = c.size();
  auto row = [&](const FieldElement& x) {
    std::vector<Rational> r(static_cast<std::size_t>(n), Rational(0));
    for (std::size_t i = 0; i < x.coordinates().size() && i < r.size(); ++i) r[i] = x.coordinates()[i];
    return r;
  };
  RationalMatrix mat;
  mat.push_back(row(FieldElement(f, Rational(1))));
  for (const auto& x : c) mat.push_back(row(x));
  if (qmat::rank(mat) != m + 1) return false;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i; j < m; ++j) {
      RationalMatrix ext = mat;
      ext.push_back(row(c[i] * c[j]));
      if (qmat::rank(ext) != m + 1) return false;
    }
  return true;
}

std::string join(const std::vector<Integer>& xs, std::size_t from, std::size_t to) {
  std::ostringstream os;
  for (std::size_t i = from; i < to && i < xs.size(); ++i) os << (i > from ? "," : "") << xs[i].get_str();
  return os.str();
}

}  // namespace

ScanResult bad_scan(const FieldVec& form, const Sublattice& lambda, long depth, unsigned threads) {
  if (lambda.rank() == 0) fail("ComplementInvalid", "bad_scan needs a lattice of rank at least 1");
  if (depth < 1) fail("BadParams", "scan depth must be positive");
  ScanResult res;
  res.depth = depth;
  res.rank = lambda.rank();
  res.basis = lambda.basis();
  res.precondition_ok = meets_only_in_zero(kernel_mod_one(form, lambda.ambient_dim()), lambda);
  ScanSpec spec;
  spec.coeffs = restricted_values(form, lambda);
  spec.depth = depth;
  spec.power = static_cast<unsigned>(lambda.rank());
  auto best = run_scan(spec, threads);
  res.infimum = *best.value;
  for (long v : best.t) res.witness.emplace_back(v);
  res.witness_point.assign(lambda.ambient_dim(), Integer(0));
  for (std::size_t j = 0; j < best.t.size(); ++j)
    for (std::size_t i = 0; i < res.witness_point.size(); ++i) res.witness_point[i] += best.t[j] * lambda.basis()[j][i];
  return res;
}

std::string to_string(BadStatus s) {
  switch (s) {
    case BadStatus::ProvenBad: return "ProvenBad";
    case BadStatus::ProvenNotBad: return "ProvenNotBad";
    case BadStatus::EmpiricalBad: return "EmpiricalBad";
    case BadStatus::EmpiricalNotBad: return "EmpiricalNotBad";
    case BadStatus::Unknown: break;
  }
  return "Unknown";
}

long default_depth(std::size_t m) {
  if (m == 0) return 1;
  return std::max(1L, static_cast<long>(std::floor(std::pow(10.0, 6.0 / static_cast<double>(m)) + 1e-9)));
}

BadVerdict relatively_bad(const FieldVec& form, const Sublattice& kernel, const Sublattice& lambda, long depth,
                          bool inexact, unsigned threads) {
  const std::size_t m = lambda.rank();
  if (m == 0) fail("ComplementInvalid", "the complement has rank 0");
  if (!meets_only_in_zero(kernel, lambda)) fail("ComplementInvalid", "the complement meets the kernel");
  auto c = restricted_values(form, lambda);
  BadVerdict v;

  if (!inexact && m == 1) {
    if (auto rel = c[0].quadratic_relation()) {
      auto cf = continued_fraction(c[0], 200);
      v.status = BadStatus::ProvenBad;
      v.certificate = "PeriodicContinuedFraction";
      std::ostringstream os;
      if (cf.period) {
        os << "preperiod " << cf.period->first << ", period [" << join(cf.quotients, cf.period->first, cf.period->first + cf.period->second) << "]";
      } else {
        os << "quadratic relation " << (*rel)[0].get_str() << "," << (*rel)[1].get_str() << "," << (*rel)[2].get_str();
      }
      v.evidence = os.str();
      return v;
    }
  }
  if (!inexact && perron_basis(c)) {
    v.status = BadStatus::ProvenBad;
    v.certificate = "PerronBasis";
    v.evidence = "1 and the " + std::to_string(m) + " restricted coefficients form a basis of a degree " +
                 std::to_string(m + 1) + " field";
    return v;
  }
  if (inexact && m == 1 && c[0].is_rational()) {
    auto q = inexact_prefix(c[0].rational_part(), 64);
    for (std::size_t i = 1; i < q.size(); ++i) {
      if (q[i] >= Integer(1000000)) {
        v.status = BadStatus::ProvenNotBad;
        v.certificate = "QuotientGrowth";
        v.evidence = "partial quotient a_" + std::to_string(i) + " = " + q[i].get_str();
        return v;
      }
    }
  }

  long n = depth > 0 ? depth : default_depth(m);
  auto deep = bad_scan(form, lambda, n, threads);
  v.depth = n;
  v.infimum = deep.infimum;
  v.witness = deep.witness_point;
  v.certificate = "Scan";
  v.status = BadStatus::EmpiricalBad;
  if (n >= 100) {
    auto shallow = bad_scan(form, lambda, n / 100, threads);
    if (deep.infimum * Rational(100) < shallow.infimum) v.status = BadStatus::EmpiricalNotBad;
  }
  v.evidence = "scan infimum " + std::to_string(deep.infimum.to_double()) + " at depth " + std::to_string(n);
  return v;
}

IndependenceReport complement_independence_check(const FieldVec& form, const Sublattice& kernel,
                                                 const Sublattice& lambda, const Sublattice& other, long depth,
                                                 unsigned threads) {
  for (const auto* l : {&lambda, &other})
    if (l->rank() == 0 || !meets_only_in_zero(kernel, *l))
      fail("ComplementInvalid", "complement is empty or meets the kernel");
  IndependenceReport r{bad_scan(form, lambda, depth, threads), bad_scan(form, other, depth, threads), 0, false};
  r.both_positive = r.first.infimum.sign() > 0 && r.second.infimum.sign() > 0;
  if (r.second.infimum.sign() > 0) r.ratio = r.first.infimum.to_double() / r.second.infimum.to_double();
  return r;
}

std::vector<Rational> random_targets(std::uint64_t seed, std::size_t count) {
  std::mt19937_64 gen(seed);
  std::vector<Rational> out;
  Integer den = 1;
  den <<= 32;
  for (std::size_t i = 0; i < count; ++i) {
    Integer num(static_cast<unsigned long>(gen() >> 32));
    Rational g(num, den);
    g.canonicalize();
    out.push_back(g);
  }
  return out;
}

TransferenceReport transference_probe(const FieldVec& form, long depth, const std::vector<Rational>& targets,
                                      std::size_t codim, unsigned threads) {
  if (form.empty() || depth < 1) fail("BadParams", "transference_probe needs a form and a positive depth");
  const FieldPtr& f = form[0].field();
  const std::size_t m = form.size();
  TransferenceReport rep;
  ScanSpec homog;
  homog.coeffs = form;
  homog.depth = depth;
  homog.power = static_cast<unsigned>(m);
  rep.c1_estimate = *run_scan(homog, threads).value;

  const double scale = std::pow(static_cast<double>(depth), static_cast<double>(m) / static_cast<double>(codim));
  for (const auto& g : targets) {
    ScanSpec s;
    s.coeffs = form;
    s.depth = depth;
    s.symmetric = false;
    s.shift = FieldElement(f, g);
    auto best = run_scan(s, threads);
    TargetResult t{g, {}, *best.value, best.value->to_double() * scale};
    for (long x : best.t) t.best_n.emplace_back(x);
    rep.max_scaled = std::max(rep.max_scaled, t.scaled);
    rep.targets.push_back(std::move(t));
  }
  for (long n = 10; n <= depth; n *= 10) {
    ScanSpec s;
    s.coeffs = form;
    s.depth = n;
    auto best = run_scan(s, threads);
    DirichletCheck d{n, *best.value, false};
    d.holds = (d.best * Rational(ipow(n, static_cast<unsigned>(m)))).sign_minus(Rational(1)) <= 0;
    rep.dirichlet.push_back(std::move(d));
  }
  return rep;
}

}  // namespace lrcut
