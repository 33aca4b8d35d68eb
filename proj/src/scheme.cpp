#include "lrcut/scheme.hpp"

#include <algorithm>
#include <cmath>

#include "lrcut/error.hpp"

namespace lrcut {

const char* to_string(WindowKind w) { return w == WindowKind::Cubical ? "cubical" : "canonical"; }

FieldElement Scheme::form_value(std::size_t i, const IntVec& n) const {
  FieldElement acc(field, Rational(0));
  for (std::size_t j = 0; j < d; ++j)
    if (sgn(n[j]) != 0) acc += forms[i][j] * Rational(n[j]);
  return acc;
}

FieldElement Scheme::form_value(std::size_t i, const FieldVec& v) const {
  FieldElement acc(field, Rational(0));
  for (std::size_t j = 0; j < d; ++j) acc += forms[i][j] * v[j];
  return acc;
}

void Scheme::validate_shape() const {
  if (d < 1 || k <= d) fail("InvalidDimensions", "need 1 <= d < k");
  if (!field) fail("BadParams", "missing field");
  if (forms.size() != k - d) fail("InvalidDimensions", "forms must have k-d rows");
  for (const auto& row : forms)
    if (row.size() != d) fail("InvalidDimensions", "each form must have d coefficients");
  if (s1.size() != d || s2.size() != k - d) fail("InvalidDimensions", "shift has wrong shape");
}

Zonotope Scheme::canonical_window() const {
  std::vector<FieldVec> gens;
  for (std::size_t j = 0; j < d; ++j) {
    FieldVec g;
    for (std::size_t i = 0; i < codim(); ++i) g.push_back(-forms[i][j]);
    gens.push_back(g);
  }
  for (std::size_t i = 0; i < codim(); ++i) {
    FieldVec e(codim(), FieldElement(field, Rational(0)));
    e[i] = FieldElement(field, Rational(1));
    gens.push_back(e);
  }
  return Zonotope(gens, codim());
}

namespace {

FieldVec shift_target(const Scheme& s) {
  FieldVec t;
  for (std::size_t i = 0; i < s.codim(); ++i) t.push_back(s.s2[i] - s.form_value(i, s.s1));
  return t;
}

}  // namespace

Regularity check_regular(const Scheme& s) {
  Regularity res;
  FieldVec t = shift_target(s);
  const std::size_t c = s.codim();
  if (s.window == WindowKind::Cubical || c == 1) {
    for (std::size_t i = 0; i < c; ++i) {
      std::vector<FieldElement> gens(s.forms[i].begin(), s.forms[i].end());
      gens.emplace_back(s.field, Rational(1));
      auto x = integer_combination(gens, t[i]);
      if (!x) continue;
      res.regular = false;
      res.coordinate = i;
      res.witness_n.assign(x->begin(), x->begin() + static_cast<long>(s.d));
      for (std::size_t q = 0; q < c; ++q) {
        FieldElement v = s.form_value(q, res.witness_n) - t[q];
        res.witness_offset.push_back(q == i ? Integer(-(*x)[s.d]) : v.ceil());
      }
      break;
    }
  } else {
    // Points of Z^k + s on a facet hyperplane nu . w = h need nu . t in the
    // Z-span of the nu . generators, since h itself lies in that span.
    Zonotope z = s.canonical_window();
    for (std::size_t f = 0; f < z.facets().size() && res.regular; ++f) {
      const auto& nu = z.facets()[f].normal;
      std::vector<FieldElement> gens;
      for (std::size_t j = 0; j < s.d; ++j) {
        FieldElement v(s.field, Rational(0));
        for (std::size_t i = 0; i < c; ++i) v += nu[i] * s.forms[i][j];
        gens.push_back(v);
      }
      for (std::size_t i = 0; i < c; ++i) gens.push_back(nu[i]);
      auto x = integer_combination(gens, dot(nu, t));
      if (!x) continue;
      res.regular = false;
      res.coordinate = f;
      res.witness_n.assign(x->begin(), x->begin() + static_cast<long>(s.d));
      for (std::size_t i = 0; i < c; ++i) res.witness_offset.push_back(-(*x)[s.d + i]);
    }
  }
  return res;
}

void assign_default_shift(Scheme& s) {
  static const long primes[] = {3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47};
  if (s.codim() > sizeof(primes) / sizeof(primes[0])) fail("BadParams", "codimension too large for default shift");
  s.s1.assign(s.d, FieldElement(s.field, Rational(0)));
  for (long q = 1; q < 200; q += 2) {
    s.s2.clear();
    for (std::size_t i = 0; i < s.codim(); ++i) s.s2.emplace_back(s.field, Rational(q, 2 * primes[i]));
    if (check_regular(s).regular) return;
  }
  fail("SingularShift", "no regular default shift found");
}

Scheme make_scheme(FieldPtr field, std::size_t k, std::size_t d, std::vector<FieldVec> forms, WindowKind window) {
  Scheme s;
  s.k = k;
  s.d = d;
  s.field = std::move(field);
  s.forms = std::move(forms);
  s.window = window;
  s.s1.assign(d, FieldElement(s.field, Rational(0)));
  s.s2.assign(k > d ? k - d : 0, FieldElement(s.field, Rational(0)));
  s.validate_shape();
  assign_default_shift(s);
  return s;
}

FieldVec internal_point(const Scheme& s, const IntVec& n, const IntVec& offset) {
  FieldVec t = shift_target(s);
  FieldVec w;
  for (std::size_t i = 0; i < s.codim(); ++i) w.push_back(t[i] - s.form_value(i, n) + Rational(offset[i]));
  return w;
}

AcceptanceOracle::AcceptanceOracle(const Scheme& s) : s_(s), dd_(s.codim()) {
  FieldVec t = shift_target(s);
  for (std::size_t i = 0; i < dd_; ++i) {
    std::vector<double> row;
    for (std::size_t j = 0; j < s.d; ++j) row.push_back(s.forms[i][j].to_double());
    alpha_.push_back(row);
    base_.push_back(t[i].to_double());
    scale_.push_back(1 + std::fabs(base_.back()));
  }
  if (s.window == WindowKind::Canonical) {
    zono_ = std::make_unique<Zonotope>(s.canonical_window());
    for (std::size_t i = 0; i < dd_; ++i) {
      box_lo_.push_back(zono_->box_lo()[i].to_double());
      box_hi_.push_back(zono_->box_hi()[i].to_double());
    }
    for (const auto& f : zono_->facets()) {
      nu_.push_back(f.normal_d);
      std::vector<double> nl;
      for (std::size_t j = 0; j < s.d; ++j) {
        FieldElement v(s.field, Rational(0));
        for (std::size_t i = 0; i < dd_; ++i) v += f.normal[i] * s.forms[i][j];
        nl.push_back(v.to_double());
      }
      nu_l_.push_back(nl);
      double b = dot(f.normal, t).to_double();
      nu_base_.push_back(b);
      nu_scale_.push_back(1 + std::fabs(b) + std::fabs(f.lo_d) + std::fabs(f.hi_d));
    }
  }
}

bool AcceptanceOracle::exact_inside(const long* n, const long* m) const {
  IntVec nn(n, n + s_.d), mm(m, m + dd_);
  Membership mem = zono_->membership(internal_point(s_, nn, mm));
  if (mem == Membership::Boundary) ++boundary_hits_;
  return mem != Membership::Outside;
}

void AcceptanceOracle::lifts(const std::vector<long>& n, std::vector<std::vector<long>>& out) const {
  std::vector<long> flat;
  std::size_t count = lifts_flat(n.data(), flat);
  out.assign(count, std::vector<long>(dd_));
  for (std::size_t c = 0; c < count; ++c)
    for (std::size_t i = 0; i < dd_; ++i) out[c][i] = flat[c * dd_ + i];
}

std::size_t AcceptanceOracle::lifts_flat(const long* n, std::vector<long>& out) const {
  const std::size_t d = s_.d;
  if (s_.window == WindowKind::Cubical) {
    for (std::size_t i = 0; i < dd_; ++i) {
      double v = -base_[i], mag = scale_[i];
      for (std::size_t j = 0; j < d; ++j) {
        double t = alpha_[i][j] * static_cast<double>(n[j]);
        v += t;
        mag += std::fabs(t);
      }
      double err = 1e-12 * mag;
      double a = std::ceil(v - err), b = std::ceil(v + err);
      if (a == b && std::fabs(v) < 1e15) {
        out.push_back(static_cast<long>(a));
      } else {
        IntVec nn(n, n + d);
        FieldElement x = s_.form_value(i, nn) - (s_.s2[i] - s_.form_value(i, s_.s1));
        out.push_back(x.ceil().get_si());
      }
    }
    return 1;
  }

  // Canonical: w = m + b with b_i = base_i - L_i(n).
  constexpr std::size_t kMax = 16;
  if (dd_ > kMax) fail("BadParams", "codimension too large");
  long lo[kMax], hi[kMax], m[kMax];
  for (std::size_t i = 0; i < dd_; ++i) {
    double v = base_[i], mag = scale_[i];
    for (std::size_t j = 0; j < d; ++j) {
      double t = alpha_[i][j] * static_cast<double>(n[j]);
      v -= t;
      mag += std::fabs(t);
    }
    double err = 1e-9 * mag + 1e-9;
    lo[i] = static_cast<long>(std::ceil(box_lo_[i] - v - err));
    hi[i] = static_cast<long>(std::floor(box_hi_[i] - v + err));
    if (lo[i] > hi[i]) return 0;
    m[i] = lo[i];
  }
  std::size_t count = 0;
  const auto& facets = zono_->facets();
  while (true) {
    int verdict = 1;  // 1 inside, 0 unsure, -1 outside
    for (std::size_t f = 0; f < nu_.size() && verdict != -1; ++f) {
      double v = nu_base_[f], mag = nu_scale_[f];
      for (std::size_t i = 0; i < dd_; ++i) {
        double t = nu_[f][i] * static_cast<double>(m[i]);
        v += t;
        mag += std::fabs(t);
      }
      for (std::size_t j = 0; j < d; ++j) {
        double t = nu_l_[f][j] * static_cast<double>(n[j]);
        v -= t;
        mag += std::fabs(t);
      }
      double err = 1e-11 * mag;
      if (v < facets[f].lo_d - err || v > facets[f].hi_d + err) {
        verdict = -1;
      } else if (!(v > facets[f].lo_d + err && v < facets[f].hi_d - err)) {
        verdict = 0;
      }
    }
    if (verdict == 1 || (verdict == 0 && exact_inside(n, m))) {
      out.insert(out.end(), m, m + dd_);
      ++count;
    }
    std::size_t i = dd_;
    bool more = false;
    while (i-- > 0) {
      if (m[i] < hi[i]) {
        ++m[i];
        for (std::size_t q = i + 1; q < dd_; ++q) m[q] = lo[q];
        more = true;
        break;
      }
    }
    if (!more) return count;
  }
}

namespace {

// Lexicographic odometer over [-radius, radius]^d, last coordinate fastest.
bool next_point(std::vector<long>& n, long lo, long hi) {
  for (std::size_t i = n.size(); i-- > 0;) {
    if (n[i] < hi) {
      ++n[i];
      return true;
    }
    n[i] = lo;
  }
  return false;
}

std::vector<std::vector<double>> embedded_basis(const Scheme& s) {
  std::vector<std::vector<double>> basis;
  for (std::size_t j = 0; j < s.d; ++j) {
    std::vector<double> v(s.k, 0.0);
    v[j] = 1.0;
    for (std::size_t i = 0; i < s.codim(); ++i) v[s.d + i] = s.forms[i][j].to_double();
    for (const auto& u : basis) {
      double p = 0;
      for (std::size_t q = 0; q < s.k; ++q) p += u[q] * v[q];
      for (std::size_t q = 0; q < s.k; ++q) v[q] -= p * u[q];
    }
    double norm = 0;
    for (double x : v) norm += x * x;
    norm = std::sqrt(norm);
    for (double& x : v) x /= norm;
    basis.push_back(v);
  }
  return basis;
}

}  // namespace

std::vector<AcceptedPoint> generate(const Scheme& s, long radius, bool embedded) {
  if (radius < 0) fail("BadParams", "radius must be nonnegative");
  if (!check_regular(s).regular) fail("SingularShift", "shift is not regular");
  AcceptanceOracle oracle(s);
  auto basis = embedded ? embedded_basis(s) : std::vector<std::vector<double>>{};
  std::vector<double> s1d;
  for (const auto& x : s.s1) s1d.push_back(x.to_double());
  std::vector<AcceptedPoint> out;
  std::vector<long> n(s.d, -radius);
  std::vector<std::vector<long>> lifts;
  do {
    oracle.lifts(n, lifts);
    for (const auto& m : lifts) {
      AcceptedPoint p;
      p.n.assign(n.begin(), n.end());
      p.offset.assign(m.begin(), m.end());
      p.internal = internal_point(s, p.n, p.offset);
      if (embedded) {
        // pi(n + s1, L(n + s1)) in the orthonormal basis of E
        std::vector<double> x(s.k);
        for (std::size_t j = 0; j < s.d; ++j) x[j] = static_cast<double>(n[j]) + s1d[j];
        for (std::size_t i = 0; i < s.codim(); ++i) {
          double v = 0;
          for (std::size_t j = 0; j < s.d; ++j) v += s.forms[i][j].to_double() * x[j];
          x[s.d + i] = v;
        }
        for (const auto& u : basis) {
          double c = 0;
          for (std::size_t q = 0; q < s.k; ++q) c += u[q] * x[q];
          p.embedded.push_back(c);
        }
      }
      out.push_back(std::move(p));
    }
  } while (next_point(n, -radius, radius));
  return out;
}

std::vector<std::pair<std::vector<long>, std::vector<long>>> PatchClass::entries(std::size_t d, std::size_t codim) const {
  std::vector<std::pair<std::vector<long>, std::vector<long>>> out;
  std::vector<long> delta(d, -radius);
  std::size_t pos = 0;
  do {
    auto count = static_cast<std::size_t>(code[pos++]);
    for (std::size_t c = 0; c < count; ++c) {
      std::vector<long> off(code.begin() + static_cast<long>(pos), code.begin() + static_cast<long>(pos + codim));
      pos += codim;
      out.emplace_back(delta, off);
    }
  } while (next_point(delta, -radius, radius));
  return out;
}

namespace {

PatchClass encode(const AcceptanceOracle& oracle, std::size_t d, const std::vector<long>& n0, const std::vector<long>& m0,
                  int r) {
  PatchClass p;
  p.radius = r;
  std::vector<long> delta(d, -r), n(d);
  std::vector<std::vector<long>> lifts;
  do {
    for (std::size_t j = 0; j < d; ++j) n[j] = n0[j] + delta[j];
    oracle.lifts(n, lifts);
    p.code.push_back(static_cast<std::int64_t>(lifts.size()));
    for (const auto& m : lifts)
      for (std::size_t i = 0; i < m.size(); ++i) p.code.push_back(m[i] - m0[i]);
  } while (next_point(delta, -r, r));
  return p;
}

std::vector<long> to_long(const IntVec& v) {
  std::vector<long> out;
  for (const auto& x : v) out.push_back(x.get_si());
  return out;
}

}  // namespace

PatchClass patch_at(const Scheme& s, const IntVec& n0, int r) {
  AcceptanceOracle oracle(s);
  std::vector<std::vector<long>> lifts;
  oracle.lifts(to_long(n0), lifts);
  if (lifts.empty()) fail("NotAccepted", "lattice coordinate is not accepted");
  return encode(oracle, s.d, to_long(n0), lifts.front(), r);
}

PatchClass patch_at(const Scheme& s, const IntVec& n0, const IntVec& offset0, int r) {
  AcceptanceOracle oracle(s);
  std::vector<std::vector<long>> lifts;
  oracle.lifts(to_long(n0), lifts);
  auto m0 = to_long(offset0);
  if (std::find(lifts.begin(), lifts.end(), m0) == lifts.end()) fail("NotAccepted", "lift is not accepted");
  return encode(oracle, s.d, to_long(n0), m0, r);
}

std::vector<PatchOccurrence> distinct_patches(const Scheme& s, int r, long search_radius) {
  AcceptanceOracle oracle(s);
  const std::size_t d = s.d;
  const long big = search_radius + r;
  const long side = 2 * big + 1;
  std::size_t total = 1;
  for (std::size_t j = 0; j < d; ++j) total *= static_cast<std::size_t>(side);
  std::vector<std::vector<std::vector<long>>> table(total);
  auto index_of = [&](const std::vector<long>& n) {
    std::size_t idx = 0;
    for (std::size_t j = 0; j < d; ++j) idx = idx * static_cast<std::size_t>(side) + static_cast<std::size_t>(n[j] + big);
    return idx;
  };
  {
    std::vector<long> n(d, -big);
    do {
      oracle.lifts(n, table[index_of(n)]);
    } while (next_point(n, -big, big));
  }

  std::map<std::vector<std::int64_t>, std::size_t> seen;
  std::vector<PatchOccurrence> out;
  std::vector<long> n0(d, -search_radius), delta(d), n(d);
  do {
    for (const auto& m0 : table[index_of(n0)]) {
      std::vector<std::int64_t> code;
      std::fill(delta.begin(), delta.end(), -r);
      do {
        for (std::size_t j = 0; j < d; ++j) n[j] = n0[j] + delta[j];
        const auto& lifts = table[index_of(n)];
        code.push_back(static_cast<std::int64_t>(lifts.size()));
        for (const auto& m : lifts)
          for (std::size_t i = 0; i < m.size(); ++i) code.push_back(m[i] - m0[i]);
      } while (next_point(delta, -r, r));
      auto it = seen.find(code);
      if (it == seen.end()) {
        seen.emplace(code, out.size());
        out.push_back({PatchClass{r, std::move(code)}, n0, m0, 1});
      } else {
        ++out[it->second].count;
      }
    }
  } while (next_point(n0, -search_radius, search_radius));
  return out;
}

}  // namespace lrcut
