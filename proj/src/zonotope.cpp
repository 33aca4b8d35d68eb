#include "lrcut/zonotope.hpp"

#include <algorithm>

#include "lrcut/error.hpp"

namespace lrcut {

const char* to_string(Membership m) {
  switch (m) {
    case Membership::Inside: return "Inside";
    case Membership::Boundary: return "Boundary";
    case Membership::Outside: return "Outside";
  }
  return "?";
}

FieldElement dot(const FieldVec& a, const FieldVec& b) {
  FieldElement acc(a.empty() ? FieldPtr() : a[0].field(), Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

FieldElement determinant(std::vector<FieldVec> m) {
  const std::size_t n = m.size();
  if (n == 0) return FieldElement(RealField::rationals(), Rational(1));
  FieldElement det(m[0][0].field(), Rational(1));
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m[p][c].is_zero()) ++p;
    if (p == n) return FieldElement(m[0][0].field(), Rational(0));
    if (p != c) {
      std::swap(m[p], m[c]);
      det = -det;
    }
    det = det * m[c][c];
    FieldElement inv = m[c][c].inverse();
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m[i][c].is_zero()) continue;
      FieldElement f = m[i][c] * inv;
      for (std::size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
    }
  }
  return det;
}

FieldVec normal_vector(const std::vector<FieldVec>& vectors, std::size_t dim) {
  FieldPtr f = vectors.empty() ? RealField::rationals() : vectors[0][0].field();
  FieldVec nu;
  for (std::size_t i = 0; i < dim; ++i) {
    std::vector<FieldVec> minor;
    for (const auto& v : vectors) {
      FieldVec row;
      for (std::size_t j = 0; j < dim; ++j)
        if (j != i) row.push_back(v[j]);
      minor.push_back(row);
    }
    FieldElement c = determinant(minor);
    if (c.field()->degree() == 1 && f->degree() > 1) c = FieldElement(f, c.rational_part());
    nu.push_back((i % 2 == 0) ? c : -c);
  }
  return nu;
}

namespace {

void next_subset(std::vector<std::size_t>& idx, std::size_t n, bool& done) {
  std::size_t k = idx.size();
  std::size_t i = k;
  while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
  if (i == 0) {
    done = true;
    return;
  }
  ++idx[i - 1];
  for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
}

}  // namespace

Zonotope::Zonotope(std::vector<FieldVec> generators, std::size_t dim) : dim_(dim), gens_(std::move(generators)) {
  if (gens_.size() < dim_) fail("InvalidDimensions", "zonotope needs at least dim generators");
  FieldPtr field = gens_[0][0].field();
  FieldElement zero(field, Rational(0));
  box_lo_.assign(dim_, zero);
  box_hi_.assign(dim_, zero);
  for (const auto& g : gens_)
    for (std::size_t i = 0; i < dim_; ++i) {
      if (g[i].sign() < 0) box_lo_[i] += g[i];
      if (g[i].sign() > 0) box_hi_[i] += g[i];
    }

  std::vector<FieldVec> seen;
  std::vector<std::size_t> idx(dim_ - 1);
  for (std::size_t i = 0; i + 1 < dim_; ++i) idx[i] = i;
  bool done = false;
  while (!done) {
    std::vector<FieldVec> chosen;
    for (auto i : idx) chosen.push_back(gens_[i]);
    FieldVec nu = normal_vector(chosen, dim_);
    auto lead = std::find_if(nu.begin(), nu.end(), [](const FieldElement& x) { return !x.is_zero(); });
    if (lead != nu.end()) {
      FieldElement inv = lead->inverse();
      for (auto& x : nu) x = x * inv;
      if (std::find(seen.begin(), seen.end(), nu) == seen.end()) {
        seen.push_back(nu);
        Facet f{nu, zero, zero, {}, 0, 0};
        for (const auto& g : gens_) {
          FieldElement v = dot(nu, g);
          if (v.sign() < 0) f.lo += v;
          if (v.sign() > 0) f.hi += v;
        }
        for (const auto& x : nu) f.normal_d.push_back(x.to_double());
        f.lo_d = f.lo.to_double();
        f.hi_d = f.hi.to_double();
        facets_.push_back(std::move(f));
      }
    }
    if (dim_ == 1) break;
    next_subset(idx, gens_.size(), done);
  }
  if (facets_.empty()) fail("InvalidDimensions", "degenerate zonotope");
}

Membership Zonotope::membership(const FieldVec& w) const {
  bool boundary = false;
  for (const auto& f : facets_) {
    FieldElement v = dot(f.normal, w);
    int a = v.compare(f.lo), b = v.compare(f.hi);
    if (a < 0 || b > 0) return Membership::Outside;
    if (a == 0 || b == 0) boundary = true;
  }
  return boundary ? Membership::Boundary : Membership::Inside;
}

FieldVec Zonotope::subset_sum(const std::vector<bool>& chosen) const {
  FieldVec s(dim_, FieldElement(gens_[0][0].field(), Rational(0)));
  for (std::size_t j = 0; j < gens_.size(); ++j)
    if (chosen[j])
      for (std::size_t i = 0; i < dim_; ++i) s[i] += gens_[j][i];
  return s;
}

namespace {

struct Ineq {
  FieldVec a;  // coefficients on the free variables
  FieldElement b;
  bool strict;
};

}  // namespace

Membership Zonotope::membership_elimination(const FieldVec& w) const {
  const std::size_t p = gens_.size();
  FieldPtr field = gens_[0][0].field();
  FieldElement zero(field, Rational(0)), one(field, Rational(1));
  // Augmented system G c = w, rows = coordinates.
  std::vector<FieldVec> m(dim_, FieldVec(p + 1, zero));
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < p; ++j) m[i][j] = gens_[j][i];
    m[i][p] = w[i];
  }
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < p && r < dim_; ++c) {
    std::size_t q = r;
    while (q < dim_ && m[q][c].is_zero()) ++q;
    if (q == dim_) continue;
    std::swap(m[q], m[r]);
    FieldElement inv = m[r][c].inverse();
    for (auto& x : m[r]) x = x * inv;
    for (std::size_t i = 0; i < dim_; ++i) {
      if (i == r || m[i][c].is_zero()) continue;
      FieldElement f = m[i][c];
      for (std::size_t j = 0; j <= p; ++j) m[i][j] -= f * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < dim_; ++i)
    if (!m[i][p].is_zero()) return Membership::Outside;
  std::vector<std::size_t> free_vars;
  for (std::size_t c = 0; c < p; ++c)
    if (std::find(pivots.begin(), pivots.end(), c) == pivots.end()) free_vars.push_back(c);
  const std::size_t nf = free_vars.size();

  // Every variable as affine function of the free ones: value = b + a . x.
  auto run = [&](bool strict) {
    std::vector<Ineq> sys;
    auto add_bounds = [&](const FieldVec& a, const FieldElement& b) {
      sys.push_back({a, b, strict});  // a.x + b >= 0
      FieldVec na = a;
      for (auto& x : na) x = -x;
      sys.push_back({na, one - b, strict});  // 1 - (a.x + b) >= 0
    };
    for (std::size_t t = 0; t < nf; ++t) {
      FieldVec a(nf, zero);
      a[t] = one;
      add_bounds(a, zero);
    }
    for (std::size_t i = 0; i < pivots.size(); ++i) {
      FieldVec a(nf, zero);
      for (std::size_t t = 0; t < nf; ++t) a[t] = -m[i][free_vars[t]];
      add_bounds(a, m[i][p]);
    }
    for (std::size_t t = nf; t-- > 0;) {
      std::vector<Ineq> pos, neg, next;
      for (auto& q : sys) {
        int s = q.a[t].sign();
        if (s > 0) pos.push_back(q);
        else if (s < 0) neg.push_back(q);
        else next.push_back(q);
      }
      for (const auto& P : pos)
        for (const auto& N : neg) {
          FieldElement cp = -N.a[t], cn = P.a[t];
          Ineq comb{FieldVec(nf, zero), P.b * cp + N.b * cn, P.strict || N.strict};
          for (std::size_t u = 0; u < t; ++u) comb.a[u] = P.a[u] * cp + N.a[u] * cn;
          next.push_back(std::move(comb));
        }
      sys = std::move(next);
    }
    for (const auto& q : sys) {
      int s = q.b.sign();
      if (s < 0 || (s == 0 && q.strict)) return false;
    }
    return true;
  };
  if (!run(false)) return Membership::Outside;
  return run(true) ? Membership::Inside : Membership::Boundary;
}

}  // namespace lrcut
