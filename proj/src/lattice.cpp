#include "lrcut/lattice.hpp"

#include <algorithm>

#include "lrcut/error.hpp"

namespace lrcut {

namespace {

Integer fdiv(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

void axpy(IntVec& y, const Integer& a, const IntVec& x) {
  if (sgn(a) == 0) return;
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
}

IntVec reversed(const IntVec& v) { return IntVec(v.rbegin(), v.rend()); }

std::size_t last_nonzero(const IntVec& v) {
  for (std::size_t i = v.size(); i-- > 0;)
    if (sgn(v[i]) != 0) return i;
  return v.size();
}

}  // namespace

namespace imat {

HermiteResult hermite(const IntMatrix& m, std::size_t cols) {
  HermiteResult res;
  res.h = m;
  const std::size_t n = m.size();
  res.u.assign(n, IntVec(n, Integer(0)));
  for (std::size_t i = 0; i < n; ++i) res.u[i][i] = 1;
  auto& h = res.h;
  auto& u = res.u;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < n; ++c) {
    while (true) {
      std::size_t p = n;
      for (std::size_t i = r; i < n; ++i) {
        if (sgn(h[i][c]) == 0) continue;
        if (p == n || abs(h[i][c]) < abs(h[p][c])) p = i;
      }
      if (p == n) break;
      std::swap(h[p], h[r]);
      std::swap(u[p], u[r]);
      bool done = true;
      for (std::size_t i = r + 1; i < n; ++i) {
        if (sgn(h[i][c]) == 0) continue;
        Integer q = h[i][c] / h[r][c];  // truncating
        axpy(h[i], -q, h[r]);
        axpy(u[i], -q, u[r]);
        if (sgn(h[i][c]) != 0) done = false;
      }
      if (done) break;
    }
    if (r >= n || sgn(h[r][c]) == 0) continue;
    if (sgn(h[r][c]) < 0) {
      for (auto& v : h[r]) v = -v;
      for (auto& v : u[r]) v = -v;
    }
    for (std::size_t i = 0; i < r; ++i) {
      Integer q = fdiv(h[i][c], h[r][c]);
      axpy(h[i], -q, h[r]);
      axpy(u[i], -q, u[r]);
    }
    res.pivots.push_back(c);
    ++r;
  }
  res.rank = r;
  return res;
}

IntMatrix left_kernel(const IntMatrix& m, std::size_t cols) {
  auto res = hermite(m, cols);
  return IntMatrix(res.u.begin() + static_cast<long>(res.rank), res.u.end());
}

std::optional<IntVec> solve_integer(const IntMatrix& gens, const IntVec& target) {
  const std::size_t cols = target.size();
  if (gens.empty()) {
    if (std::all_of(target.begin(), target.end(), [](const Integer& v) { return sgn(v) == 0; })) return IntVec{};
    return std::nullopt;
  }
  auto res = hermite(gens, cols);
  IntVec residual = target;
  IntVec y(gens.size(), Integer(0));
  for (std::size_t r = 0; r < res.rank; ++r) {
    std::size_t p = res.pivots[r];
    if (residual[p] % res.h[r][p] != 0) return std::nullopt;
    y[r] = residual[p] / res.h[r][p];
    axpy(residual, -y[r], res.h[r]);
  }
  if (!std::all_of(residual.begin(), residual.end(), [](const Integer& v) { return sgn(v) == 0; })) return std::nullopt;
  IntVec x(gens.size(), Integer(0));
  for (std::size_t r = 0; r < res.rank; ++r) axpy(x, y[r], res.u[r]);
  return x;
}

}  // namespace imat

Sublattice Sublattice::from_generators(std::size_t dim, const IntMatrix& generators) {
  Sublattice s;
  s.dim_ = dim;
  if (generators.empty()) return s;
  IntMatrix rev;
  for (const auto& g : generators) {
    if (g.size() != dim) fail("InvalidDimensions", "generator has wrong dimension");
    rev.push_back(reversed(g));
  }
  auto res = imat::hermite(rev, dim);
  for (std::size_t r = res.rank; r-- > 0;) s.basis_.push_back(reversed(res.h[r]));
  return s;
}

Sublattice Sublattice::full(std::size_t dim) {
  IntMatrix id(dim, IntVec(dim, Integer(0)));
  for (std::size_t i = 0; i < dim; ++i) id[i][i] = 1;
  return from_generators(dim, id);
}

bool Sublattice::contains(const IntVec& v0) const {
  if (v0.size() != dim_) return false;
  IntVec v = v0;
  for (std::size_t i = basis_.size(); i-- > 0;) {
    std::size_t p = last_nonzero(basis_[i]);
    for (std::size_t c = p + 1; c < dim_; ++c)
      if (sgn(v[c]) != 0) return false;
    if (v[p] % basis_[i][p] != 0) return false;
    axpy(v, -(v[p] / basis_[i][p]), basis_[i]);
  }
  return std::all_of(v.begin(), v.end(), [](const Integer& x) { return sgn(x) == 0; });
}

Integer Sublattice::index() const {
  if (basis_.size() != dim_) return 0;
  Integer det = 1;
  for (std::size_t i = 0; i < dim_; ++i) det *= basis_[i][i];
  return det;
}

Sublattice intersect(const Sublattice& a, const Sublattice& b) {
  const std::size_t dim = a.ambient_dim();
  if (a.rank() == 0 || b.rank() == 0) return Sublattice::zero(dim);
  IntMatrix stacked = a.basis();
  for (auto row : b.basis()) {
    for (auto& v : row) v = -v;
    stacked.push_back(row);
  }
  IntMatrix gens;
  for (const auto& x : imat::left_kernel(stacked, dim)) {
    IntVec v(dim, Integer(0));
    for (std::size_t j = 0; j < a.rank(); ++j) axpy(v, x[j], a.basis()[j]);
    gens.push_back(v);
  }
  return Sublattice::from_generators(dim, gens);
}

Sublattice sum(const Sublattice& a, const Sublattice& b) {
  IntMatrix gens = a.basis();
  gens.insert(gens.end(), b.basis().begin(), b.basis().end());
  return Sublattice::from_generators(a.ambient_dim(), gens);
}

IntVec reduce_to_representative(const Sublattice& a, IntVec v) {
  if (a.rank() != a.ambient_dim()) fail("NotFullRank", "coset reduction needs a full rank lattice");
  for (std::size_t i = a.rank(); i-- > 0;) axpy(v, -fdiv(v[i], a.basis()[i][i]), a.basis()[i]);
  return v;
}

CosetSystem coset_representatives(const Sublattice& a) {
  const std::size_t d = a.ambient_dim();
  if (a.rank() != d) fail("NotFullRank", "coset representatives need a full rank lattice");
  CosetSystem cs{a, {}, a.index()};
  IntVec cur(d, Integer(0));
  while (true) {
    cs.representatives.push_back(cur);
    std::size_t i = 0;
    while (i < d) {
      cur[i] += 1;
      if (cur[i] < a.basis()[i][i]) break;
      cur[i] = 0;
      ++i;
    }
    if (i == d) break;
  }
  return cs;
}

Sublattice kernel_mod_one(const std::vector<FieldElement>& row, std::size_t d) {
  if (row.size() != d) fail("InvalidDimensions", "form has wrong length");
  std::size_t n = 1;
  for (const auto& a : row) n = std::max(n, a.coordinates().size());
  Integer q = 1;
  for (const auto& a : row)
    for (const auto& c : a.coordinates()) mpz_lcm(q.get_mpz_t(), q.get_mpz_t(), c.get_den_mpz_t());
  IntMatrix m(d + 1, IntVec(n, Integer(0)));
  for (std::size_t j = 0; j < d; ++j) {
    const auto& c = row[j].coordinates();
    for (std::size_t t = 0; t < c.size(); ++t) m[j][t] = Rational(c[t] * q).get_num();
  }
  m[d][0] = -q;
  IntMatrix gens;
  for (const auto& x : imat::left_kernel(m, n)) gens.emplace_back(x.begin(), x.begin() + static_cast<long>(d));
  return Sublattice::from_generators(d, gens);
}

Sublattice intersect_all(const std::vector<Sublattice>& lattices, std::size_t dim) {
  Sublattice acc = Sublattice::full(dim);
  for (const auto& s : lattices) acc = intersect(acc, s);
  return acc;
}

ComplementGroups complement_groups(const std::vector<Sublattice>& kernels) {
  if (kernels.empty()) fail("InvalidDimensions", "no kernels");
  const std::size_t d = kernels[0].ambient_dim();
  ComplementGroups out;
  out.total = Sublattice::zero(d);
  for (std::size_t i = 0; i < kernels.size(); ++i) {
    std::vector<Sublattice> others;
    for (std::size_t j = 0; j < kernels.size(); ++j)
      if (j != i) others.push_back(kernels[j]);
    Sublattice li = intersect_all(others, d);
    if (li.rank() + kernels[i].rank() != d)
      fail("Lr1Violated", "rank of complement group does not match kernel rank");
    out.ranks.push_back(li.rank());
    out.total = sum(out.total, li);
    out.lambda.push_back(std::move(li));
  }
  if (out.total.rank() != d) fail("Lr1Violated", "complement groups do not span");
  return out;
}

}  // namespace lrcut

namespace lrcut {

std::optional<IntVec> integer_combination(const std::vector<FieldElement>& gens, const FieldElement& target) {
  std::size_t n = target.coordinates().size();
  for (const auto& g : gens) n = std::max(n, g.coordinates().size());
  Integer q = 1;
  auto scan = [&](const FieldElement& x) {
    for (const auto& c : x.coordinates()) mpz_lcm(q.get_mpz_t(), q.get_mpz_t(), c.get_den_mpz_t());
  };
  for (const auto& g : gens) scan(g);
  scan(target);
  auto scaled = [&](const FieldElement& x) {
    IntVec v(n, Integer(0));
    const auto& c = x.coordinates();
    for (std::size_t t = 0; t < c.size(); ++t) v[t] = Rational(c[t] * q).get_num();
    return v;
  };
  IntMatrix rows;
  for (const auto& g : gens) rows.push_back(scaled(g));
  return imat::solve_integer(rows, scaled(target));
}

}  // namespace lrcut
