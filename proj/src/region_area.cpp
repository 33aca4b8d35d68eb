#include <algorithm>
#include <array>
#include <cmath>

#include "lrcut/error.hpp"
#include "lrcut/window.hpp"

namespace lrcut {

namespace {

using Pt = std::array<double, 2>;
using Poly = std::vector<Pt>;

// Keeps the part of a convex polygon with a.x <= c.
Poly clip(const Poly& p, const std::vector<double>& a, double c) {
  Poly out;
  const std::size_t n = p.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Pt& x = p[i];
    const Pt& y = p[(i + 1) % n];
    double fx = a[0] * x[0] + a[1] * x[1] - c;
    double fy = a[0] * y[0] + a[1] * y[1] - c;
    if (fx <= 0) out.push_back(x);
    if ((fx < 0 && fy > 0) || (fx > 0 && fy < 0)) {
      double t = fx / (fx - fy);
      out.push_back({x[0] + t * (y[0] - x[0]), x[1] + t * (y[1] - x[1])});
    }
  }
  return out;
}

Poly clip_ge(const Poly& p, const std::vector<double>& a, double c) { return clip(p, {-a[0], -a[1]}, -c); }

double area(const Poly& p) {
  double s = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const Pt& x = p[i];
    const Pt& y = p[(i + 1) % p.size()];
    s += x[0] * y[1] - x[1] * y[0];
  }
  return std::fabs(s) / 2;
}

double dot2(const std::vector<double>& a, const Pt& x) { return a[0] * x[0] + a[1] * x[1]; }

Poly big_box() {
  const double b = 1e6;
  return {{-b, -b}, {b, -b}, {b, b}, {-b, b}};
}

}  // namespace

RegionFrequency::RegionFrequency(const Scheme& s, int r) : c_(s.codim()) {
  if (c_ > 2) fail("BadParams", "region frequencies need k - d <= 2");
  if (r < 0) fail("BadParams", "radius must be nonnegative");
  if (s.window == WindowKind::Canonical) {
    Zonotope z = s.canonical_window();
    for (const auto& f : z.facets()) {
      std::vector<double> nrm = f.normal_d;
      nrm.resize(2, 0.0);
      slabs_.push_back({nrm, f.lo_d, f.hi_d});
    }
  } else {
    for (std::size_t i = 0; i < c_; ++i) {
      std::vector<double> nrm(2, 0.0);
      nrm[i] = 1;
      slabs_.push_back({nrm, 0.0, 1.0});
    }
  }
  // A one dimensional window becomes a unit-height strip.
  if (c_ == 1) slabs_.push_back({{0.0, 1.0}, 0.0, 1.0});

  Poly w = big_box();
  for (const auto& sl : slabs_) w = clip_ge(clip(w, sl.normal, sl.hi), sl.normal, sl.lo);
  window_area_ = area(w);
  if (w.empty() || window_area_ <= 0) fail("BadParams", "degenerate window");
  std::vector<double> lo(2, 1e300), hi(2, -1e300);
  for (const auto& p : w)
    for (std::size_t i = 0; i < 2; ++i) {
      lo[i] = std::min(lo[i], p[i]);
      hi[i] = std::max(hi[i], p[i]);
    }
  for (std::size_t i = 0; i < 2; ++i) {
    dlo_.push_back(lo[i] - hi[i]);
    dhi_.push_back(hi[i] - lo[i]);
  }

  std::vector<std::vector<double>> a(c_, std::vector<double>(s.d));
  for (std::size_t i = 0; i < c_; ++i)
    for (std::size_t j = 0; j < s.d; ++j) a[i][j] = s.forms[i][j].to_double();
  std::vector<long> m(s.d, -r);
  while (true) {
    std::vector<double> u(2, 0.0);
    for (std::size_t i = 0; i < c_; ++i)
      for (std::size_t j = 0; j < s.d; ++j) u[i] -= a[i][j] * static_cast<double>(m[j]);
    u_.push_back(u);
    std::size_t j = s.d;
    while (j > 0 && m[j - 1] == r) m[--j] = -r;
    if (j == 0) break;
    ++m[j - 1];
  }
}

double RegionFrequency::operator()(const std::vector<double>& w0) const {
  Pt w{w0.at(0), c_ == 2 ? w0.at(1) : 0.5};
  const std::size_t nf = slabs_.size();
  std::vector<double> nw(nf);
  for (std::size_t f = 0; f < nf; ++f) nw[f] = dot2(slabs_[f].normal, w);

  // Calls fn(x, inside) for every translate v = t - L(m) that can meet W,
  // with x_f = normal_f . v.
  std::vector<double> x(nf);
  auto each_translate = [&](auto&& fn) {
    for (const auto& u : u_) {
      long t0lo = static_cast<long>(std::ceil(dlo_[0] - u[0])), t0hi = static_cast<long>(std::floor(dhi_[0] - u[0]));
      long t1lo = 0, t1hi = 0;
      if (c_ == 2) {
        t1lo = static_cast<long>(std::ceil(dlo_[1] - u[1]));
        t1hi = static_cast<long>(std::floor(dhi_[1] - u[1]));
      }
      for (long t0 = t0lo; t0 <= t0hi; ++t0)
        for (long t1 = t1lo; t1 <= t1hi; ++t1) {
          Pt v{u[0] + static_cast<double>(t0), u[1] + static_cast<double>(t1)};
          bool inside = true;
          for (std::size_t f = 0; f < nf; ++f) {
            x[f] = dot2(slabs_[f].normal, v);
            double y = nw[f] + x[f];
            inside = inside && y >= slabs_[f].lo && y <= slabs_[f].hi;
          }
          fn(inside);
        }
    }
  };

  // Points sharing every membership with w: inside all translates that
  // contain w ...
  std::vector<double> lo(nf), hi(nf);
  for (std::size_t f = 0; f < nf; ++f) {
    lo[f] = slabs_[f].lo;
    hi[f] = slabs_[f].hi;
  }
  each_translate([&](bool inside) {
    if (!inside) return;
    for (std::size_t f = 0; f < nf; ++f) {
      lo[f] = std::max(lo[f], slabs_[f].lo - x[f]);
      hi[f] = std::min(hi[f], slabs_[f].hi - x[f]);
    }
  });
  // the window lies in w + [dlo, dhi]
  Poly p{{w[0] + dlo_[0], w[1] + dlo_[1]}, {w[0] + dhi_[0], w[1] + dlo_[1]}, {w[0] + dhi_[0], w[1] + dhi_[1]}, {w[0] + dlo_[0], w[1] + dhi_[1]}};
  for (std::size_t f = 0; f < nf; ++f) p = clip_ge(clip(p, slabs_[f].normal, hi[f]), slabs_[f].normal, lo[f]);
  if (p.size() < 3) return 0;

  auto ranges = [&](const Poly& q, std::vector<double>& qmin, std::vector<double>& qmax) {
    qmin.assign(nf, 1e300);
    qmax.assign(nf, -1e300);
    for (const auto& v : q)
      for (std::size_t f = 0; f < nf; ++f) {
        double y = dot2(slabs_[f].normal, v);
        qmin[f] = std::min(qmin[f], y);
        qmax[f] = std::max(qmax[f], y);
      }
  };
  // Separating axes: both polygons have their edge normals among the slabs.
  auto overlaps = [&](const std::vector<double>& qmin, const std::vector<double>& qmax, const std::vector<double>& hx) {
    for (std::size_t f = 0; f < nf; ++f) {
      double a = std::max(qmin[f], slabs_[f].lo - hx[f]);
      double b = std::min(qmax[f], slabs_[f].hi - hx[f]);
      if (a >= b - 1e-13 * (1 + std::fabs(b))) return false;
    }
    return true;
  };

  // ... and outside every translate that misses it.
  std::vector<double> pmin, pmax;
  ranges(p, pmin, pmax);
  std::vector<std::vector<double>> holes;
  each_translate([&](bool inside) {
    if (!inside && overlaps(pmin, pmax, x)) holes.push_back(x);
  });

  std::vector<Poly> pieces{p};
  std::vector<double> qmin, qmax;
  for (const auto& hx : holes) {
    std::vector<Poly> next;
    for (auto& piece : pieces) {
      ranges(piece, qmin, qmax);
      if (!overlaps(qmin, qmax, hx)) {
        next.push_back(std::move(piece));
        continue;
      }
      Poly rest = piece;
      for (std::size_t f = 0; f < nf && rest.size() >= 3; ++f) {
        const auto& nrm = slabs_[f].normal;
        double l = slabs_[f].lo - hx[f], h = slabs_[f].hi - hx[f];
        Poly below = clip(rest, nrm, l);
        if (below.size() >= 3 && area(below) > 0) next.push_back(std::move(below));
        rest = clip_ge(rest, nrm, l);
        Poly above = clip_ge(rest, nrm, h);
        if (above.size() >= 3 && area(above) > 0) next.push_back(std::move(above));
        rest = clip(rest, nrm, h);
      }
    }
    pieces = std::move(next);
  }
  double total = 0;
  for (const auto& q : pieces) total += area(q);
  return total / window_area_;
}

std::vector<std::vector<double>> centre_internal_points(const Scheme& s, long radius) {
  std::vector<std::vector<double>> out;
  for (const auto& p : generate(s, radius)) {
    std::vector<double> w;
    for (const auto& x : internal_point(s, p.n, p.offset)) w.push_back(x.to_double());
    out.push_back(std::move(w));
  }
  return out;
}

}  // namespace lrcut
