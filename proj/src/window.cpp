#include "lrcut/window.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

#include "lrcut/error.hpp"

namespace lrcut {

namespace {

void require_cubical(const Scheme& s) {
  if (s.window != WindowKind::Cubical) fail("BadParams", "region analysis needs a cubical window");
}

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

FieldElement gap(const FieldElement& a, const FieldElement& b) {
  int c = b.compare(a);
  return c > 0 ? b - a : b - a + Rational(1);
}

}  // namespace

void for_each_shell(std::size_t m, long rho, const std::function<void(const std::vector<long>&)>& fn) {
  if (rho == 0) {
    fn(std::vector<long>(m, 0));
    return;
  }
  std::vector<long> t(m);
  for (std::size_t p = 0; p < m; ++p) {
    // coordinates before p are interior, t_p = +-rho, the rest free
    for (long sp : {-rho, rho}) {
      std::vector<long> lo(m), hi(m);
      for (std::size_t j = 0; j < m; ++j) {
        if (j < p) {
          lo[j] = -rho + 1;
          hi[j] = rho - 1;
        } else if (j == p) {
          lo[j] = hi[j] = sp;
        } else {
          lo[j] = -rho;
          hi[j] = rho;
        }
      }
      bool empty = false;
      for (std::size_t j = 0; j < m; ++j) empty = empty || lo[j] > hi[j];
      if (empty) continue;
      t = lo;
      while (true) {
        fn(t);
        std::size_t j = m;
        while (j > 0 && t[j - 1] == hi[j - 1]) {
          t[j - 1] = lo[j - 1];
          --j;
        }
        if (j == 0) break;
        ++t[j - 1];
      }
    }
  }
}

std::vector<std::vector<FieldElement>> cut_sets(const Scheme& s, int r) {
  require_cubical(s);
  const std::size_t d = s.d;
  const std::size_t deg = static_cast<std::size_t>(s.field->degree());
  std::vector<std::vector<FieldElement>> out;
  for (std::size_t i = 0; i < s.codim(); ++i) {
    Integer q = 1;
    for (const auto& a : s.forms[i])
      for (const auto& c : a.coordinates()) mpz_lcm(q.get_mpz_t(), q.get_mpz_t(), c.get_den_mpz_t());
    std::vector<std::vector<Integer>> a(d, std::vector<Integer>(deg, Integer(0)));
    for (std::size_t j = 0; j < d; ++j) {
      const auto& c = s.forms[i][j].coordinates();
      for (std::size_t t = 0; t < c.size(); ++t) a[j][t] = Rational(c[t] * q).get_num();
    }
    // Key: coordinates of -L_i(n) scaled by q, rational part reduced mod q.
    std::set<std::vector<Integer>> keys;
    std::vector<long> n(d, -r);
    std::vector<Integer> key(deg);
    do {
      for (std::size_t t = 0; t < deg; ++t) {
        key[t] = 0;
        for (std::size_t j = 0; j < d; ++j)
          if (n[j] != 0) key[t] -= a[j][t] * n[j];
      }
      key[0] %= q;
      if (key[0] < 0) key[0] += q;
      keys.insert(key);
    } while (next_point(n, -r, r));
    std::vector<FieldElement> cuts;
    for (const auto& k : keys) {
      std::vector<Rational> c;
      for (const auto& v : k) c.emplace_back(v, q);
      for (auto& v : c) v.canonicalize();
      cuts.push_back(FieldElement(s.field, c).frac());
    }
    std::sort(cuts.begin(), cuts.end(), [](const FieldElement& x, const FieldElement& y) { return x.compare(y) < 0; });
    out.push_back(std::move(cuts));
  }
  return out;
}

std::vector<FieldElement> circular_gaps(const std::vector<FieldElement>& cuts) {
  std::vector<FieldElement> gaps;
  for (std::size_t j = 0; j < cuts.size(); ++j) gaps.push_back(gap(cuts[j], cuts[(j + 1) % cuts.size()]));
  return gaps;
}

RegionSummary region_summary(const Scheme& s, int r) {
  auto cuts = cut_sets(s, r);
  RegionSummary sum;
  sum.r = r;
  sum.count = 1;
  sum.min_volume = FieldElement(s.field, Rational(1));
  sum.max_volume = FieldElement(s.field, Rational(1));
  for (const auto& c : cuts) {
    sum.sizes.push_back(c.size());
    sum.count *= static_cast<unsigned long>(c.size());
    auto gaps = circular_gaps(c);
    auto cmp = [](const FieldElement& x, const FieldElement& y) { return x.compare(y) < 0; };
    sum.min_gap.push_back(*std::min_element(gaps.begin(), gaps.end(), cmp));
    sum.max_gap.push_back(*std::max_element(gaps.begin(), gaps.end(), cmp));
    sum.min_volume = sum.min_volume * sum.min_gap.back();
    sum.max_volume = sum.max_volume * sum.max_gap.back();
  }
  return sum;
}

std::vector<BoxComponent> region_components(const Scheme& s, int r) {
  auto cuts = cut_sets(s, r);
  const std::size_t c = cuts.size();
  FieldElement one(s.field, Rational(1));
  std::vector<BoxComponent> out;
  std::vector<long> idx(c, 0);
  std::vector<long> hi(c);
  for (std::size_t i = 0; i < c; ++i) hi[i] = static_cast<long>(cuts[i].size()) - 1;
  while (true) {
    BoxComponent b;
    b.volume = one;
    for (std::size_t i = 0; i < c; ++i) {
      auto j = static_cast<std::size_t>(idx[i]);
      b.lo.push_back(cuts[i][j]);
      b.hi.push_back(j + 1 < cuts[i].size() ? cuts[i][j + 1] : one);
      b.volume = b.volume * (b.hi.back() - b.lo.back());
    }
    out.push_back(std::move(b));
    std::size_t i = c;
    bool more = false;
    while (i-- > 0) {
      if (idx[i] < hi[i]) {
        ++idx[i];
        for (std::size_t q = i + 1; q < c; ++q) idx[q] = 0;
        more = true;
        break;
      }
    }
    if (!more) break;
  }
  return out;
}

std::optional<std::vector<std::size_t>> locate(const std::vector<std::vector<FieldElement>>& cuts, const FieldVec& w) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    auto it = std::upper_bound(cuts[i].begin(), cuts[i].end(), w[i],
                               [](const FieldElement& x, const FieldElement& y) { return x.compare(y) < 0; });
    if (it == cuts[i].begin()) return std::nullopt;
    --it;
    if (*it == w[i]) return std::nullopt;
    idx.push_back(static_cast<std::size_t>(it - cuts[i].begin()));
  }
  return idx;
}

CutSetTracker::CutSetTracker(const Scheme& s, std::size_t coordinate) : s_(s), i_(coordinate), q_(1) {
  require_cubical(s);
  const std::size_t deg = static_cast<std::size_t>(s.field->degree());
  for (const auto& a : s.forms[coordinate])
    for (const auto& c : a.coordinates()) mpz_lcm(q_.get_mpz_t(), q_.get_mpz_t(), c.get_den_mpz_t());
  a_.assign(s.d, std::vector<Integer>(deg, Integer(0)));
  for (std::size_t j = 0; j < s.d; ++j) {
    const auto& c = s.forms[coordinate][j].coordinates();
    for (std::size_t t = 0; t < c.size(); ++t) a_[j][t] = Rational(c[t] * q_).get_num();
  }
}

Shadowed::Shadowed(FieldElement v) : x(std::move(v)) { std::tie(approx, err) = x.approx_with_error(); }

bool Shadowed::operator<(const Shadowed& o) const {
  if (std::fabs(approx - o.approx) > err + o.err) return approx < o.approx;
  return x.compare(o.x) < 0;
}

void CutSetTracker::add_gap(const FieldElement& g) { gaps_.insert(Shadowed(g)); }

void CutSetTracker::remove_gap(const FieldElement& g) {
  auto it = gaps_.find(Shadowed(g));
  if (it != gaps_.end()) gaps_.erase(it);
}

void CutSetTracker::add_value(const FieldElement& v) {
  Shadowed x(v);
  if (points_.count(x)) return;
  FieldElement one(s_.field, Rational(1));
  if (points_.empty()) {
    points_.insert(x);
    add_gap(one);
    return;
  }
  auto succ = points_.upper_bound(x);
  const FieldElement& s = succ == points_.end() ? points_.begin()->x : succ->x;
  auto pred_it = succ == points_.begin() ? std::prev(points_.end()) : std::prev(succ);
  const FieldElement& p = pred_it->x;
  if (points_.size() == 1) {
    remove_gap(one);
  } else {
    remove_gap(gap(p, s));
  }
  add_gap(gap(p, v));
  add_gap(gap(v, s));
  points_.insert(std::move(x));
}

void CutSetTracker::grow_to(int r) {
  const std::size_t deg = a_.empty() ? 0 : a_[0].size();
  std::vector<Integer> key(deg);
  while (r_ < r) {
    ++r_;
    // Same key as cut_sets: coordinates of -L_i(n) scaled by q, the
    // rational part reduced mod q.
    for_each_shell(s_.d, r_, [&](const std::vector<long>& n) {
      for (std::size_t t = 0; t < deg; ++t) {
        key[t] = 0;
        for (std::size_t j = 0; j < n.size(); ++j)
          if (n[j] != 0) key[t] -= a_[j][t] * n[j];
      }
      key[0] %= q_;
      if (key[0] < 0) key[0] += q_;
      if (!keys_.insert(key).second) return;
      std::vector<Rational> c;
      for (const auto& v : key) c.emplace_back(v, q_);
      for (auto& v : c) v.canonicalize();
      add_value(FieldElement(s_.field, c).frac());
    });
  }
}

FieldElement CutSetTracker::min_gap() const { return gaps_.begin()->x; }

double FrequencyReport::min_frequency() const {
  double m = 1;
  for (const auto& c : classes) m = std::min(m, c.frequency);
  return m;
}

FrequencyReport sampled_frequencies_exact(const Scheme& s, int r, long sample_radius) {
  auto occ = distinct_patches(s, r, sample_radius);
  FrequencyReport rep;
  rep.r = r;
  rep.sample_radius = sample_radius;
  for (const auto& o : occ) rep.total += o.count;
  for (const auto& o : occ)
    rep.classes.push_back({o.first_n, o.count, static_cast<double>(o.count) / static_cast<double>(rep.total)});
  return rep;
}

Derivability local_derivability(const Scheme& s) {
  Derivability res;
  for (std::size_t j = 0; j < s.d; ++j) {
    std::size_t nonzero = 0;
    for (std::size_t i = 0; i < s.codim(); ++i)
      if (!s.forms[i][j].is_zero()) ++nonzero;
    if (nonzero > 1) res.witnesses.push_back(j + 1);
  }
  res.canonical_from_cubical = res.witnesses.empty();
  return res;
}

}  // namespace lrcut
