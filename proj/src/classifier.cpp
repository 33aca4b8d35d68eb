#include "lrcut/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <thread>
#include <tuple>

#include "lrcut/error.hpp"
#include "lrcut/window.hpp"

namespace lrcut {

std::string to_string(Overall o) {
  switch (o) {
    case Overall::LR_Proven: return "LR_Proven";
    case Overall::LR_Empirical: return "LR_Empirical";
    case Overall::NotLR_Proven: return "NotLR_Proven";
    case Overall::NotLR_Empirical: return "NotLR_Empirical";
    case Overall::Inapplicable: break;
  }
  return "Inapplicable";
}

namespace {

Lr1Result lr1_of_forms(const std::vector<FieldVec>& forms, std::size_t d) {
  Lr1Result r;
  for (const auto& row : forms) {
    r.ranks.push_back(kernel_mod_one(row, d).rank());
    r.sum += r.ranks.back();
  }
  r.target = d * (forms.size() - 1);
  r.holds = r.sum == r.target;
  return r;
}

}  // namespace

Sublattice form_relations(const Scheme& s) {
  const std::size_t c = s.codim();
  std::vector<Sublattice> per_column;
  for (std::size_t j = 0; j < s.d; ++j) {
    std::vector<FieldElement> column;
    for (std::size_t i = 0; i < c; ++i) column.push_back(s.forms[i][j]);
    per_column.push_back(kernel_mod_one(column, c));
  }
  return intersect_all(per_column, c);
}

Sublattice period_lattice(const Scheme& s) {
  std::vector<Sublattice> kernels;
  for (const auto& row : s.forms) kernels.push_back(kernel_mod_one(row, s.d));
  return intersect_all(kernels, s.d);
}

Lr1Result check_lr1(const Scheme& s) { return lr1_of_forms(s.forms, s.d); }

LrVerdict classify(const Scheme& s, long depth, unsigned threads) {
  LrVerdict v;
  v.lr1 = check_lr1(s);
  Sublattice rel = form_relations(s);
  v.relations = rel.basis();
  for (const auto& a : v.relations) {
    std::string coeffs;
    for (std::size_t i = 0; i < a.size(); ++i) coeffs += (i ? "," : "") + a[i].get_str();
    v.notes.push_back("sum a_i L_i = 0 mod 1 for a = (" + coeffs +
                      "); regions meeting the corresponding subtorus number about r^2");
  }
  if (s.window != WindowKind::Cubical) {
    v.reason = "the characterization covers cubical windows only";
    return v;
  }
  if (!v.relations.empty() && !s.inexact) {
    v.reason = "not totally irrational";
    return v;
  }
  Sublattice periods = period_lattice(s);
  if (periods.rank() > 0) {
    if (!s.inexact) {
      v.reason = "periodic";
      return v;
    }
    v.notes.push_back("inexact data has period lattice of rank " + std::to_string(periods.rank()) +
                      "; treated as an artefact of truncation");
  }

  auto downgrade = [&](Overall o) {
    if (!s.inexact) return o;
    if (o == Overall::LR_Proven) return Overall::LR_Empirical;
    if (o == Overall::NotLR_Proven) return Overall::NotLR_Empirical;
    return o;
  };
  if (!v.lr1.holds) {
    v.overall = downgrade(Overall::NotLR_Proven);
    return v;
  }

  std::vector<Sublattice> kernels;
  for (const auto& row : s.forms) kernels.push_back(kernel_mod_one(row, s.d));
  auto cg = complement_groups(kernels);
  bool all_proven = true, any_not = false, any_proven_not = false;
  for (std::size_t i = 0; i < s.codim(); ++i) {
    FormVerdict fv{kernels[i], cg.lambda[i], {}};
    if (cg.lambda[i].rank() == 0) {
      fv.verdict.status = BadStatus::ProvenBad;
      fv.verdict.certificate = "Trivial";
      fv.verdict.evidence = "the complement is trivial";
    } else {
      fv.verdict = relatively_bad(s.forms[i], kernels[i], cg.lambda[i], depth, s.inexact, threads);
    }
    auto st = fv.verdict.status;
    all_proven = all_proven && st == BadStatus::ProvenBad;
    any_not = any_not || st == BadStatus::EmpiricalNotBad || st == BadStatus::ProvenNotBad;
    any_proven_not = any_proven_not || st == BadStatus::ProvenNotBad;
    v.lr2.push_back(std::move(fv));
  }
  if (any_proven_not) {
    v.overall = Overall::NotLR_Proven;
  } else if (any_not) {
    v.overall = Overall::NotLR_Empirical;
  } else {
    v.overall = all_proven ? Overall::LR_Proven : Overall::LR_Empirical;
  }
  v.overall = downgrade(v.overall);
  return v;
}

namespace {

// Points of R/Z with their circular gaps.
class CircleSet {
 public:
  explicit CircleSet(const FieldPtr& f) : one_(f, Rational(1)) { insert(FieldElement(f, Rational(0))); }

  void insert(const FieldElement& v) {
    Shadowed x(v);
    if (points_.count(x)) return;
    if (points_.empty()) {
      points_.insert(x);
      gaps_.insert(Shadowed(one_));
      return;
    }
    auto next = points_.lower_bound(x);
    FieldElement hi = next == points_.end() ? points_.begin()->x + one_ : next->x;
    FieldElement lo = next == points_.begin() ? points_.rbegin()->x - one_ : std::prev(next)->x;
    gaps_.erase(gaps_.find(Shadowed(hi - lo)));
    gaps_.insert(Shadowed(x.x - lo));
    gaps_.insert(Shadowed(hi - x.x));
    points_.insert(std::move(x));
  }
  const FieldElement& max_gap() const { return gaps_.rbegin()->x; }
  std::size_t size() const { return points_.size(); }

 private:
  FieldElement one_;
  std::set<Shadowed> points_;
  std::multiset<Shadowed> gaps_;
};

constexpr std::size_t kMaxLatticePoints = 4'000'000;

RepetitivityScan lattice_scan(const Scheme& s, int r_max, const ComplementGroups& cg) {
  RepetitivityScan out;
  out.mode = "lattice";
  const std::size_t c = s.codim();
  std::vector<CutSetTracker> trackers;
  std::vector<CircleSet> circles;
  std::vector<long> rho(c, 0);
  std::vector<std::vector<FieldElement>> coeff(c);
  // integer images of the coefficients, scaled by a common denominator
  const std::size_t deg = static_cast<std::size_t>(s.field->degree());
  std::vector<Integer> den(c);
  std::vector<std::vector<std::vector<Integer>>> scaled(c);
  std::vector<Integer> key(deg);
  std::vector<Rational> coords(deg);
  for (std::size_t i = 0; i < c; ++i) {
    trackers.emplace_back(s, i);
    circles.emplace_back(s.field);
    for (const auto& b : cg.lambda[i].basis()) coeff[i].push_back(s.form_value(i, b));
    Integer q = 1;
    for (const auto& x : coeff[i])
      for (const auto& v : x.coordinates()) mpz_lcm(q.get_mpz_t(), q.get_mpz_t(), v.get_den_mpz_t());
    den[i] = q;
    for (const auto& x : coeff[i]) {
      std::vector<Integer> k(deg, Integer(0));
      for (std::size_t t = 0; t < x.coordinates().size(); ++t) k[t] = Rational(x.coordinates()[t] * q).get_num();
      scaled[i].push_back(std::move(k));
    }
  }
  for (int r = 1; r <= r_max; ++r) {
    RepetitivityRecord rec;
    rec.r = r;
    rec.c_r = 1;
    for (std::size_t i = 0; i < c; ++i) {
      trackers[i].grow_to(r);
      rec.c_r *= static_cast<unsigned long>(trackers[i].size());
      FieldElement g = trackers[i].min_gap();
      rec.min_gaps.push_back(g);
      while (!(circles[i].max_gap() < g)) {
        if (circles[i].size() > kMaxLatticePoints) {
          rec.capped = true;
          break;
        }
        ++rho[i];
        for_each_shell(coeff[i].size(), rho[i], [&](const std::vector<long>& t) {
          for (std::size_t u = 0; u < deg; ++u) {
            key[u] = 0;
            for (std::size_t j = 0; j < t.size(); ++j)
              if (t[j] != 0) key[u] += scaled[i][j][u] * t[j];
          }
          mpz_fdiv_r(key[0].get_mpz_t(), key[0].get_mpz_t(), den[i].get_mpz_t());
          for (std::size_t u = 0; u < deg; ++u) {
            coords[u] = Rational(key[u], den[i]);
            coords[u].canonicalize();
          }
          circles[i].insert(FieldElement(s.field, coords).frac());
        });
      }
      rec.R = std::max(rec.R, rho[i]);
    }
    rec.ratio = static_cast<double>(rec.R) / r;
    out.records.push_back(std::move(rec));
  }
  return out;
}

// For each sampled centre, the smallest R such that the box of radius R
// around it contains every reference patch class; R(r) is the maximum.
RepetitivityScan brute_force_scan(const Scheme& s, int r_max) {
  RepetitivityScan out;
  out.mode = "brute_force";
  const std::size_t d = s.d;
  const long per_dim = d == 1 ? 40 : (d == 2 ? 8 : 3);
  for (int r = 1; r <= r_max; ++r) {
    RepetitivityRecord rec;
    rec.r = r;
    auto summary = region_summary(s, r);
    rec.c_r = summary.count;
    rec.min_gaps = summary.min_gap;
    const long ref = per_dim * (r + 1);
    const long cap = 50 * ref;
    std::set<std::vector<std::int64_t>> classes;
    for (const auto& occ : distinct_patches(s, r, ref)) classes.insert(occ.patch.code);

    std::vector<std::vector<long>> centres;
    std::vector<long> j(d, -1);
    while (true) {
      std::vector<long> c(d);
      for (std::size_t a = 0; a < d; ++a) c[a] = j[a] * 7 * (2 * cap + 1);
      centres.push_back(c);
      std::size_t a = d;
      while (a > 0 && j[a - 1] == 1) j[--a] = -1;
      if (a == 0) break;
      ++j[a - 1];
    }
    for (const auto& c : centres) {
      std::set<std::vector<std::int64_t>> seen;
      long rho = 0;
      for (; rho + r <= cap && seen.size() < classes.size(); ++rho) {
        for_each_shell(d, rho, [&](const std::vector<long>& t) {
          IntVec n(d);
          for (std::size_t a = 0; a < d; ++a) n[a] = c[a] + t[a];
          auto code = patch_at(s, n, r).code;
          if (classes.count(code)) seen.insert(code);
        });
      }
      long need = seen.size() < classes.size() ? cap : rho - 1 + r;
      if (seen.size() < classes.size()) rec.capped = true;
      rec.R = std::max(rec.R, need);
    }
    rec.ratio = static_cast<double>(rec.R) / r;
    out.records.push_back(std::move(rec));
  }
  return out;
}

}  // namespace

bool ratio_trend_up(const std::vector<RepetitivityRecord>& records) {
  std::vector<double> dyadic;
  for (const auto& rec : records)
    if (rec.r > 0 && (rec.r & (rec.r - 1)) == 0) dyadic.push_back(rec.ratio);
  if (dyadic.size() < 3) return false;
  double last = dyadic.back();
  dyadic.pop_back();
  std::sort(dyadic.begin(), dyadic.end());
  std::size_t n = dyadic.size();
  double median = n % 2 ? dyadic[n / 2] : (dyadic[n / 2 - 1] + dyadic[n / 2]) / 2;
  return last > 4 * median;
}

RepetitivityScan repetitivity_scan(const Scheme& s, int r_max, unsigned threads) {
  (void)threads;
  if (s.window != WindowKind::Cubical) fail("BadParams", "repetitivity_scan needs a cubical window");
  if (r_max < 1) fail("BadParams", "rmax must be at least 1");
  std::vector<Sublattice> kernels;
  for (const auto& row : s.forms) kernels.push_back(kernel_mod_one(row, s.d));
  bool lattice_mode = check_lr1(s).holds || s.codim() == 1;
  std::optional<ComplementGroups> cg;
  if (s.codim() == 1) {
    // a single form moves freely along all of Z^d
    cg = ComplementGroups{{Sublattice::full(s.d)}, Sublattice::full(s.d), {s.d}};
  } else if (lattice_mode) {
    try {
      cg = complement_groups(kernels);
    } catch (const Error&) {
      lattice_mode = false;
    }
  }
  if (lattice_mode)
    for (const auto& l : cg->lambda) lattice_mode = lattice_mode && l.rank() > 0;
  RepetitivityScan out = lattice_mode ? lattice_scan(s, r_max, *cg) : brute_force_scan(s, r_max);
  out.trend_up = ratio_trend_up(out.records);
  return out;
}

PqEstimate pq_estimate(const Scheme& s, const std::vector<int>& r_list, long sample_radius, unsigned threads) {
  PqEstimate out;
  if (s.window == WindowKind::Cubical)
    out.mode = "exact";
  else
    out.mode = s.codim() <= 2 ? "region" : "sampled";
  if (out.mode == "region" && sample_radius <= 0) sample_radius = s.d == 1 ? 200 : s.d == 2 ? 10 : 2;
  out.sample_radius = out.mode == "exact" ? 0 : sample_radius;
  std::vector<std::vector<double>> centres;
  if (out.mode == "region") centres = centre_internal_points(s, sample_radius);
  bool first = true;
  for (int r : r_list) {
    if (r < 0) fail("BadParams", "radii must be nonnegative");
    PqRecord rec;
    rec.r = r;
    Rational scale = 1;
    for (std::size_t j = 0; j < s.d; ++j) scale *= r;
    if (r == 0) {
      rec.value = 1;
      if (out.mode == "exact") rec.exact = FieldElement(s.field, Rational(1));
    } else if (out.mode == "exact") {
      rec.exact = region_summary(s, r).min_volume * scale;
      rec.value = rec.exact->to_double();
    } else if (out.mode == "region") {
      RegionFrequency rf(s, r);
      unsigned nt = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(centres.size())));
      std::vector<double> mins(nt, 1.0);
      std::vector<std::thread> pool;
      for (unsigned t = 0; t < nt; ++t)
        pool.emplace_back([&, t] {
          for (std::size_t i = t; i < centres.size(); i += nt) mins[t] = std::min(mins[t], rf(centres[i]));
        });
      for (auto& th : pool) th.join();
      rec.value = *std::min_element(mins.begin(), mins.end()) * scale.get_d();
    } else {
      rec.value = sampled_frequencies(s, r, sample_radius, threads).min_frequency() * scale.get_d();
    }
    out.minimum = first ? rec.value : std::min(out.minimum, rec.value);
    first = false;
    out.records.push_back(std::move(rec));
  }
  return out;
}

namespace {

// Inverse of a square matrix over the field, or nullopt if singular.
std::optional<std::vector<FieldVec>> field_inverse(std::vector<FieldVec> a, const FieldPtr& f) {
  const std::size_t n = a.size();
  std::vector<FieldVec> inv(n, FieldVec(n, FieldElement(f, Rational(0))));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = FieldElement(f, Rational(1));
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col].is_zero()) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(a[piv], a[col]);
    std::swap(inv[piv], inv[col]);
    FieldElement p = a[col][col].inverse();
    for (std::size_t j = 0; j < n; ++j) {
      a[col][j] = a[col][j] * p;
      inv[col][j] = inv[col][j] * p;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || a[i][col].is_zero()) continue;
      FieldElement m = a[i][col];
      for (std::size_t j = 0; j < n; ++j) {
        a[i][j] -= m * a[col][j];
        inv[i][j] -= m * inv[col][j];
      }
    }
  }
  return inv;
}

}  // namespace

std::vector<PermutationResult> permutation_scan(const Scheme& s) {
  const std::size_t k = s.k, d = s.d;
  FieldPtr f = s.field;
  // rows of the k x d matrix whose column span is E
  std::vector<FieldVec> rows;
  for (std::size_t i = 0; i < d; ++i) {
    FieldVec e(d, FieldElement(f, Rational(0)));
    e[i] = FieldElement(f, Rational(1));
    rows.push_back(e);
  }
  for (const auto& form : s.forms) rows.push_back(form);

  std::vector<PermutationResult> out;
  std::vector<bool> pick(k, false);
  std::fill(pick.begin(), pick.begin() + static_cast<long>(d), true);
  do {
    PermutationResult res;
    std::vector<FieldVec> block;
    std::vector<std::size_t> rest;
    for (std::size_t i = 0; i < k; ++i) {
      if (pick[i]) {
        res.reference.push_back(i + 1);
        block.push_back(rows[i]);
      } else {
        rest.push_back(i);
      }
    }
    auto inv = field_inverse(block, f);
    if (!inv) {
      res.note = "SingularParametrization: E is not a graph over these coordinates";
    } else {
      res.valid = true;
      for (std::size_t c : rest) {
        FieldVec row(d, FieldElement(f, Rational(0)));
        for (std::size_t j = 0; j < d; ++j)
          for (std::size_t l = 0; l < d; ++l) row[j] += rows[c][l] * (*inv)[l][j];
        res.forms.push_back(row);
      }
      res.lr1 = lr1_of_forms(res.forms, d);
    }
    out.push_back(std::move(res));
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return out;
}

}  // namespace lrcut
