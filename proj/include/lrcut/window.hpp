#pragma once

#include <cstdint>
#include <functional>
#include <set>
#include <vector>

#include "lrcut/scheme.hpp"

namespace lrcut {

/// Coordinate i's cut set: sorted distinct fractional parts of -L_i(n) for
/// |n| <= r (cubical windows).
std::vector<std::vector<FieldElement>> cut_sets(const Scheme& s, int r);

struct BoxComponent {
  FieldVec lo;  // per coordinate, consecutive cut points (hi may be 1)
  FieldVec hi;
  FieldElement volume;
};

struct RegionSummary {
  int r = 0;
  Integer count;                    // c(r)
  std::vector<std::size_t> sizes;   // per-coordinate cut-set sizes
  std::vector<FieldElement> min_gap;
  std::vector<FieldElement> max_gap;
  FieldElement min_volume;
  FieldElement max_volume;
};

/// Circular gaps of a sorted cut set in [0, 1).
std::vector<FieldElement> circular_gaps(const std::vector<FieldElement>& cuts);

RegionSummary region_summary(const Scheme& s, int r);
/// Explicit product components; only sensible for small c(r).
std::vector<BoxComponent> region_components(const Scheme& s, int r);
/// Index tuple of the component containing w (each w_i in [0,1)), or
/// nullopt if w lies on a cut.
std::optional<std::vector<std::size_t>> locate(const std::vector<std::vector<FieldElement>>& cuts, const FieldVec& w);

/// Field element with a double shadow; the exact comparison only runs when
/// the shadows cannot separate two values.
struct Shadowed {
  double approx = 0;
  double err = 0;
  FieldElement x;
  explicit Shadowed(FieldElement v);
  bool operator<(const Shadowed& o) const;
};

/// Calls fn on every t in Z^m with |t|_inf == rho.
void for_each_shell(std::size_t m, long rho, const std::function<void(const std::vector<long>&)>& fn);

/// Incrementally grown cut set of one coordinate with its smallest gap.
class CutSetTracker {
 public:
  CutSetTracker(const Scheme& s, std::size_t coordinate);
  void grow_to(int r);
  int radius() const { return r_; }
  std::size_t size() const { return points_.size(); }
  FieldElement min_gap() const;

 private:
  void add_value(const FieldElement& x);
  void add_gap(const FieldElement& g);
  void remove_gap(const FieldElement& g);

  const Scheme& s_;
  std::size_t i_;
  int r_ = -1;
  Integer q_;                             // common denominator of the coefficients
  std::vector<std::vector<Integer>> a_;   // q * coordinates of each coefficient
  std::set<std::vector<Integer>> keys_;   // values already inserted
  std::set<Shadowed> points_;
  std::multiset<Shadowed> gaps_;
};

struct ClassFrequency {
  std::vector<long> first_n;
  std::size_t count = 0;
  double frequency = 0;
};

struct FrequencyReport {
  int r = 0;
  long sample_radius = 0;
  std::size_t total = 0;  // accepted centres sampled
  std::vector<ClassFrequency> classes;  // ordered by first occurrence
  double min_frequency() const;
};

/// Empirical class frequencies over accepted centres with |n| <= R, using
/// rolling hashes of the lift pattern (collision probability ~ 2^-61 per pair).
FrequencyReport sampled_frequencies(const Scheme& s, int r, long sample_radius, unsigned threads = 1);
/// Exact version built on distinct_patches (small radii only).
FrequencyReport sampled_frequencies_exact(const Scheme& s, int r, long sample_radius);

/// Frequency of the patch class of an accepted point, read off as the area
/// of the set of internal points carrying the same patch, over the window
/// area. Either window, k - d <= 2, double precision.
class RegionFrequency {
 public:
  RegionFrequency(const Scheme& s, int r);
  /// w: internal coordinates of an accepted point.
  double operator()(const std::vector<double>& w) const;

 private:
  struct Slab {
    std::vector<double> normal;
    double lo, hi;
  };
  std::size_t c_;
  std::vector<Slab> slabs_;           // the window as an intersection of slabs
  std::vector<double> dlo_, dhi_;     // box containing W - W
  std::vector<std::vector<double>> u_;  // -L(m) for |m| <= r
  double window_area_ = 0;
};

/// Internal coordinates of the accepted points with |n| <= radius.
std::vector<std::vector<double>> centre_internal_points(const Scheme& s, long radius);

struct Derivability {
  bool cubical_from_canonical = true;
  bool canonical_from_cubical = true;
  std::vector<std::size_t> witnesses;  // 1-based i with rho*(e_i) off the axes
};
Derivability local_derivability(const Scheme& s);

}  // namespace lrcut
