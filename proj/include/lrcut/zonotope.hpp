#pragma once

#include <vector>

#include "lrcut/exact_reals.hpp"

namespace lrcut {

using FieldVec = std::vector<FieldElement>;

enum class Membership { Inside, Boundary, Outside };
const char* to_string(Membership m);

FieldElement dot(const FieldVec& a, const FieldVec& b);
FieldElement determinant(std::vector<FieldVec> m);
/// Vector orthogonal to the given dim-1 vectors in dimension dim (cofactors).
FieldVec normal_vector(const std::vector<FieldVec>& vectors, std::size_t dim);

/// {sum c_j g_j : 0 <= c_j <= 1} in R^dim, assumed full dimensional.
class Zonotope {
 public:
  struct Facet {
    FieldVec normal;
    FieldElement lo, hi;  // lo <= normal . w <= hi on the zonotope
    std::vector<double> normal_d;
    double lo_d = 0, hi_d = 0;
  };

  Zonotope(std::vector<FieldVec> generators, std::size_t dim);

  std::size_t dim() const { return dim_; }
  const std::vector<FieldVec>& generators() const { return gens_; }
  const std::vector<Facet>& facets() const { return facets_; }
  const FieldVec& box_lo() const { return box_lo_; }
  const FieldVec& box_hi() const { return box_hi_; }

  /// Exact decision via the facet description.
  Membership membership(const FieldVec& w) const;
  /// Independent exact decision by Fourier-Motzkin elimination on the
  /// generator coefficients.
  Membership membership_elimination(const FieldVec& w) const;
  /// Sum of a subset of generators (vertex candidates).
  FieldVec subset_sum(const std::vector<bool>& chosen) const;

 private:
  std::size_t dim_;
  std::vector<FieldVec> gens_;
  std::vector<Facet> facets_;
  FieldVec box_lo_, box_hi_;
};

}  // namespace lrcut
