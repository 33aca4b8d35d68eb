#pragma once

#include <optional>
#include <vector>

#include "lrcut/exact_reals.hpp"

namespace lrcut {

using IntVec = std::vector<Integer>;
using IntMatrix = std::vector<IntVec>;

namespace imat {

/// Row Hermite normal form H = U * M with U unimodular. Nonzero rows of H
/// come first, pivots are positive and entries above a pivot lie in [0, pivot).
struct HermiteResult {
  IntMatrix h;
  IntMatrix u;
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;
};
HermiteResult hermite(const IntMatrix& m, std::size_t cols);

/// Basis (rows) of {x in Z^rows : x * M = 0}.
IntMatrix left_kernel(const IntMatrix& m, std::size_t cols);

/// Integer x with sum_j x_j * gens[j] = target, if one exists.
std::optional<IntVec> solve_integer(const IntMatrix& gens, const IntVec& target);

}  // namespace imat

/// Subgroup of Z^d with a canonical lower-echelon basis: row i has its last
/// nonzero entry (positive) in a column strictly increasing with i, and the
/// entries of other rows in that column are reduced into [0, pivot).
class Sublattice {
 public:
  Sublattice() = default;
  static Sublattice from_generators(std::size_t dim, const IntMatrix& generators);
  static Sublattice full(std::size_t dim);
  static Sublattice zero(std::size_t dim) { return from_generators(dim, {}); }

  std::size_t ambient_dim() const { return dim_; }
  std::size_t rank() const { return basis_.size(); }
  const IntMatrix& basis() const { return basis_; }
  bool contains(const IntVec& v) const;
  /// |det| for full rank lattices, 0 otherwise.
  Integer index() const;

  bool operator==(const Sublattice& o) const { return dim_ == o.dim_ && basis_ == o.basis_; }
  bool operator!=(const Sublattice& o) const { return !(*this == o); }

 private:
  std::size_t dim_ = 0;
  IntMatrix basis_;
};

Sublattice intersect(const Sublattice& a, const Sublattice& b);
Sublattice sum(const Sublattice& a, const Sublattice& b);

struct CosetSystem {
  Sublattice lattice;
  IntMatrix representatives;
  Integer index;
};
CosetSystem coset_representatives(const Sublattice& a);
/// Reduces v to its coset representative for a full rank lattice.
IntVec reduce_to_representative(const Sublattice& a, IntVec v);

/// S = {n in Z^d : sum_j row[j] n_j in Z}.
Sublattice kernel_mod_one(const std::vector<FieldElement>& row, std::size_t d);

struct ComplementGroups {
  std::vector<Sublattice> lambda;  // Lambda_i = intersection of S_j, j != i
  Sublattice total;                // Lambda_1 + ... + Lambda_{k-d}
  std::vector<std::size_t> ranks;  // m_i
};
ComplementGroups complement_groups(const std::vector<Sublattice>& kernels);

/// Intersection over the listed kernels; the empty intersection is Z^d.
Sublattice intersect_all(const std::vector<Sublattice>& lattices, std::size_t dim);

}  // namespace lrcut

namespace lrcut {

/// Integer x with sum_j x_j * gens[j] = target, comparing power-basis
/// coordinates exactly; nullopt if target is not in the Z-span.
std::optional<IntVec> integer_combination(const std::vector<FieldElement>& gens, const FieldElement& target);

}  // namespace lrcut
