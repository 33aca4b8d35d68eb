#pragma once

#include <atomic>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "lrcut/lattice.hpp"
#include "lrcut/zonotope.hpp"

namespace lrcut {

enum class WindowKind { Cubical, Canonical };
const char* to_string(WindowKind w);

/// Cut-and-project datum: E = {(x, L(x))} in R^k = R^d x R^(k-d), window in
/// the last k-d coordinates, shift s = (s1, s2).
struct Scheme {
  std::size_t k = 0;
  std::size_t d = 0;
  FieldPtr field;
  std::vector<FieldVec> forms;  // (k-d) rows of d coefficients
  WindowKind window = WindowKind::Cubical;
  FieldVec s1;  // length d
  FieldVec s2;  // length k-d
  bool inexact = false;

  std::size_t codim() const { return k - d; }
  /// L_i(n) for an integer vector n.
  FieldElement form_value(std::size_t i, const IntVec& n) const;
  /// L_i(v) for a field vector v.
  FieldElement form_value(std::size_t i, const FieldVec& v) const;
  /// Throws InvalidDimensions / BadParams on malformed data.
  void validate_shape() const;
  /// The canonical window: generators -L(e_j) and the unit vectors.
  Zonotope canonical_window() const;
};

/// Builds a scheme with the default shift and validates its shape.
Scheme make_scheme(FieldPtr field, std::size_t k, std::size_t d, std::vector<FieldVec> forms, WindowKind window);

struct Regularity {
  bool regular = true;
  std::optional<std::size_t> coordinate;  // failing internal coordinate / facet
  IntVec witness_n;                       // lattice coordinate of a boundary hit
  IntVec witness_offset;
};
Regularity check_regular(const Scheme& s);

/// s1 = 0, s2_i = q/(2 p_i) for odd primes p_i, q = 1, 3, 5, ... until regular.
void assign_default_shift(Scheme& s);

struct AcceptedPoint {
  IntVec n;
  IntVec offset;
  FieldVec internal;
  std::vector<double> embedded;  // only in embedded mode
};

/// Fast acceptance with double filters and exact fallback. Offsets are
/// exact; internal coordinates are not materialised.
class AcceptanceOracle {
 public:
  explicit AcceptanceOracle(const Scheme& s);
  /// All accepted lifts (offset vectors) of the lattice coordinate n,
  /// sorted lexicographically. Cubical windows always give exactly one.
  void lifts(const std::vector<long>& n, std::vector<std::vector<long>>& out) const;
  /// Appends the accepted lifts of n (codim values each) to out; returns
  /// how many were appended.
  std::size_t lifts_flat(const long* n, std::vector<long>& out) const;
  std::size_t boundary_hits() const { return boundary_hits_; }
  const Scheme& scheme() const { return s_; }

 private:
  bool exact_inside(const long* n, const long* m) const;
  const Scheme& s_;
  std::size_t dd_;
  std::vector<std::vector<double>> alpha_;  // (k-d) x d
  std::vector<double> base_;                // s2_i - L_i(s1)
  std::vector<double> scale_;
  std::unique_ptr<Zonotope> zono_;
  std::vector<double> box_lo_, box_hi_;
  // per facet: normal . m coefficients, normal . L(e_j), constant
  std::vector<std::vector<double>> nu_;
  std::vector<std::vector<double>> nu_l_;
  std::vector<double> nu_base_, nu_scale_;
  mutable std::atomic<std::size_t> boundary_hits_{0};
};

std::vector<AcceptedPoint> generate(const Scheme& s, long radius, bool embedded = false);

/// Internal coordinate offset - L(n + s1) + s2 of the lift (n, offset).
FieldVec internal_point(const Scheme& s, const IntVec& n, const IntVec& offset);

/// Patch class: for each displacement in the cube [-r, r]^d (lex order) the
/// number of accepted lifts followed by their offsets relative to the center.
struct PatchClass {
  int radius = 0;
  std::vector<std::int64_t> code;
  bool operator<(const PatchClass& o) const { return std::tie(radius, code) < std::tie(o.radius, o.code); }
  bool operator==(const PatchClass& o) const { return radius == o.radius && code == o.code; }
  /// (displacement, relative offset) pairs.
  std::vector<std::pair<std::vector<long>, std::vector<long>>> entries(std::size_t d, std::size_t codim) const;
};

PatchClass patch_at(const Scheme& s, const IntVec& n0, int r);
PatchClass patch_at(const Scheme& s, const IntVec& n0, const IntVec& offset0, int r);

struct PatchOccurrence {
  PatchClass patch;
  std::vector<long> first_n;
  std::vector<long> first_offset;
  std::size_t count = 0;
};

/// Exact brute-force census of patch classes centred at accepted points
/// with |n| <= search_radius, ordered by first occurrence.
std::vector<PatchOccurrence> distinct_patches(const Scheme& s, int r, long search_radius);

}  // namespace lrcut
