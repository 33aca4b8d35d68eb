#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lrcut/lattice.hpp"
#include "lrcut/zonotope.hpp"

namespace lrcut {

struct ContinuedFraction {
  std::vector<Integer> quotients;  // a_0 may be any integer, the rest positive
  /// (preperiod length, period length) once a quadratic expansion repeats.
  std::optional<std::pair<std::size_t, std::size_t>> period;
  bool terminated = false;  // rational input fully expanded

  /// Convergents p_n / q_n for the stored quotients.
  std::vector<std::pair<Integer, Integer>> convergents() const;
};

/// Exact expansion. Quadratic elements use the (P + sqrt D) / Q recurrence
/// and stop once the state repeats; other irrationals iterate in the field.
/// With `inexact`, x is a rational stand-in known only to within 1/q^2
/// (q its denominator); asking for more quotients than that interval
/// determines throws PrecisionExhausted.
ContinuedFraction continued_fraction(const FieldElement& x, std::size_t max_terms, bool inexact = false);

/// Distance to the nearest integer, exact.
FieldElement nearest_integer_distance(const FieldElement& x);

struct ScanResult {
  FieldElement infimum;  // min of |t|^m ||sum t_j c_j|| over 0 < |t| <= depth
  IntVec witness;        // Lambda coordinates t of the minimiser
  IntVec witness_point;  // the lattice point itself
  long depth = 0;
  std::size_t rank = 0;
  IntMatrix basis;
  bool precondition_ok = true;  // Lambda meets the kernel only in 0
};

/// Scan of |lambda|^m ||L(lambda)|| over Lambda in the sup norm of the
/// coordinates with respect to Lambda's canonical basis.
ScanResult bad_scan(const FieldVec& form, const Sublattice& lambda, long depth, unsigned threads = 1);

enum class BadStatus { ProvenBad, ProvenNotBad, EmpiricalBad, EmpiricalNotBad, Unknown };
std::string to_string(BadStatus s);

struct BadVerdict {
  BadStatus status = BadStatus::Unknown;
  std::string certificate;  // PeriodicContinuedFraction, PerronBasis, Scan, QuotientGrowth
  std::string evidence;     // human-readable witness
  long depth = 0;
  std::optional<FieldElement> infimum;
  IntVec witness;
};

/// Default scan depth for a complement of rank m: floor(10^(6/m)).
long default_depth(std::size_t m);

/// Decides whether the form restricted to Lambda is badly approximable.
/// Throws ComplementInvalid unless rank Lambda >= 1 and Lambda meets S
/// only in 0. depth 0 selects default_depth.
BadVerdict relatively_bad(const FieldVec& form, const Sublattice& kernel, const Sublattice& lambda, long depth = 0,
                          bool inexact = false, unsigned threads = 1);

struct IndependenceReport {
  ScanResult first;
  ScanResult second;
  double ratio = 0;  // first / second
  bool both_positive = false;
};

IndependenceReport complement_independence_check(const FieldVec& form, const Sublattice& kernel,
                                                 const Sublattice& lambda, const Sublattice& other, long depth,
                                                 unsigned threads = 1);

struct TargetResult {
  Rational gamma;
  IntVec best_n;
  FieldElement best;  // min over 0 < |n| <= N of ||L(n) - gamma||
  double scaled = 0;  // best * N^(m / codim)
};

struct DirichletCheck {
  long n = 0;
  FieldElement best;  // min over 0 < |t| <= n of ||L(t)||
  bool holds = false; // best <= n^(-m)
};

struct TransferenceReport {
  FieldElement c1_estimate;
  std::vector<TargetResult> targets;
  std::vector<DirichletCheck> dirichlet;
  double max_scaled = 0;
  std::uint64_t seed = 0;
};

/// Seeded targets in [0, 1) with denominator 2^32.
std::vector<Rational> random_targets(std::uint64_t seed, std::size_t count);

/// `form` holds the coefficients of L on Z^m.
TransferenceReport transference_probe(const FieldVec& form, long depth, const std::vector<Rational>& targets,
                                      std::size_t codim = 1, unsigned threads = 1);

}  // namespace lrcut
