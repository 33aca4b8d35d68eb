#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lrcut/diophantine.hpp"
#include "lrcut/scheme.hpp"

namespace lrcut {

enum class Overall { LR_Proven, LR_Empirical, NotLR_Proven, NotLR_Empirical, Inapplicable };
std::string to_string(Overall o);

struct Lr1Result {
  bool holds = false;
  std::vector<std::size_t> ranks;  // r_i = rank of the kernel of L_i mod 1
  std::size_t sum = 0;
  std::size_t target = 0;  // d (k - d - 1)
};

struct FormVerdict {
  Sublattice kernel;
  Sublattice complement;
  BadVerdict verdict;
};

struct LrVerdict {
  Lr1Result lr1;
  std::vector<FormVerdict> lr2;  // empty unless lr1 holds and the window is cubical
  Overall overall = Overall::Inapplicable;
  std::string reason;               // for Inapplicable
  std::vector<IntVec> relations;    // integer relations among the forms mod 1
  std::vector<std::string> notes;
};

/// Integer vectors a with sum_i a_i L_i = 0 mod 1 as forms on Z^d.
Sublattice form_relations(const Scheme& s);
/// n in Z^d with every L_i(n) an integer.
Sublattice period_lattice(const Scheme& s);
Lr1Result check_lr1(const Scheme& s);

LrVerdict classify(const Scheme& s, long depth = 0, unsigned threads = 1);

struct RepetitivityRecord {
  int r = 0;
  Integer c_r;
  std::vector<FieldElement> min_gaps;
  long R = 0;
  bool capped = false;  // brute force hit its search limit; R is a lower bound
  double ratio = 0;     // R / r
};

struct RepetitivityScan {
  std::vector<RepetitivityRecord> records;
  std::string mode;  // "lattice" or "brute_force"
  bool trend_up = false;
};

/// For r = 1..r_max. Cubical windows only.
RepetitivityScan repetitivity_scan(const Scheme& s, int r_max, unsigned threads = 1);
/// Dyadic trend test: the ratio at the last dyadic r exceeds four times the
/// median ratio at the earlier dyadic r.
bool ratio_trend_up(const std::vector<RepetitivityRecord>& records);

struct PqRecord {
  int r = 0;
  double value = 0;                    // min class frequency times r^d
  std::optional<FieldElement> exact;   // cubical windows
};

struct PqEstimate {
  std::vector<PqRecord> records;
  double minimum = 0;
  std::string mode;  // "exact", "region" or "sampled"
  long sample_radius = 0;
};

/// Cubical windows: exact minimal component volume. Canonical windows with
/// k - d <= 2: minimum of RegionFrequency over the accepted centres with
/// |n| <= sample_radius (0 picks a default); otherwise sampled_frequencies.
PqEstimate pq_estimate(const Scheme& s, const std::vector<int>& r_list, long sample_radius, unsigned threads = 1);

struct PermutationResult {
  std::vector<std::size_t> reference;  // 1-based coordinates used as parameters
  bool valid = false;                  // E is a graph over them
  std::vector<FieldVec> forms;
  Lr1Result lr1;
  std::string note;
};

/// Reparametrizes E over every d-subset of the k coordinates, in lex order.
std::vector<PermutationResult> permutation_scan(const Scheme& s);

}  // namespace lrcut
