#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "isoperim/measure.hpp"
#include "isoperim/quantile_set.hpp"

namespace isoperim {

// Brute-force minimization of perimeter over unions of grid intervals in
// quantile coordinates.  Deliberately independent of the closed-form
// candidate families so it can cross-check them.

struct OracleConfig {
  int grid_n = 200;
  int max_components = 3;
  double measure_tol = -1.0;    // < 0 selects the default 2/grid_n
  double asymmetry_tol = -1.0;  // < 0 selects the default 2/grid_n
  std::uint64_t seed = 1;       // used by the randomized verifiers only
};

struct OracleResult {
  double min_perimeter = 0.0;
  QuantileSet witness;
  double measure_residual = 0.0;
  double asymmetry_residual = 0.0;
  // Feasible sets with perimeter within the tie tolerance of the minimum,
  // counted in a second pass at a fixed threshold so reruns agree exactly.
  std::int64_t enumerated_count = 0;
  // Some near-optimal set differs structurally from the witness (different
  // component count, or an endpoint further than 24/grid_n away).
  bool tie = false;
};

// Exhaustive search over endpoint tuples e_1 < ... < e_2c, c <= max
// components, on the integer grid t = e/grid_n.  Keeps sets with
// |measure - p| <= measure_tol (and |asymmetry - lambda_target| <=
// asymmetry_tol when a target is given; origin_free additionally discards
// sets with 1/2 strictly inside).  Returns the global discrete minimum with
// a lexicographically minimal witness.  Throws std::runtime_error when no
// grid set satisfies the constraints.
OracleResult brute_min_perimeter(const Measure& m, double p,
                                 std::optional<double> lambda_target,
                                 const OracleConfig& cfg,
                                 bool origin_free = false);

struct ShiftReport {
  int trials = 0;
  int violations = 0;   // shifted perimeter exceeds the original beyond 1e-12
  int equalities = 0;   // |difference| <= 1e-12 (log-linear flats)
  double max_excess = 0.0;  // largest P(shifted) - P(original) seen
};

// Samples random intervals and admissible shifts in each of the three cases
// (off-origin with measure < 1/2, origin-straddling with measure < 1/2,
// measure >= 1/2) and checks the perimeter never increases.
ShiftReport verify_shifting(const Measure& m, int trials, std::uint64_t seed);

struct ClassificationCell {
  double p = 0.0;
  double lambda = 0.0;
  double oracle_min = 0.0;
  double closed_form_min = 0.0;
  double gap = 0.0;    // |oracle_min - closed_form_min|
  double bound = 0.0;  // Lip(J) * 2 * max_components / grid_n
  bool ok = false;
};

struct ClassificationReport {
  std::vector<ClassificationCell> cells;
  int failures = 0;
  double max_gap = 0.0;
};

// Compares the oracle minimum against the closed-form candidate menu on a
// cells x cells sample of the (p, lambda) triangle.
ClassificationReport verify_classification(const Measure& m,
                                           const OracleConfig& cfg,
                                           int cells_per_axis = 16,
                                           bool origin_free = false);

}  // namespace isoperim
