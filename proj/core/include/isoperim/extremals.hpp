#ifndef ISOPERIM_EXTREMALS_HPP
#define ISOPERIM_EXTREMALS_HPP

#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "isoperim/measure.hpp"
#include "isoperim/quantile_set.hpp"

namespace isoperim {

// Perimeter of the interval of measure p whose left endpoint sits at
// quantile t: psi_p(t) = J(t) + J(p+t), defined for 0 <= t <= 1-p.
double psi(const Measure& m, double p, double t);

// Unique root of J(1-p) = 2 J((1-p)/2) in (0,1/2): below it the half line
// beats the symmetric interval, above it the interval wins.  Throws
// std::runtime_error when there is no sign change (degenerate measures).
double threshold_p0(const Measure& m);

enum class IntervalShape { HalfLine, SymmetricInterval, Tie };

struct IntervalMinimizer {
  IntervalShape shape;
  double perimeter;
};

// Best interval of measure p (half line vs symmetric interval).
IntervalMinimizer interval_minimizer(const Measure& m, double p);

// 2 J(min(p,1-p)/2): perimeter of the optimal set of measure p.
double isoperimetric_profile(const Measure& m, double p);

/* Candidate families at prescribed measure p and asymmetry lambda, written
 * as quantile sets.  E6 and E7 carry a free parameter t; the suffix M marks
 * the mirror image. */
enum class Family { E1, E2, E3, E4, E5, E6, E7, E2M, E3M, E5M, E6M, E7M };

const char* family_name(Family f);
bool family_needs_parameter(Family f);

struct ParamRange {
  double lo, hi;
};

// Admissible t-range for parametric families; nullopt when the family does
// not exist at (p, lambda).  Non-parametric families report {0,0} if valid.
std::optional<ParamRange> family_parameter_range(Family f, double p, double lambda);
bool family_valid(Family f, double p, double lambda);

struct Candidate {
  Family family;
  double p, lambda, t;
  QuantileSet set;
  double closed_form_perimeter;
};

Candidate candidate(const Measure& m, Family f, double p, double lambda,
                    double t = std::numeric_limits<double>::quiet_NaN());

struct MenuEntry {
  Family family;
  double perimeter;
};

struct MinCandidate {
  Family family;
  double perimeter;
  bool tie;  // another menu entry within 1e-12; lowest index reported
  std::vector<MenuEntry> menu;
};

// Menu minimum backing the classification: {E1,E2,E4} for lambda <= p,
// {E1,E3,E4} for p <= lambda <= 2p.  With origin_free the menus shrink to
// {E1,E2}, {E1,E3} (lambda <= 1-p) and {E1} (lambda > 1-p).
MinCandidate min_candidate(const Measure& m, double p, double lambda,
                           bool origin_free);

// --- region map ---------------------------------------------------------

struct RegionCell {
  double p, lambda;
  Family winner;
  bool tie;
  double perimeter[4];  // closed forms for E1..E4; NaN where invalid
};

struct RegionMap {
  int grid_n;
  std::vector<RegionCell> cells;  // row-major: i_p * grid_n + i_lambda
  // E4-pocket corners and the two E3/E4 equality branches. Present when J'
  // is concave with J'(0+) = 0 (e.g. cauchy with alpha >= 1); otherwise p1
  // and p2 are NaN and the curves are empty.
  double p1, p2;
  std::vector<std::pair<double, double>> lambda0_curve;  // (p, lambda0(p))
  std::vector<std::pair<double, double>> p0_curve;       // (lambda, p0(lambda))
};

RegionMap region_map(const Measure& m, int grid_n);

// Boundary curves, all bisections on perimeter differences (1e-10 or better).
double e3_e4_boundary_lambda(const Measure& m, double p);  // lambda0(p)
double e3_e4_boundary_p(const Measure& m, double lambda);  // p0(lambda)
double e1_e2_boundary_lambda(const Measure& m, double p);
double region_corner_p1(const Measure& m);
double region_corner_p2(const Measure& m);

}  // namespace isoperim

#endif
