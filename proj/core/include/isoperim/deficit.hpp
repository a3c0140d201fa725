#pragma once

#include "isoperim/measure.hpp"
#include "isoperim/quantile_set.hpp"

namespace isoperim {

// Quantitative bounds on the isoperimetric deficit
//   delta(E) = P(E) - I(mu(E)),   I(p) = 2 J(min(p,1-p)/2).
// For measure p in (0,1/2] and asymmetry lambda the general bound is
//   delta(E) >= c(p) [(1-lambda)^2 + (1-2p)] lambda^2,
// and sets whose closure avoids the origin admit the stronger
//   delta(E) >= c' lambda^2.

// Largest eps >= 0 with J(x) >= (2+eps) J(x/2) on a grid of (0,1/2]:
// the grid infimum of J(x)/J(x/2) - 2, floored at 0.
double nabla2_epsilon(const Measure& m);

// inf of J'' over [p/2, 1/2]: grid scan at step 1e-4, then a local
// refinement pass around the coarse argmin.
double second_derivative_inf(const Measure& m, double p);

// c(p) = (1/32) min( 8 J'(p/2), M(p), 16 J'(1/6), 8 [J(1/2) - 2 J(1/4)],
//                    4 M((J(1/2) - 2 J(1/4)) / J'(1/2-)) )
// with M(q) = inf_{[q/2,1/2]} J''.  Throws std::runtime_error when M(p)
// or the gap J(1/2) - 2 J(1/4) is nonpositive (c would be useless).
double constant_c(const Measure& m, double p);

// Hypotheses gating the origin-free constant.
bool j_prime_concave(const Measure& m);
bool j_prime_vanishes_at_zero(const Measure& m);

struct DeficitConstants {
  double c;        // general constant at the given p
  double c_prime;  // origin-free constant; NaN when the hypotheses fail
  double m_inf;    // inf J'' on [p/2, 1/2]
  double epsilon;  // raw grid estimate from nabla2_epsilon
};

// c_prime = eps_used * J''(1/2-) / 32 where eps_used = min(0.99 eps, 0.99):
// the cap keeps eps in (0,1) and leaves slack for the grid estimate, which
// only weakens the bound.
DeficitConstants deficit_constants(const Measure& m, double p);

// Lower bound for the deficit of sets with measure p and asymmetry lambda.
// origin_free selects the c' lambda^2 form and throws std::runtime_error
// when its hypotheses fail for m (eps = 0, J' not concave, J'(0+) != 0).
double deficit_lower_bound(const Measure& m, double p, double lambda,
                           bool origin_free);

struct AnomalousExample {
  QuantileSet set;
  double deficit;
  double asymmetry;
};

// Interval of measure p = 1/2 - eta placed so that the construction's
// asymmetry parameter equals 1 - eps: quantile endpoints
// (1/4 + (eta-eps)/2, 3/4 - (eta+eps)/2).  The deficit tends to 0 while
// the parameter tends to 1 as eta, eps -> 0, so no bound of the form
// delta >= c lambda^2 can hold uniformly near p = 1/2.  The reported
// asymmetry is the parameter 1 - eps; it exceeds the attainable asymmetry
// 2p of the set when eps < 2 eta.
AnomalousExample anomalous_example(const Measure& m, double eta, double eps);

}  // namespace isoperim
