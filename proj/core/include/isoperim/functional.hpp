#pragma once

#include <vector>

#include "isoperim/measure.hpp"
#include "isoperim/quantile_set.hpp"

namespace isoperim {

// Continuous piecewise-linear function on the real line, constant beyond the
// extreme breakpoints.  The class every rearrangement / embedding / Cheeger
// computation runs on: level sets are finite unions of intervals, so all the
// L1 quantities reduce to exact level-set geometry via the layer-cake formula.
class PiecewiseFunction {
 public:
  PiecewiseFunction(std::vector<double> breakpoints, std::vector<double> values);

  const std::vector<double>& breakpoints() const { return x_; }
  const std::vector<double>& values() const { return v_; }

  double operator()(double x) const;
  double max_value() const;
  double min_value() const;
  double oscillation() const;  // sup - inf, attained at breakpoints

 private:
  std::vector<double> x_;
  std::vector<double> v_;
};

PiecewiseFunction absolute(const PiecewiseFunction& u);
PiecewiseFunction positive_part(const PiecewiseFunction& u);
PiecewiseFunction negative_part(const PiecewiseFunction& u);
PiecewiseFunction scaled(const PiecewiseFunction& u, double factor);
PiecewiseFunction offset(const PiecewiseFunction& u, double delta);

// {u > h} as a quantile set (level endpoints mapped through F).
QuantileSet level_set(const PiecewiseFunction& u, const Measure& m, double h);

// mu({u > h}), exact from the linear crossings.
double distribution_function(const PiecewiseFunction& u, const Measure& m,
                             double h);

// mu({u != 0}); the closure adds only null sets.
double support_measure(const PiecewiseFunction& u, const Measure& m);

// A mu-median of u, by bisection on h -> mu({u > h}).
double mu_median(const PiecewiseFunction& u, const Measure& m);

// int |u| dmu via the layer-cake formula (piecewise-smooth in h between
// breakpoint values, integrated piece by piece).
double integral_abs(const PiecewiseFunction& u, const Measure& m);

// int |u'| dmu, exact: sum over segments of |slope| (F(right) - F(left)).
double integral_abs_gradient(const PiecewiseFunction& u, const Measure& m);

// u*(s) = sup{h >= 0 : mu(|u| > h) > s} for u >= 0.
// Rejects s outside (0, mu(supp u)).
double decreasing_rearrangement(const PiecewiseFunction& u, const Measure& m,
                                double s);

// u#(x) = u*(2 F(-|x|)): the symmetric rearrangement whose level sets are
// complements of symmetric intervals.  Requires u >= 0 with
// mu(supp u) <= 1/2.
double sharp_rearrangement(const PiecewiseFunction& u, const Measure& m,
                           double x);

// int ||u| - u#| dmu via the layer-cake formula: at each level h the
// integrand is the symmetric difference between {|u| > h} and the
// complement-of-interval of the same measure.
double sharp_distance(const PiecewiseFunction& u, const Measure& m);

// sup_{t>0} t mu(|u| > t)^{1/p}: level grid plus local refinement.
double weak_lorentz_norm(const PiecewiseFunction& u, const Measure& m,
                         double p);

// beta(s) = sup_{s<=t<=1/2} (t - s) / I(t) with I the isoperimetric profile;
// 0 for s >= 1/2.
double cheeger_beta(const Measure& m, double s);

// sup_{0<s<=t} (t - s) / beta(s): recovers the profile for t in (0,1/2].
double profile_from_beta(const Measure& m, double t);

struct CheegerRow {
  double s = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;  // rhs - lhs
};

struct CheegerReport {
  std::vector<CheegerRow> rows;
  int violations = 0;       // margin < -1e-10
  double min_margin = 0.0;
};

// int |u| dmu <= beta(s) int |u'| dmu + s Osc(u) for each s in s_grid.
// Requires mu-median 0.
CheegerReport check_weak_cheeger(const PiecewiseFunction& u, const Measure& m,
                                 const std::vector<double>& s_grid);

// beta(s) Psi(int ||u|-u#| dmu) + int |u| dmu
//   <= beta(s) int |u'| dmu + 2 s Osc(u),  Psi(x) = c' x^2 / 2.
// Requires mu-median 0 and 0 outside supp u.
CheegerReport check_quantitative_cheeger(const PiecewiseFunction& u,
                                         const Measure& m,
                                         const std::vector<double>& s_grid,
                                         double c_prime);

}  // namespace isoperim
