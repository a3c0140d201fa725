#ifndef ISOPERIM_QUANTILE_SET_HPP
#define ISOPERIM_QUANTILE_SET_HPP

#include <vector>

#include "isoperim/measure.hpp"

namespace isoperim {

/* Finite unions of open intervals, stored by their endpoint quantiles
 * 0 <= t_1 < t_2 < ... < t_2k <= 1.  Mapping a set through F makes its
 * measure the total length of [t_1,t_2] u ... and its perimeter the sum
 * of J over the endpoints (J(0) = J(1) = 0, so half lines come for free).
 */
class QuantileSet {
public:
  QuantileSet() = default;
  // Endpoints must be nondecreasing and inside [0,1]; pairs closer than
  // 1e-12 are merged (degenerate intervals and gaps collapse).
  explicit QuantileSet(std::vector<double> endpoints);

  const std::vector<double>& endpoints() const { return ends_; }
  std::size_t component_count() const { return ends_.size() / 2; }
  bool empty() const { return ends_.empty(); }

  double measure() const;
  // True iff the quantile 1/2 lies in the interior of some interval;
  // an endpoint exactly at 1/2 does not count.
  bool contains_origin() const;

  QuantileSet complement() const;
  QuantileSet mirrored() const;  // image under t -> 1-t

private:
  std::vector<double> ends_;
};

double symmetric_difference_measure(const QuantileSet& a, const QuantileSet& b);

double perimeter(const QuantileSet& s, const Measure& m);

enum class ReferenceShape {
  ComplementOfInterval,  // (-inf,-beta_p) u (beta_p,+inf):  [0,p/2] u [1-p/2,1]
  Interval,              // (-alpha_p, alpha_p):  [(1-p)/2, (1+p)/2]
};

QuantileSet reference_set(double p, ReferenceShape shape);

// Distance to the measure-matched reference: complement-of-interval for
// measure < 1/2, interval for measure > 1/2, min of the two at exactly 1/2.
double asymmetry(const QuantileSet& s);

// perimeter(s) minus the optimal perimeter at the same measure, 2 J(min(p,1-p)/2).
double deficit(const QuantileSet& s, const Measure& m);

// Half-width markers of the reference sets in real coordinates:
//   alpha_p = -F^{-1}((1-p)/2),  sigma_p = -F^{-1}(p),  beta_p = -F^{-1}(p/2).
struct ReferencePoints {
  double p;
  double alpha_p, sigma_p, beta_p;
  double alpha_quantile, sigma_quantile, beta_quantile;  // (1-p)/2, p, p/2
};

ReferencePoints reference_points(const Measure& m, double p);

// Closed-form perimeter of an interval (a, b) of measure p for the two-sided
// exponential law, parametrized by the left endpoint a (may be -inf).
double exp_interval_perimeter(double p, double a);

}  // namespace isoperim

#endif
