#include "isoperim/quantile_set.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace isoperim {

namespace {
constexpr double kMergeTol = 1e-12;
}

QuantileSet::QuantileSet(std::vector<double> endpoints) {
  if (endpoints.size() % 2 != 0)
    throw std::invalid_argument("QuantileSet: odd endpoint count");
  for (std::size_t i = 0; i < endpoints.size(); ++i) {
    const double t = endpoints[i];
    if (!std::isfinite(t) || t < 0.0 || t > 1.0)
      throw std::invalid_argument("QuantileSet: endpoint outside [0,1]");
    if (i > 0 && t < endpoints[i - 1])
      throw std::invalid_argument("QuantileSet: endpoints not sorted");
  }
  // Drop degenerate intervals, then fuse intervals across degenerate gaps.
  std::vector<double> kept;
  kept.reserve(endpoints.size());
  for (std::size_t i = 0; i + 1 < endpoints.size(); i += 2) {
    const double a = endpoints[i], b = endpoints[i + 1];
    if (b - a < kMergeTol) continue;
    if (!kept.empty() && a - kept.back() < kMergeTol)
      kept.back() = b;
    else {
      kept.push_back(a);
      kept.push_back(b);
    }
  }
  ends_ = std::move(kept);
}

double QuantileSet::measure() const {
  double m = 0.0;
  for (std::size_t i = 0; i + 1 < ends_.size(); i += 2) m += ends_[i + 1] - ends_[i];
  return m;
}

bool QuantileSet::contains_origin() const {
  for (std::size_t i = 0; i + 1 < ends_.size(); i += 2)
    if (ends_[i] < 0.5 && 0.5 < ends_[i + 1]) return true;
  return false;
}

QuantileSet QuantileSet::complement() const {
  std::vector<double> out;
  out.reserve(ends_.size() + 2);
  double prev = 0.0;
  for (std::size_t i = 0; i + 1 < ends_.size(); i += 2) {
    out.push_back(prev);
    out.push_back(ends_[i]);
    prev = ends_[i + 1];
  }
  out.push_back(prev);
  out.push_back(1.0);
  return QuantileSet(std::move(out));
}

QuantileSet QuantileSet::mirrored() const {
  std::vector<double> out(ends_.rbegin(), ends_.rend());
  for (double& t : out) t = 1.0 - t;
  return QuantileSet(std::move(out));
}

namespace {

double intersection_measure(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  std::size_t i = 0, j = 0;
  while (i + 1 < a.size() && j + 1 < b.size()) {
    const double lo = std::max(a[i], b[j]);
    const double hi = std::min(a[i + 1], b[j + 1]);
    if (hi > lo) m += hi - lo;
    if (a[i + 1] < b[j + 1]) i += 2; else j += 2;
  }
  return m;
}

}  // namespace

double symmetric_difference_measure(const QuantileSet& a, const QuantileSet& b) {
  return a.measure() + b.measure() -
         2.0 * intersection_measure(a.endpoints(), b.endpoints());
}

double perimeter(const QuantileSet& s, const Measure& m) {
  double p = 0.0;
  for (double t : s.endpoints()) p += m.j(t);
  return p;
}

QuantileSet reference_set(double p, ReferenceShape shape) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("reference_set: p outside [0,1]");
  if (shape == ReferenceShape::ComplementOfInterval)
    return QuantileSet({0.0, p / 2.0, 1.0 - p / 2.0, 1.0});
  return QuantileSet({(1.0 - p) / 2.0, (1.0 + p) / 2.0});
}

double asymmetry(const QuantileSet& s) {
  const double p = s.measure();
  const double vs_complement =
      symmetric_difference_measure(s, reference_set(p, ReferenceShape::ComplementOfInterval));
  const double vs_interval =
      symmetric_difference_measure(s, reference_set(p, ReferenceShape::Interval));
  if (p < 0.5) return vs_complement;
  if (p > 0.5) return vs_interval;
  return std::min(vs_complement, vs_interval);
}

double deficit(const QuantileSet& s, const Measure& m) {
  const double p = s.measure();
  return perimeter(s, m) - 2.0 * m.j(std::fmin(p, 1.0 - p) / 2.0);
}

ReferencePoints reference_points(const Measure& m, double p) {
  if (!(p > 0.0 && p < 1.0))
    throw std::invalid_argument("reference_points: p outside (0,1)");
  ReferencePoints r;
  r.p = p;
  r.alpha_quantile = (1.0 - p) / 2.0;
  r.sigma_quantile = p;
  r.beta_quantile = p / 2.0;
  r.alpha_p = -m.quantile(r.alpha_quantile);
  r.sigma_p = -m.quantile(p);
  r.beta_p = -m.quantile(r.beta_quantile);
  return r;
}

double exp_interval_perimeter(double p, double a) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("exp_interval_perimeter: p outside [0,1]");
  const double fa = a == -std::numeric_limits<double>::infinity()
                        ? 0.0
                        : Measure::two_sided_exponential().cdf(a);
  if (fa > 1.0 - p + 1e-15)
    throw std::invalid_argument("exp_interval_perimeter: interval exceeds the line");
  if (p >= 0.5) return 1.0 - p;
  if (fa <= 0.5 - p) return 2.0 * fa + p;
  if (a <= 0.0) return 1.0 - p;
  return 2.0 - 2.0 * fa - p;
}

}  // namespace isoperim
