#include "isoperim/functional.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "isoperim/extremals.hpp"

namespace isoperim {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using Quad = boost::math::quadrature::gauss_kronrod<double, 31>;

double integrate(const std::function<double(double)>& g, double a, double b) {
  if (!(b > a)) return 0.0;
  return Quad::integrate(g, a, b, 12, 1e-12);
}

}  // namespace

PiecewiseFunction::PiecewiseFunction(std::vector<double> breakpoints,
                                     std::vector<double> values)
    : x_(std::move(breakpoints)), v_(std::move(values)) {
  if (x_.empty() || x_.size() != v_.size())
    throw std::invalid_argument("piecewise function needs matching breakpoints and values");
  for (std::size_t i = 0; i + 1 < x_.size(); ++i)
    if (!(x_[i] < x_[i + 1]))
      throw std::invalid_argument("breakpoints must be strictly increasing");
  for (double val : v_)
    if (!std::isfinite(val))
      throw std::invalid_argument("values must be finite");
}

double PiecewiseFunction::operator()(double x) const {
  if (x <= x_.front()) return v_.front();
  if (x >= x_.back()) return v_.back();
  auto it = std::upper_bound(x_.begin(), x_.end(), x);
  std::size_t i = static_cast<std::size_t>(it - x_.begin()) - 1;
  double w = (x - x_[i]) / (x_[i + 1] - x_[i]);
  return v_[i] + w * (v_[i + 1] - v_[i]);
}

double PiecewiseFunction::max_value() const {
  return *std::max_element(v_.begin(), v_.end());
}

double PiecewiseFunction::min_value() const {
  return *std::min_element(v_.begin(), v_.end());
}

double PiecewiseFunction::oscillation() const {
  return max_value() - min_value();
}

namespace {

// Rebuild u with extra breakpoints at the zero crossings, so that
// transforms with a kink at 0 stay piecewise linear.
PiecewiseFunction with_zero_crossings(const PiecewiseFunction& u) {
  const auto& x = u.breakpoints();
  const auto& v = u.values();
  std::vector<double> nx, nv;
  nx.reserve(x.size() + 4);
  nv.reserve(x.size() + 4);
  for (std::size_t i = 0; i < x.size(); ++i) {
    nx.push_back(x[i]);
    nv.push_back(v[i]);
    if (i + 1 == x.size()) break;
    if ((v[i] > 0.0 && v[i + 1] < 0.0) || (v[i] < 0.0 && v[i + 1] > 0.0)) {
      double cross = x[i] - v[i] * (x[i + 1] - x[i]) / (v[i + 1] - v[i]);
      if (cross > x[i] && cross < x[i + 1]) {
        nx.push_back(cross);
        nv.push_back(0.0);
      }
    }
  }
  return PiecewiseFunction(std::move(nx), std::move(nv));
}

}  // namespace

PiecewiseFunction absolute(const PiecewiseFunction& u) {
  PiecewiseFunction w = with_zero_crossings(u);
  std::vector<double> v = w.values();
  for (double& val : v) val = std::fabs(val);
  return PiecewiseFunction(w.breakpoints(), std::move(v));
}

PiecewiseFunction positive_part(const PiecewiseFunction& u) {
  PiecewiseFunction w = with_zero_crossings(u);
  std::vector<double> v = w.values();
  for (double& val : v) val = std::max(val, 0.0);
  return PiecewiseFunction(w.breakpoints(), std::move(v));
}

PiecewiseFunction negative_part(const PiecewiseFunction& u) {
  return positive_part(scaled(u, -1.0));
}

PiecewiseFunction scaled(const PiecewiseFunction& u, double factor) {
  std::vector<double> v = u.values();
  for (double& val : v) val *= factor;
  return PiecewiseFunction(u.breakpoints(), std::move(v));
}

PiecewiseFunction offset(const PiecewiseFunction& u, double delta) {
  std::vector<double> v = u.values();
  for (double& val : v) val += delta;
  return PiecewiseFunction(u.breakpoints(), std::move(v));
}

namespace {

struct RealInterval {
  double a, b;  // a may be -inf, b may be +inf
};

// Maximal intervals where u > h, from the linear crossings.
std::vector<RealInterval> super_level(const PiecewiseFunction& u, double h) {
  const auto& x = u.breakpoints();
  const auto& v = u.values();
  std::vector<RealInterval> out;
  bool inside = v.front() > h;
  double start = -kInf;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    bool next = v[i + 1] > h;
    if (next == inside) continue;
    double cross = x[i] + (h - v[i]) * (x[i + 1] - x[i]) / (v[i + 1] - v[i]);
    cross = std::min(std::max(cross, x[i]), x[i + 1]);
    if (inside)
      out.push_back({start, cross});
    else
      start = cross;
    inside = next;
  }
  if (inside) out.push_back({start, kInf});
  return out;
}

double cdf_ext(const Measure& m, double x) {
  if (x == -kInf) return 0.0;
  if (x == kInf) return 1.0;
  return m.cdf(x);
}

}  // namespace

QuantileSet level_set(const PiecewiseFunction& u, const Measure& m, double h) {
  std::vector<double> ends;
  for (const RealInterval& iv : super_level(u, h)) {
    ends.push_back(cdf_ext(m, iv.a));
    ends.push_back(cdf_ext(m, iv.b));
  }
  return QuantileSet(std::move(ends));
}

double distribution_function(const PiecewiseFunction& u, const Measure& m,
                             double h) {
  double total = 0.0;
  for (const RealInterval& iv : super_level(u, h))
    total += cdf_ext(m, iv.b) - cdf_ext(m, iv.a);
  return total;
}

double support_measure(const PiecewiseFunction& u, const Measure& m) {
  return distribution_function(absolute(u), m, 0.0);
}

double mu_median(const PiecewiseFunction& u, const Measure& m) {
  double lo = u.min_value();
  double hi = u.max_value();
  if (hi - lo == 0.0) return lo;
  // mu(u > h) > 1/2 for h < median, <= 1/2 above; bisect on that predicate.
  for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::fabs(hi));
       ++it) {
    double mid = 0.5 * (lo + hi);
    if (distribution_function(u, m, mid) > 0.5)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

namespace {

// Distinct |values| of u in increasing order, always starting at 0: the
// distribution function of |u| is smooth between consecutive entries.
std::vector<double> level_knots(const PiecewiseFunction& au) {
  std::vector<double> knots = au.values();
  knots.push_back(0.0);
  std::sort(knots.begin(), knots.end());
  knots.erase(std::unique(knots.begin(), knots.end(),
                          [](double a, double b) { return b - a < 1e-15; }),
              knots.end());
  return knots;
}

}  // namespace

double integral_abs(const PiecewiseFunction& u, const Measure& m) {
  PiecewiseFunction au = absolute(u);
  std::vector<double> knots = level_knots(au);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < knots.size(); ++i)
    total += integrate(
        [&](double h) { return distribution_function(au, m, h); }, knots[i],
        knots[i + 1]);
  return total;
}

double integral_abs_gradient(const PiecewiseFunction& u, const Measure& m) {
  const auto& x = u.breakpoints();
  const auto& v = u.values();
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    if (v[i + 1] == v[i]) continue;
    double slope = (v[i + 1] - v[i]) / (x[i + 1] - x[i]);
    total += std::fabs(slope) * (m.cdf(x[i + 1]) - m.cdf(x[i]));
  }
  return total;
}

namespace {

// sup{h >= 0 : mu(|u| > h) > s} without domain checks; 0 when the
// distribution never exceeds s.
double rearrangement_value(const PiecewiseFunction& au, const Measure& m,
                           double s) {
  if (!(distribution_function(au, m, 0.0) > s)) return 0.0;
  double lo = 0.0, hi = au.max_value();
  if (!(hi > 0.0)) return 0.0;
  for (int it = 0; it < 100 && hi - lo > 1e-15 * std::max(1.0, hi); ++it) {
    double mid = 0.5 * (lo + hi);
    if (distribution_function(au, m, mid) > s)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

void require_nonnegative(const PiecewiseFunction& u) {
  for (double val : u.values())
    if (val < 0.0)
      throw std::invalid_argument("rearrangement requires a nonnegative function");
}

}  // namespace

double decreasing_rearrangement(const PiecewiseFunction& u, const Measure& m,
                                double s) {
  require_nonnegative(u);
  double supp = distribution_function(u, m, 0.0);
  if (!(s > 0.0) || !(s < supp))
    throw std::invalid_argument("rearrangement argument outside (0, mu(supp u))");
  return rearrangement_value(u, m, s);
}

double sharp_rearrangement(const PiecewiseFunction& u, const Measure& m,
                           double x) {
  require_nonnegative(u);
  double supp = distribution_function(u, m, 0.0);
  if (supp > 0.5 + 1e-12)
    throw std::invalid_argument("sharp rearrangement needs mu(supp u) <= 1/2");
  double s = 2.0 * cdf_ext(m, -std::fabs(x));
  return rearrangement_value(u, m, s);
}

double sharp_distance(const PiecewiseFunction& u, const Measure& m) {
  PiecewiseFunction au = absolute(u);
  std::vector<double> knots = level_knots(au);
  // Layer cake: ||u|-u#|_L1 integrates the symmetric difference between
  // {|u| > h} and the complement-of-interval of equal measure over h.
  auto layer = [&](double h) {
    QuantileSet e = level_set(au, m, h);
    double q = e.measure();
    if (q <= 0.0) return 0.0;
    return symmetric_difference_measure(
        e, reference_set(q, ReferenceShape::ComplementOfInterval));
  };
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < knots.size(); ++i)
    total += integrate(layer, knots[i], knots[i + 1]);
  return total;
}

double weak_lorentz_norm(const PiecewiseFunction& u, const Measure& m,
                         double p) {
  if (!(p > 0.0)) throw std::invalid_argument("weak Lorentz exponent must be positive");
  PiecewiseFunction au = absolute(u);
  double vmax = au.max_value();
  if (!(vmax > 0.0)) return 0.0;

  auto score = [&](double t) {
    double mu = distribution_function(au, m, t);
    return mu > 0.0 ? t * std::pow(mu, 1.0 / p) : 0.0;
  };

  std::vector<double> grid = level_knots(au);
  for (int k = 0; k <= 256; ++k)
    grid.push_back(vmax * std::pow(10.0, -8.0 * (1.0 - k / 256.0)));
  std::sort(grid.begin(), grid.end());

  double best = 0.0;
  std::size_t best_i = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double val = score(grid[i]);
    if (val > best) {
      best = val;
      best_i = i;
    }
  }

  // Golden-section polish between the neighbours of the grid argmax.
  double a = grid[best_i > 0 ? best_i - 1 : 0];
  double b = grid[std::min(best_i + 1, grid.size() - 1)];
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - gr * (b - a), d = a + gr * (b - a);
  double fc = score(c), fd = score(d);
  for (int it = 0; it < 80; ++it) {
    if (fc < fd) {
      a = c;
      c = d;
      fc = fd;
      d = a + gr * (b - a);
      fd = score(d);
    } else {
      b = d;
      d = c;
      fd = fc;
      c = b - gr * (b - a);
      fc = score(c);
    }
  }
  return std::max(best, std::max(fc, fd));
}

namespace {

// Maximize g over [a,b]: coarse grid then golden section around the argmax.
double grid_max(const std::function<double(double)>& g, double a, double b,
                int n) {
  double best = -kInf;
  int best_i = 0;
  for (int i = 0; i <= n; ++i) {
    double t = a + (b - a) * i / n;
    double val = g(t);
    if (val > best) {
      best = val;
      best_i = i;
    }
  }
  double lo = a + (b - a) * std::max(best_i - 1, 0) / n;
  double hi = a + (b - a) * std::min(best_i + 1, n) / n;
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = hi - gr * (hi - lo), d = lo + gr * (hi - lo);
  double fc = g(c), fd = g(d);
  for (int it = 0; it < 100; ++it) {
    if (fc < fd) {
      lo = c;
      c = d;
      fc = fd;
      d = lo + gr * (hi - lo);
      fd = g(d);
    } else {
      hi = d;
      d = c;
      fd = fc;
      c = hi - gr * (hi - lo);
      fc = g(c);
    }
  }
  return std::max(best, std::max(fc, fd));
}

}  // namespace

double cheeger_beta(const Measure& m, double s) {
  if (!(s > 0.0)) throw std::invalid_argument("cheeger_beta needs s > 0");
  if (s >= 0.5) return 0.0;
  auto ratio = [&](double t) {
    double prof = isoperimetric_profile(m, t);
    return prof > 0.0 ? (t - s) / prof : 0.0;
  };
  return grid_max(ratio, s, 0.5, 512);
}

double profile_from_beta(const Measure& m, double t) {
  if (!(t > 0.0) || t > 0.5)
    throw std::invalid_argument("profile_from_beta needs t in (0, 1/2]");
  auto ratio = [&](double s) {
    if (!(s > 0.0) || s >= t) return 0.0;
    double beta = cheeger_beta(m, s);
    return beta > 0.0 ? (t - s) / beta : 0.0;
  };
  // The sup may sit at an interior stationary point or at s -> 0+, so scan a
  // linear grid plus a geometric tail toward 0 before polishing.
  std::vector<double> grid;
  for (int k = 1; k <= 256; ++k) grid.push_back(t * k / 256.0 * 0.999999);
  for (int j = 1; j <= 12; ++j) grid.push_back(t * std::pow(10.0, -j));
  std::sort(grid.begin(), grid.end());

  double best = 0.0;
  std::size_t best_i = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double val = ratio(grid[i]);
    if (val > best) {
      best = val;
      best_i = i;
    }
  }
  double a = grid[best_i > 0 ? best_i - 1 : 0];
  double b = grid[std::min(best_i + 1, grid.size() - 1)];
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - gr * (b - a), d = a + gr * (b - a);
  double fc = ratio(c), fd = ratio(d);
  for (int it = 0; it < 60; ++it) {
    if (fc < fd) {
      a = c;
      c = d;
      fc = fd;
      d = a + gr * (b - a);
      fd = ratio(d);
    } else {
      b = d;
      d = c;
      fd = fc;
      c = b - gr * (b - a);
      fc = ratio(c);
    }
  }
  return std::max(best, std::max(fc, fd));
}

namespace {

void require_median_zero(const PiecewiseFunction& u, const Measure& m) {
  if (std::fabs(mu_median(u, m)) > 1e-9)
    throw std::invalid_argument("function must have mu-median 0");
}

CheegerReport build_report(const std::vector<double>& s_grid,
                           const std::function<double(double)>& lhs_at,
                           const std::function<double(double)>& rhs_at) {
  CheegerReport rep;
  rep.min_margin = kInf;
  for (double s : s_grid) {
    CheegerRow row;
    row.s = s;
    row.lhs = lhs_at(s);
    row.rhs = rhs_at(s);
    row.margin = row.rhs - row.lhs;
    if (row.margin < -1e-10) ++rep.violations;
    rep.min_margin = std::min(rep.min_margin, row.margin);
    rep.rows.push_back(row);
  }
  if (rep.rows.empty()) rep.min_margin = 0.0;
  return rep;
}

}  // namespace

CheegerReport check_weak_cheeger(const PiecewiseFunction& u, const Measure& m,
                                 const std::vector<double>& s_grid) {
  require_median_zero(u, m);
  double l1 = integral_abs(u, m);
  double grad = integral_abs_gradient(u, m);
  double osc = u.oscillation();
  return build_report(
      s_grid, [&](double) { return l1; },
      [&](double s) { return cheeger_beta(m, s) * grad + s * osc; });
}

CheegerReport check_quantitative_cheeger(const PiecewiseFunction& u,
                                         const Measure& m,
                                         const std::vector<double>& s_grid,
                                         double c_prime) {
  require_median_zero(u, m);
  // 0 must sit in a zero stretch of u (outside the support): every piece
  // whose closure touches the origin has to vanish identically.
  const auto& x = u.breakpoints();
  const auto& v = u.values();
  bool zero_near_origin = true;
  if (x.front() >= 0.0) zero_near_origin = zero_near_origin && v.front() == 0.0;
  if (x.back() <= 0.0) zero_near_origin = zero_near_origin && v.back() == 0.0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i)
    if (x[i] <= 0.0 && 0.0 <= x[i + 1])
      zero_near_origin =
          zero_near_origin && v[i] == 0.0 && v[i + 1] == 0.0;
  if (!zero_near_origin)
    throw std::invalid_argument("origin must lie outside the support");
  if (!(c_prime > 0.0))
    throw std::invalid_argument("quantitative constant must be positive");

  double l1 = integral_abs(u, m);
  double grad = integral_abs_gradient(u, m);
  double osc = u.oscillation();
  double dist = sharp_distance(u, m);
  double psi_dist = 0.5 * c_prime * dist * dist;
  return build_report(
      s_grid,
      [&](double s) { return cheeger_beta(m, s) * psi_dist + l1; },
      [&](double s) { return cheeger_beta(m, s) * grad + 2.0 * s * osc; });
}

}  // namespace isoperim
