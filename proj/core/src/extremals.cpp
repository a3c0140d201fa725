#include "isoperim/extremals.hpp"

#include "isoperim/deficit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace isoperim {

namespace {

constexpr double kTieTol = 1e-12;

double bisect_root(const std::function<double(double)>& g, double lo, double hi,
                   double glo, double ghi, double xtol) {
  // sign convention: glo > 0 > ghi or glo < 0 < ghi
  const bool rising = glo < 0.0;
  (void)ghi;
  while (hi - lo > xtol) {
    const double mid = 0.5 * (lo + hi);
    const double gm = g(mid);
    if ((gm < 0.0) == rising) lo = mid; else hi = mid;
  }
  return 0.5 * (lo + hi);
}

void check_pl(double p, double lambda) {
  if (!(p >= 0.0 && p <= 0.5))
    throw std::invalid_argument("candidate: p outside [0,1/2]");
  if (!(lambda >= 0.0 && lambda <= std::fmin(2.0 * p, 1.0) + 1e-15))
    throw std::invalid_argument("candidate: lambda outside [0, min(2p,1)]");
}

Family base_family(Family f) {
  switch (f) {
    case Family::E2M: return Family::E2;
    case Family::E3M: return Family::E3;
    case Family::E5M: return Family::E5;
    case Family::E6M: return Family::E6;
    case Family::E7M: return Family::E7;
    default: return f;
  }
}

bool is_mirror(Family f) { return base_family(f) != f; }

}  // namespace

double psi(const Measure& m, double p, double t) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("psi: p outside [0,1]");
  if (!(t >= 0.0 && t <= 1.0 - p + 1e-15))
    throw std::invalid_argument("psi: t outside [0,1-p]");
  return m.j(t) + m.j(std::fmin(p + t, 1.0));
}

double threshold_p0(const Measure& m) {
  auto g = [&m](double p) {
    return m.j(1.0 - p) - 2.0 * m.j((1.0 - p) / 2.0);
  };
  const double lo0 = 1e-9, hi0 = 0.5;
  const double glo = g(lo0), ghi = g(hi0);
  if (!(glo < 0.0 && ghi > 0.0))
    throw std::runtime_error("threshold_p0: no sign change on (0,1/2)");
  return bisect_root(g, lo0, hi0, glo, ghi, 1e-12);
}

IntervalMinimizer interval_minimizer(const Measure& m, double p) {
  if (!(p > 0.0 && p < 1.0))
    throw std::invalid_argument("interval_minimizer: p outside (0,1)");
  const double half_line = m.j(1.0 - p);
  const double symmetric = 2.0 * m.j((1.0 - p) / 2.0);
  if (p >= 0.5) {
    // every interval of measure >= 1/2 straddles the origin; psi is minimal
    // at the symmetric position (half lines only tie in degenerate cases)
    if (std::fabs(half_line - symmetric) <= kTieTol)
      return {IntervalShape::Tie, symmetric};
    return {IntervalShape::SymmetricInterval, symmetric};
  }
  if (std::fabs(half_line - symmetric) <= kTieTol)
    return {IntervalShape::Tie, symmetric};
  if (half_line < symmetric) return {IntervalShape::HalfLine, half_line};
  return {IntervalShape::SymmetricInterval, symmetric};
}

double isoperimetric_profile(const Measure& m, double p) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("isoperimetric_profile: p outside [0,1]");
  return 2.0 * m.j(std::fmin(p, 1.0 - p) / 2.0);
}

const char* family_name(Family f) {
  switch (f) {
    case Family::E1: return "E1";
    case Family::E2: return "E2";
    case Family::E3: return "E3";
    case Family::E4: return "E4";
    case Family::E5: return "E5";
    case Family::E6: return "E6";
    case Family::E7: return "E7";
    case Family::E2M: return "E2m";
    case Family::E3M: return "E3m";
    case Family::E5M: return "E5m";
    case Family::E6M: return "E6m";
    case Family::E7M: return "E7m";
  }
  return "?";
}

bool family_needs_parameter(Family f) {
  const Family b = base_family(f);
  return b == Family::E6 || b == Family::E7;
}

std::optional<ParamRange> family_parameter_range(Family f, double p, double lambda) {
  check_pl(p, lambda);
  const Family b = base_family(f);
  switch (b) {
    case Family::E1:
    case Family::E4:
      return ParamRange{0.0, 0.0};
    case Family::E2:
      if (lambda <= p) return ParamRange{0.0, 0.0};
      return std::nullopt;
    case Family::E3:
    case Family::E5:
      if (lambda >= p) return ParamRange{0.0, 0.0};
      return std::nullopt;
    case Family::E6: {
      // right endpoint index -p+lambda+t must be nonnegative
      if (lambda <= p) return ParamRange{std::fmax(0.0, p - lambda), p};
      const double lo = lambda - p, hi = 2.0 * p - lambda;
      if (lo <= hi) return ParamRange{lo, hi};
      return std::nullopt;
    }
    case Family::E7: {
      if (lambda <= p) return ParamRange{0.0, lambda};
      const double lo = lambda - p, hi = p;
      if (lo <= hi) return ParamRange{lo, hi};
      return std::nullopt;
    }
    default: return std::nullopt;
  }
}

bool family_valid(Family f, double p, double lambda) {
  return family_parameter_range(f, p, lambda).has_value();
}

Candidate candidate(const Measure& m, Family f, double p, double lambda, double t) {
  const auto range = family_parameter_range(f, p, lambda);
  if (!range)
    throw std::invalid_argument("candidate: family invalid at (p,lambda)");
  if (family_needs_parameter(f)) {
    if (std::isnan(t))
      throw std::invalid_argument("candidate: family requires parameter t");
    if (t < range->lo - 1e-15 || t > range->hi + 1e-15)
      throw std::invalid_argument("candidate: t outside admissible range");
  } else {
    t = std::numeric_limits<double>::quiet_NaN();
  }

  std::vector<double> ends;
  double perim = 0.0;
  switch (base_family(f)) {
    case Family::E1:
      ends = {lambda / 4.0, p / 2.0 + lambda / 4.0,
              1.0 - p / 2.0 - lambda / 4.0, 1.0 - lambda / 4.0};
      perim = 2.0 * m.j(lambda / 4.0) + 2.0 * m.j(p / 2.0 + lambda / 4.0);
      break;
    case Family::E2:
      ends = {0.0, (p + lambda) / 2.0, 1.0 - (p - lambda) / 2.0, 1.0};
      perim = m.j((p + lambda) / 2.0) + m.j((p - lambda) / 2.0);
      break;
    case Family::E3:
      ends = {(lambda - p) / 2.0, (lambda + p) / 2.0};
      perim = m.j((lambda + p) / 2.0) + m.j((lambda - p) / 2.0);
      break;
    case Family::E4:
      ends = {0.0, p / 2.0 - lambda / 4.0, 0.5 - lambda / 4.0,
              0.5 + lambda / 4.0, 1.0 - p / 2.0 + lambda / 4.0, 1.0};
      perim = 2.0 * m.j(p / 2.0 - lambda / 4.0) + 2.0 * m.j(0.5 - lambda / 4.0);
      break;
    case Family::E5:
      ends = {0.0, p - lambda / 2.0, 0.5 - lambda / 4.0, 0.5 + lambda / 4.0};
      perim = m.j(p - lambda / 2.0) + 2.0 * m.j(0.5 - lambda / 4.0);
      break;
    case Family::E6: {
      // t sits at a validated range edge, so differences like p-t can pick
      // up one-ulp noise; snap the j arguments back into [0,1]
      const double a = std::fmax(0.0, (p - t) / 2.0);
      const double b = std::fmax(0.0, (lambda + t - p) / 2.0);
      ends = {a, p / 2.0 + lambda / 4.0, 1.0 - p / 2.0 - lambda / 4.0, 1.0 - b};
      perim = m.j(a) + 2.0 * m.j(p / 2.0 + lambda / 4.0) + m.j(b);
      break;
    }
    case Family::E7: {
      const double a = std::fmax(0.0, (lambda - t) / 2.0);
      const double b = std::fmax(0.0, (p - t) / 2.0);
      ends = {a, (p + lambda) / 2.0, 1.0 - b, 1.0};
      perim = m.j(a) + m.j((p + lambda) / 2.0) + m.j(b);
      break;
    }
    default: break;
  }

  // guard against fp noise at range edges before constructing the set
  for (double& e : ends) e = std::fmin(1.0, std::fmax(0.0, e));
  std::sort(ends.begin(), ends.end());
  QuantileSet set{std::move(ends)};
  if (is_mirror(f)) set = set.mirrored();
  return Candidate{f, p, lambda, t, std::move(set), perim};
}

MinCandidate min_candidate(const Measure& m, double p, double lambda,
                           bool origin_free) {
  check_pl(p, lambda);
  std::vector<Family> menu;
  if (!origin_free) {
    menu = lambda <= p ? std::vector<Family>{Family::E1, Family::E2, Family::E4}
                       : std::vector<Family>{Family::E1, Family::E3, Family::E4};
  } else {
    if (lambda <= p)
      menu = {Family::E1, Family::E2};
    else if (lambda <= 1.0 - p)
      menu = {Family::E1, Family::E3};
    else
      menu = {Family::E1};
  }

  MinCandidate out;
  out.tie = false;
  double best = std::numeric_limits<double>::infinity();
  for (Family f : menu) {
    const double perim = candidate(m, f, p, lambda).closed_form_perimeter;
    out.menu.push_back({f, perim});
    if (perim < best - kTieTol) {
      best = perim;
      out.family = f;
      out.tie = false;
    } else if (perim <= best + kTieTol) {
      out.tie = true;  // keep the lowest family index
      best = std::fmin(best, perim);
    }
  }
  out.perimeter = best;
  return out;
}

namespace {

// P(E4) - P(E3); arguments are clamped to [0,1] to absorb rounding dust at
// the corners (e.g. p/2 - lambda/4 = -1e-17 at p = 1/3, lambda = 1-p).
double l43(const Measure& m, double p, double lambda) {
  auto cj = [&](double t) { return m.j(std::clamp(t, 0.0, 1.0)); };
  const double p4 = 2.0 * cj(p / 2.0 - lambda / 4.0) + 2.0 * cj(0.5 - lambda / 4.0);
  const double p3 = cj((lambda + p) / 2.0) + cj((lambda - p) / 2.0);
  return p4 - p3;
}

constexpr double kEdgeTol = 1e-9;

}  // namespace

double e3_e4_boundary_lambda(const Measure& m, double p) {
  if (!(p > 0.0 && p < 0.5))
    throw std::invalid_argument("e3_e4_boundary_lambda: p outside (0,1/2)");
  const double hi = std::fmin(2.0 * p, 1.0 - p);
  auto g = [&](double l) { return l43(m, p, l); };
  const double glo = g(p), ghi = g(hi);
  if (std::fabs(ghi) <= kEdgeTol) return hi;
  if (std::fabs(glo) <= kEdgeTol) return p;
  if (!(glo > 0.0 && ghi < 0.0))
    throw std::runtime_error("e3_e4_boundary_lambda: no crossing (p outside [p1,p2])");
  return bisect_root(g, p, hi, glo, ghi, 1e-12);
}

double e3_e4_boundary_p(const Measure& m, double lambda) {
  if (!(lambda > 0.0 && lambda <= 1.0))
    throw std::invalid_argument("e3_e4_boundary_p: lambda outside (0,1]");
  const double lo = std::fmax(lambda / 2.0, 1.0 - lambda), hi = 0.5;
  if (lo >= hi) return 0.5;  // lambda = 1
  auto g = [&](double p) { return l43(m, p, lambda); };
  const double glo = g(lo), ghi = g(hi);
  if (std::fabs(glo) <= kEdgeTol) return lo;
  if (std::fabs(ghi) <= kEdgeTol) return hi;
  if (!(glo < 0.0 && ghi > 0.0))
    throw std::runtime_error("e3_e4_boundary_p: no crossing (lambda outside [1-p2,1])");
  return bisect_root(g, lo, hi, glo, ghi, 1e-12);
}

double e1_e2_boundary_lambda(const Measure& m, double p) {
  if (!(p > 0.0 && p <= 0.5))
    throw std::invalid_argument("e1_e2_boundary_lambda: p outside (0,1/2]");
  auto g = [&](double l) {
    const double p1 = 2.0 * m.j(l / 4.0) + 2.0 * m.j(p / 2.0 + l / 4.0);
    const double p2 = m.j((p + l) / 2.0) + m.j((p - l) / 2.0);
    return p1 - p2;
  };
  const double lo = 1e-7 * p, hi = p;
  const double glo = g(lo), ghi = g(hi);
  if (!(glo > 0.0 && ghi < 0.0))
    throw std::runtime_error("e1_e2_boundary_lambda: no crossing on (0,p]");
  return bisect_root(g, lo, hi, glo, ghi, 1e-13);
}

double region_corner_p1(const Measure& m) {
  auto g = [&](double p) { return l43(m, p, 2.0 * p); };
  const double lo = 1e-6, hi = 1.0 / 3.0;
  const double glo = g(lo), ghi = g(hi);
  if (!(glo > 0.0 && ghi < 0.0))
    throw std::runtime_error("region_corner_p1: no crossing on (0,1/3)");
  return bisect_root(g, lo, hi, glo, ghi, 1e-12);
}

double region_corner_p2(const Measure& m) {
  auto g = [&](double p) { return l43(m, p, 1.0 - p); };
  const double lo = 1.0 / 3.0, hi = 0.5 - 1e-12;
  const double glo = g(lo), ghi = g(hi);
  if (!(glo < 0.0 && ghi > 0.0))
    throw std::runtime_error("region_corner_p2: no crossing on (1/3,1/2)");
  return bisect_root(g, lo, hi, glo, ghi, 1e-12);
}

RegionMap region_map(const Measure& m, int grid_n) {
  if (grid_n < 2) throw std::invalid_argument("region_map: grid_n < 2");
  RegionMap out;
  out.grid_n = grid_n;
  out.cells.reserve(static_cast<std::size_t>(grid_n) * grid_n);

  const Family families[4] = {Family::E1, Family::E2, Family::E3, Family::E4};
  for (int i = 0; i < grid_n; ++i) {
    const double p = (i + 0.5) / (2.0 * grid_n);
    const double lmax = std::fmin(2.0 * p, 1.0);
    for (int j = 0; j < grid_n; ++j) {
      RegionCell cell;
      cell.p = p;
      cell.lambda = (j + 0.5) / grid_n * lmax;
      cell.tie = false;
      double best = std::numeric_limits<double>::infinity();
      cell.winner = Family::E1;
      for (int k = 0; k < 4; ++k) {
        if (!family_valid(families[k], p, cell.lambda)) {
          cell.perimeter[k] = std::numeric_limits<double>::quiet_NaN();
          continue;
        }
        const double perim =
            candidate(m, families[k], p, cell.lambda).closed_form_perimeter;
        cell.perimeter[k] = perim;
        if (perim < best - kTieTol) {
          best = perim;
          cell.winner = families[k];
          cell.tie = false;
        } else if (perim <= best + kTieTol) {
          cell.tie = true;
          best = std::fmin(best, perim);
        }
      }
      out.cells.push_back(cell);
    }
  }

  // The corner/curve description of the E4 pocket only holds when J' is
  // concave with J'(0+) = 0 (any Cauchy measure with alpha >= 1 qualifies).
  // Without that, the E3/E4 equality locus need not meet lambda = 2p or
  // lambda = 1-p at all (cauchy:0.5, exp, subexp), so report NaN corners
  // and empty curves; the cell classification above is still meaningful.
  out.p1 = std::numeric_limits<double>::quiet_NaN();
  out.p2 = out.p1;
  if (j_prime_concave(m) && j_prime_vanishes_at_zero(m)) {
    out.p1 = region_corner_p1(m);
    out.p2 = region_corner_p2(m);
    out.lambda0_curve.reserve(grid_n + 1);
    for (int k = 0; k <= grid_n; ++k) {
      const double p = out.p1 + (out.p2 - out.p1) * k / grid_n;
      out.lambda0_curve.emplace_back(p, e3_e4_boundary_lambda(m, p));
    }
    out.p0_curve.reserve(grid_n + 1);
    for (int k = 0; k <= grid_n; ++k) {
      const double lambda = (1.0 - out.p2) + out.p2 * k / grid_n;
      out.p0_curve.emplace_back(lambda, e3_e4_boundary_p(m, lambda));
    }
  }
  return out;
}

}  // namespace isoperim
