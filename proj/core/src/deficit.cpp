#include "isoperim/deficit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace isoperim {

double nabla2_epsilon(const Measure& m) {
  const int n = 4096;
  double worst = std::numeric_limits<double>::infinity();
  for (int i = 1; i <= n; ++i) {
    const double x = 0.5 * i / n;
    const double den = m.j(0.5 * x);
    if (!(den > 0.0)) continue;
    worst = std::fmin(worst, m.j(x) / den - 2.0);
  }
  return std::fmax(0.0, worst);
}

double second_derivative_inf(const Measure& m, double p) {
  if (!(p > 0.0 && p <= 1.0))
    throw std::invalid_argument("second_derivative_inf: p outside (0,1]");
  const double a = p / 2.0, b = 0.5;
  const double h = 1e-4;
  double best = m.j_second(b), arg = b;
  for (double t = a; t < b; t += h) {
    const double v = m.j_second(t);
    if (v < best) { best = v; arg = t; }
  }
  const double lo = std::fmax(a, arg - h), hi = std::fmin(b, arg + h);
  const int refine = 200;
  for (int k = 0; k <= refine; ++k) {
    const double t = lo + (hi - lo) * k / refine;
    best = std::fmin(best, m.j_second(t));
  }
  return best;
}

double constant_c(const Measure& m, double p) {
  if (!(p > 0.0 && p <= 0.5))
    throw std::invalid_argument("constant_c: p outside (0,1/2]");
  const double mp = second_derivative_inf(m, p);
  if (!(mp > 0.0))
    throw std::runtime_error("constant_c: inf J'' on [p/2,1/2] is nonpositive");
  const double gap = m.j(0.5) - 2.0 * m.j(0.25);
  if (!(gap > 0.0))
    throw std::runtime_error("constant_c: J(1/2) - 2J(1/4) is nonpositive");
  const double q = gap / m.j_prime_at_half();
  const double terms[5] = {8.0 * m.j_prime(p / 2.0), mp,
                           16.0 * m.j_prime(1.0 / 6.0), 8.0 * gap,
                           4.0 * second_derivative_inf(m, q)};
  return *std::min_element(terms, terms + 5) / 32.0;
}

bool j_prime_concave(const Measure& m) {
  const int n = 200;
  for (int i = 2; i < n; ++i) {
    const double mid = m.j_prime(0.5 * i / n);
    const double left = m.j_prime(0.5 * (i - 1) / n);
    const double right = m.j_prime(0.5 * (i + 1) / n);
    const double tol = 1e-9 * std::fmax(1.0, std::fabs(mid));
    if (2.0 * mid < left + right - tol) return false;
  }
  return true;
}

bool j_prime_vanishes_at_zero(const Measure& m) {
  return m.j_prime(1e-6) < 0.5 * m.j_prime(1e-3);
}

namespace {

bool origin_free_hypotheses(const Measure& m, double epsilon) {
  return epsilon > 0.0 && j_prime_concave(m) && j_prime_vanishes_at_zero(m);
}

double capped_c_prime(const Measure& m, double epsilon) {
  const double used = std::fmin(0.99 * epsilon, 0.99);
  return used * m.j_second_at_half() / 32.0;
}

}  // namespace

DeficitConstants deficit_constants(const Measure& m, double p) {
  DeficitConstants out;
  out.c = constant_c(m, p);
  out.m_inf = second_derivative_inf(m, p);
  out.epsilon = nabla2_epsilon(m);
  out.c_prime = origin_free_hypotheses(m, out.epsilon)
                    ? capped_c_prime(m, out.epsilon)
                    : std::numeric_limits<double>::quiet_NaN();
  return out;
}

double deficit_lower_bound(const Measure& m, double p, double lambda,
                           bool origin_free) {
  if (!(p >= 0.0 && p <= 0.5))
    throw std::invalid_argument("deficit_lower_bound: p outside [0,1/2]");
  if (!(lambda >= 0.0 && lambda <= 2.0 * p + 1e-15))
    throw std::invalid_argument("deficit_lower_bound: lambda outside [0,2p]");
  if (lambda == 0.0) return 0.0;
  if (origin_free) {
    const double eps = nabla2_epsilon(m);
    if (!origin_free_hypotheses(m, eps))
      throw std::runtime_error(
          "deficit_lower_bound: origin-free hypotheses fail "
          "(need eps > 0, J' concave, J'(0+) = 0)");
    return capped_c_prime(m, eps) * lambda * lambda;
  }
  const double c = constant_c(m, p);
  const double one_l = 1.0 - lambda;
  return c * (one_l * one_l + (1.0 - 2.0 * p)) * lambda * lambda;
}

AnomalousExample anomalous_example(const Measure& m, double eta, double eps) {
  if (!(eta > 0.0 && eta < 0.5))
    throw std::invalid_argument("anomalous_example: eta outside (0,1/2)");
  if (!(eps > 0.0 && eps < 0.5))
    throw std::invalid_argument("anomalous_example: eps outside (0,1/2)");
  QuantileSet set{{0.25 + (eta - eps) / 2.0, 0.75 - (eta + eps) / 2.0}};
  return AnomalousExample{set, deficit(set, m), 1.0 - eps};
}

}  // namespace isoperim
