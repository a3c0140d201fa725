#include "isoperim/measure.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace isoperim {

namespace {

constexpr double kQuantileTol = 1e-13;  // |F(x) - t| target for bisection
constexpr double kFdStep = 1e-5;        // finite difference step for J', J''

double integrate(const std::function<double(double)>& g, double a, double b) {
  using boost::math::quadrature::gauss_kronrod;
  return gauss_kronrod<double, 61>::integrate(g, a, b, 12, 1e-14);
}

}  // namespace

struct Measure::Impl {
  MeasureKind kind;
  double alpha = std::numeric_limits<double>::quiet_NaN();
  std::function<double(double)> custom_density;  // normalized on construction

  double density(double x) const {
    const double ax = std::fabs(x);
    switch (kind) {
      case MeasureKind::GeneralizedCauchy:
        return alpha / (2.0 * std::pow(1.0 + ax, 1.0 + alpha));
      case MeasureKind::TwoSidedExponential:
        return 0.5 * std::exp(-ax);
      case MeasureKind::SubExponential:
        return std::exp(-std::pow(ax, alpha)) /
               (2.0 * std::tgamma(1.0 + 1.0 / alpha));
      case MeasureKind::Custom:
        return custom_density(x);
    }
    return 0.0;
  }

  double cdf(double x) const {
    switch (kind) {
      case MeasureKind::GeneralizedCauchy: {
        const double half_tail = 0.5 * std::pow(1.0 + std::fabs(x), -alpha);
        return x >= 0.0 ? 1.0 - half_tail : half_tail;
      }
      case MeasureKind::TwoSidedExponential:
        return x >= 0.0 ? 1.0 - 0.5 * std::exp(-x) : 0.5 * std::exp(x);
      case MeasureKind::SubExponential: {
        if (x == 0.0) return 0.5;
        const double z = std::pow(std::fabs(x), alpha);
        return x > 0.0 ? 0.5 * (1.0 + boost::math::gamma_p(1.0 / alpha, z))
                       : 0.5 * boost::math::gamma_q(1.0 / alpha, z);
      }
      case MeasureKind::Custom: {
        if (x == 0.0) return 0.5;
        const double ax = std::fabs(x);
        const double m = integrate(custom_density, 0.0, ax);
        const double v = 0.5 + (x > 0.0 ? m : -m);
        return std::fmin(1.0, std::fmax(0.0, v));
      }
    }
    return 0.0;
  }

  bool closed_form_quantile() const {
    return kind == MeasureKind::GeneralizedCauchy ||
           kind == MeasureKind::TwoSidedExponential;
  }

  // Bisection inverse of cdf on [0, +inf) for t >= 1/2; the bracket grows
  // geometrically from the origin, robust for heavy tails.
  double quantile_upper(double t) const {
    double lo = 0.0, hi = 1.0;
    while (cdf(hi) < t) {
      lo = hi;
      hi *= 2.0;
      if (!std::isfinite(hi)) throw std::runtime_error("quantile bracket overflow");
    }
    double mid = 0.5 * (lo + hi);
    for (int i = 0; i < 200; ++i) {
      mid = 0.5 * (lo + hi);
      const double err = cdf(mid) - t;
      if (std::fabs(err) <= kQuantileTol) return mid;
      if (err < 0.0) lo = mid; else hi = mid;
      if (hi - lo <= 1e-16 * std::fmax(1.0, std::fabs(mid))) break;
    }
    return mid;
  }

  double quantile(double t) const {
    if (!(t > 0.0 && t < 1.0)) throw std::invalid_argument("quantile: t outside (0,1)");
    switch (kind) {
      case MeasureKind::GeneralizedCauchy: {
        if (t == 0.5) return 0.0;
        const double u = t > 0.5 ? 1.0 - t : t;  // lower-tail mass
        const double mag = std::pow(2.0 * u, -1.0 / alpha) - 1.0;
        return t > 0.5 ? mag : -mag;
      }
      case MeasureKind::TwoSidedExponential:
        return t <= 0.5 ? std::log(2.0 * t) : -std::log(2.0 * (1.0 - t));
      case MeasureKind::SubExponential: {
        // invert 0.5 (1 +- gamma_p(1/alpha, |x|^alpha)) through the inverse
        // incomplete gamma; much faster than bisecting the cdf
        if (t == 0.5) return 0.0;
        const double z = t > 0.5
                             ? boost::math::gamma_p_inv(1.0 / alpha, 2.0 * t - 1.0)
                             : boost::math::gamma_q_inv(1.0 / alpha, 2.0 * t);
        const double mag = std::pow(z, 1.0 / alpha);
        return t > 0.5 ? mag : -mag;
      }
      default:
        if (t == 0.5) return 0.0;
        return t > 0.5 ? quantile_upper(t) : -quantile_upper(1.0 - t);
    }
  }

  double j(double t) const {
    if (!(t >= 0.0 && t <= 1.0)) throw std::invalid_argument("j: t outside [0,1]");
    const double s = std::fmin(t, 1.0 - t);
    if (s <= 0.0) return 0.0;
    switch (kind) {
      case MeasureKind::GeneralizedCauchy:
        return alpha * std::pow(2.0, 1.0 / alpha) * std::pow(s, 1.0 + 1.0 / alpha);
      case MeasureKind::TwoSidedExponential:
        return s;
      default:
        return density(quantile(s));
    }
  }

  double j_prime(double t) const {
    if (!(t > 0.0 && t <= 0.5)) throw std::invalid_argument("j_prime: t outside (0,1/2]");
    switch (kind) {
      case MeasureKind::GeneralizedCauchy:
        return (alpha + 1.0) * std::pow(2.0, 1.0 / alpha) * std::pow(t, 1.0 / alpha);
      case MeasureKind::TwoSidedExponential:
        return 1.0;
      default: {
        const double h = kFdStep;
        if (t - h < 0.0)
          return (-3.0 * j(t) + 4.0 * j(t + h) - j(t + 2.0 * h)) / (2.0 * h);
        if (t + h <= 0.5)
          return (j(t + h) - j(t - h)) / (2.0 * h);
        // one sided from the left near the symmetry point
        return (3.0 * j(t) - 4.0 * j(t - h) + j(t - 2.0 * h)) / (2.0 * h);
      }
    }
  }

  double j_second(double t) const {
    if (!(t > 0.0 && t <= 0.5)) throw std::invalid_argument("j_second: t outside (0,1/2]");
    switch (kind) {
      case MeasureKind::GeneralizedCauchy:
        return (alpha + 1.0) / alpha * std::pow(2.0, 1.0 / alpha) *
               std::pow(t, 1.0 / alpha - 1.0);
      case MeasureKind::TwoSidedExponential:
        return 0.0;
      default: {
        const double h = kFdStep;
        if (t - h < 0.0)
          return (2.0 * j(t) - 5.0 * j(t + h) + 4.0 * j(t + 2.0 * h) -
                  j(t + 3.0 * h)) / (h * h);
        if (t + h <= 0.5)
          return (j(t + h) - 2.0 * j(t) + j(t - h)) / (h * h);
        return (2.0 * j(t) - 5.0 * j(t - h) + 4.0 * j(t - 2.0 * h) -
                j(t - 3.0 * h)) / (h * h);
      }
    }
  }
};

Measure::Measure(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

Measure Measure::generalized_cauchy(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha))
    throw std::invalid_argument("generalized_cauchy: alpha must be positive");
  auto impl = std::make_shared<Impl>();
  impl->kind = MeasureKind::GeneralizedCauchy;
  impl->alpha = alpha;
  return Measure(impl);
}

Measure Measure::two_sided_exponential() {
  auto impl = std::make_shared<Impl>();
  impl->kind = MeasureKind::TwoSidedExponential;
  return Measure(impl);
}

Measure Measure::sub_exponential(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("sub_exponential: alpha must be in (0,1)");
  if (!std::isfinite(std::tgamma(1.0 + 1.0 / alpha)))
    throw std::invalid_argument("sub_exponential: alpha too small");
  auto impl = std::make_shared<Impl>();
  impl->kind = MeasureKind::SubExponential;
  impl->alpha = alpha;
  return Measure(impl);
}

Measure Measure::custom(std::function<double(double)> density) {
  if (!density) throw std::invalid_argument("custom: null density");
  const double half_mass = integrate(density, 0.0,
                                     std::numeric_limits<double>::infinity());
  if (!(half_mass > 0.0) || !std::isfinite(half_mass))
    throw std::invalid_argument("custom: density not integrable");
  const double z = 2.0 * half_mass;
  auto impl = std::make_shared<Impl>();
  impl->kind = MeasureKind::Custom;
  impl->custom_density = [density, z](double x) { return density(x) / z; };
  return Measure(impl);
}

MeasureKind Measure::kind() const { return impl_->kind; }
double Measure::alpha() const { return impl_->alpha; }
double Measure::density(double x) const { return impl_->density(x); }
double Measure::cdf(double x) const { return impl_->cdf(x); }
double Measure::quantile(double t) const { return impl_->quantile(t); }
double Measure::j(double t) const { return impl_->j(t); }
double Measure::j_prime(double t) const { return impl_->j_prime(t); }
double Measure::j_second(double t) const { return impl_->j_second(t); }

double Measure::j_prime_at_half() const {
  switch (impl_->kind) {
    case MeasureKind::GeneralizedCauchy:
      return impl_->alpha + 1.0;
    case MeasureKind::TwoSidedExponential:
      return 1.0;
    default: {
      const double h = kFdStep;
      return (3.0 * impl_->j(0.5) - 4.0 * impl_->j(0.5 - h) +
              impl_->j(0.5 - 2.0 * h)) / (2.0 * h);
    }
  }
}

double Measure::j_second_at_half() const {
  switch (impl_->kind) {
    case MeasureKind::GeneralizedCauchy:
      return 2.0 * (impl_->alpha + 1.0) / impl_->alpha;
    case MeasureKind::TwoSidedExponential:
      return 0.0;
    default: {
      const double h = kFdStep;
      return (2.0 * impl_->j(0.5) - 5.0 * impl_->j(0.5 - h) +
              4.0 * impl_->j(0.5 - 2.0 * h) - impl_->j(0.5 - 3.0 * h)) / (h * h);
    }
  }
}

double Measure::j_lipschitz() const { return j_prime_at_half(); }

std::string Measure::spec_string() const {
  char buf[64];
  switch (impl_->kind) {
    case MeasureKind::GeneralizedCauchy:
      std::snprintf(buf, sizeof buf, "cauchy:%.17g", impl_->alpha);
      return buf;
    case MeasureKind::TwoSidedExponential:
      return "exp";
    case MeasureKind::SubExponential:
      std::snprintf(buf, sizeof buf, "subexp:%.17g", impl_->alpha);
      return buf;
    case MeasureKind::Custom:
      return "custom";
  }
  return "?";
}

Measure parse_measure(const std::string& spec) {
  auto shape_of = [&](size_t prefix_len) {
    const std::string arg = spec.substr(prefix_len);
    size_t pos = 0;
    double v;
    try {
      v = std::stod(arg, &pos);
    } catch (const std::exception&) {
      throw std::invalid_argument("measure: bad shape parameter '" + arg + "'");
    }
    if (pos != arg.size() || !std::isfinite(v))
      throw std::invalid_argument("measure: bad shape parameter '" + arg + "'");
    return v;
  };
  if (spec == "exp") return Measure::two_sided_exponential();
  if (spec.rfind("cauchy:", 0) == 0)
    return Measure::generalized_cauchy(shape_of(7));
  if (spec.rfind("subexp:", 0) == 0)
    return Measure::sub_exponential(shape_of(7));
  throw std::invalid_argument(
      "measure: expected cauchy:<alpha> | exp | subexp:<alpha>, got '" + spec + "'");
}

}  // namespace isoperim
