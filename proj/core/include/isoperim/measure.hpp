#ifndef ISOPERIM_MEASURE_HPP
#define ISOPERIM_MEASURE_HPP

#include <functional>
#include <memory>
#include <string>

namespace isoperim {

/* Symmetric probability measures on the real line whose density is
 * log-convex on each half line.  Everything downstream works with the
 * boundary density in quantile coordinates,
 *
 *     J(t) = f(F^{-1}(t)),  t in [0,1],
 *
 * which vanishes at 0 and 1, is symmetric about 1/2 and convex on (0,1/2).
 */

enum class MeasureKind {
  GeneralizedCauchy,    // f(x) = alpha / (2 (1+|x|)^(1+alpha)), alpha > 0
  TwoSidedExponential,  // f(x) = exp(-|x|) / 2
  SubExponential,       // f(x) ~ exp(-|x|^alpha), 0 < alpha < 1
  Custom,               // caller-supplied symmetric log-convex density
};

class Measure {
public:
  static Measure generalized_cauchy(double alpha);
  static Measure two_sided_exponential();
  static Measure sub_exponential(double alpha);
  // Density need not be normalized; it is rescaled to total mass one.
  // Symmetry and log-convexity are the caller's responsibility.
  static Measure custom(std::function<double(double)> density);

  MeasureKind kind() const;
  double alpha() const;  // shape parameter; NaN for exp and custom

  double density(double x) const;
  double cdf(double x) const;
  double quantile(double t) const;  // t in (0,1); monotone inverse of cdf

  double j(double t) const;         // t in [0,1]
  double j_prime(double t) const;   // t in (0,1/2]; one sided at 1/2
  double j_second(double t) const;  // same domain convention
  double j_prime_at_half() const;   // J'(1/2-)
  double j_second_at_half() const;  // J''(1/2-)
  double j_lipschitz() const;       // sup |J'| = J'(1/2-)

  // Textual form accepted by parse_measure, e.g. "cauchy:1".
  std::string spec_string() const;

private:
  struct Impl;
  explicit Measure(std::shared_ptr<const Impl> impl);
  std::shared_ptr<const Impl> impl_;
};

// Grammar: "cauchy:<alpha>" | "exp" | "subexp:<alpha>".
// Throws std::invalid_argument on malformed input or out-of-range shape.
Measure parse_measure(const std::string& spec);

}  // namespace isoperim

#endif
