#include "doctest.h"

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "isoperim/deficit.hpp"
#include "isoperim/measure.hpp"
#include "isoperim/quantile_set.hpp"

using namespace isoperim;

TEST_CASE("nabla2 epsilon closed values") {
  CHECK(nabla2_epsilon(Measure::generalized_cauchy(1.0)) ==
        doctest::Approx(2.0).epsilon(1e-9));
  CHECK(nabla2_epsilon(Measure::generalized_cauchy(2.0)) ==
        doctest::Approx(2.0 * (std::sqrt(2.0) - 1.0)).epsilon(1e-9));
  CHECK(nabla2_epsilon(Measure::two_sided_exponential()) ==
        doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
}

TEST_CASE("second derivative infimum") {
  // cauchy:1 has constant J'' = 4; cauchy:2 has J'' decreasing to 3 at 1/2
  CHECK(second_derivative_inf(Measure::generalized_cauchy(1.0), 0.25) ==
        doctest::Approx(4.0).epsilon(1e-6));
  CHECK(second_derivative_inf(Measure::generalized_cauchy(2.0), 0.25) ==
        doctest::Approx(3.0).epsilon(1e-6));
}

TEST_CASE("constant c pieces for cauchy:1") {
  Measure m = Measure::generalized_cauchy(1.0);
  // J' = 4t, J'' = 4: the binding term at p = 1/4 is 8 [J(1/2) - 2 J(1/4)] = 2
  CHECK(constant_c(m, 0.25) == doctest::Approx(1.0 / 16.0).epsilon(1e-10));
  // small p: 8 J'(p/2) = 16 p takes over
  CHECK(constant_c(m, 0.05) == doctest::Approx(16.0 * 0.05 / 32.0).epsilon(1e-9));
  CHECK_THROWS_AS(constant_c(Measure::two_sided_exponential(), 0.25),
                  std::runtime_error);
}

TEST_CASE("origin-free hypotheses detect the right measures") {
  CHECK(j_prime_concave(Measure::generalized_cauchy(1.0)));
  CHECK(j_prime_concave(Measure::generalized_cauchy(2.0)));
  CHECK_FALSE(j_prime_concave(Measure::generalized_cauchy(0.5)));
  CHECK(j_prime_vanishes_at_zero(Measure::generalized_cauchy(1.0)));
  CHECK_FALSE(j_prime_vanishes_at_zero(Measure::two_sided_exponential()));
}

TEST_CASE("deficit constants for cauchy:1") {
  DeficitConstants dc = deficit_constants(Measure::generalized_cauchy(1.0), 0.25);
  CHECK(dc.c == doctest::Approx(1.0 / 16.0).epsilon(1e-10));
  CHECK(dc.epsilon == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(dc.m_inf == doctest::Approx(4.0).epsilon(1e-6));
  // eps capped at 0.99: c' = 0.99 * J''(1/2-) / 32
  CHECK(dc.c_prime == doctest::Approx(0.99 * 4.0 / 32.0).epsilon(1e-6));
}

TEST_CASE("deficit lower bound formulas") {
  Measure m = Measure::generalized_cauchy(1.0);
  const double p = 0.25, lambda = 0.125;
  const double c = constant_c(m, p);
  CHECK(deficit_lower_bound(m, p, lambda, false) ==
        doctest::Approx(c * ((1 - lambda) * (1 - lambda) + (1 - 2 * p)) *
                        lambda * lambda)
            .epsilon(1e-12));
  const double cp = deficit_constants(m, p).c_prime;
  CHECK(deficit_lower_bound(m, p, lambda, true) ==
        doctest::Approx(cp * lambda * lambda).epsilon(1e-12));

  CHECK_THROWS_AS(
      deficit_lower_bound(Measure::generalized_cauchy(0.5), p, lambda, true),
      std::runtime_error);
  CHECK_THROWS_AS(
      deficit_lower_bound(Measure::two_sided_exponential(), p, lambda, true),
      std::runtime_error);
}

TEST_CASE("bounds hold on random sets") {
  std::mt19937_64 rng(123);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Measure m = Measure::generalized_cauchy(1.0);
  int tested = 0;
  for (int trial = 0; trial < 2000 && tested < 500; ++trial) {
    const int k = 1 + int(rng() % 3);
    std::vector<double> ends(2 * k);
    for (double& t : ends) t = unif(rng);
    std::sort(ends.begin(), ends.end());
    QuantileSet s(ends);
    if (s.empty()) continue;
    const double p = std::min(s.measure(), 1.0 - s.measure());
    if (p < 1e-3 || p > 0.5 - 1e-3) continue;
    const double lam = asymmetry(s);
    const double d = deficit(s, m);
    CHECK(d >= deficit_lower_bound(m, p, lam, false) - 1e-12);
    if (!s.contains_origin()) {
      CHECK(d >= deficit_lower_bound(m, p, lam, true) - 1e-12);
    }
    ++tested;
  }
  CHECK(tested == 500);
}

TEST_CASE("anomalous example construction") {
  Measure m = Measure::generalized_cauchy(1.0);
  for (double e : {1e-2, 1e-3}) {
    AnomalousExample an = anomalous_example(m, e, e);
    CHECK(an.asymmetry == doctest::Approx(1.0 - e).epsilon(1e-13));
    // deficit is exactly 2 eps + eps^2 for cauchy:1 at eta = eps
    CHECK(an.deficit == doctest::Approx(2 * e + e * e).epsilon(1e-9));
    CHECK(an.set.measure() == doctest::Approx(0.5 - e).epsilon(1e-12));
    REQUIRE(an.set.endpoints().size() == 2u);
    CHECK(an.set.endpoints()[0] == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(an.set.endpoints()[1] == doctest::Approx(0.75 - e).epsilon(1e-12));
  }
}
