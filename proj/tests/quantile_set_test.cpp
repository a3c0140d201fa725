#include "doctest.h"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

#include "isoperim/measure.hpp"
#include "isoperim/quantile_set.hpp"

using namespace isoperim;

TEST_CASE("construction validates and normalizes") {
  CHECK_THROWS_AS(QuantileSet({0.1}), std::invalid_argument);
  CHECK_THROWS_AS(QuantileSet({0.3, 0.2}), std::invalid_argument);
  CHECK_THROWS_AS(QuantileSet({-0.1, 0.2}), std::invalid_argument);
  CHECK_THROWS_AS(QuantileSet({0.9, 1.2}), std::invalid_argument);

  // degenerate interval disappears, touching intervals fuse
  CHECK(QuantileSet({0.3, 0.3}).empty());
  QuantileSet fused({0.2, 0.3, 0.3, 0.45});
  CHECK(fused.component_count() == 1);
  CHECK(fused.measure() == doctest::Approx(0.25).epsilon(1e-14));

  QuantileSet two({0.1, 0.2, 0.6, 0.9});
  CHECK(two.component_count() == 2);
  CHECK(two.measure() == doctest::Approx(0.4).epsilon(1e-14));
}

TEST_CASE("contains_origin is strict about the boundary") {
  CHECK(QuantileSet({0.4, 0.6}).contains_origin());
  CHECK_FALSE(QuantileSet({0.5, 0.6}).contains_origin());
  CHECK_FALSE(QuantileSet({0.4, 0.5}).contains_origin());
  CHECK_FALSE(QuantileSet({0.1, 0.3}).contains_origin());
  CHECK(QuantileSet({0.0, 0.2, 0.45, 0.55}).contains_origin());
}

TEST_CASE("complement and mirror are involutions preserving structure") {
  QuantileSet s({0.1, 0.25, 0.4, 0.7});
  QuantileSet c = s.complement();
  CHECK(c.measure() == doctest::Approx(1.0 - s.measure()).epsilon(1e-14));
  CHECK(c.complement().endpoints() == s.endpoints());
  // mirroring twice reproduces the set up to 1-(1-t) roundoff
  QuantileSet mm = s.mirrored().mirrored();
  REQUIRE(mm.endpoints().size() == s.endpoints().size());
  for (size_t i = 0; i < s.endpoints().size(); ++i)
    CHECK(mm.endpoints()[i] ==
          doctest::Approx(s.endpoints()[i]).epsilon(1e-14));

  Measure m = Measure::generalized_cauchy(1.0);
  // J(0)=J(1)=0 and J symmetric, so both operations keep the perimeter
  CHECK(perimeter(c, m) == doctest::Approx(perimeter(s, m)).epsilon(1e-13));
  CHECK(perimeter(s.mirrored(), m) ==
        doctest::Approx(perimeter(s, m)).epsilon(1e-13));
}

TEST_CASE("perimeter sums J over the endpoints") {
  Measure m = Measure::generalized_cauchy(1.0);  // J(t) = 2 min(t,1-t)^2
  CHECK(perimeter(QuantileSet({0.1, 0.3}), m) ==
        doctest::Approx(2 * 0.01 + 2 * 0.09).epsilon(1e-13));
  CHECK(perimeter(QuantileSet({0.0, 0.2}), m) ==
        doctest::Approx(0.08).epsilon(1e-13));
  CHECK(perimeter(QuantileSet({0.0, 1.0}), m) == doctest::Approx(0.0));
}

TEST_CASE("symmetric difference measure") {
  QuantileSet a({0.0, 0.2});
  QuantileSet b({0.1, 0.3});
  CHECK(symmetric_difference_measure(a, b) == doctest::Approx(0.2).epsilon(1e-14));
  CHECK(symmetric_difference_measure(a, a) == doctest::Approx(0.0));
  QuantileSet d({0.5, 0.6});
  CHECK(symmetric_difference_measure(a, d) == doctest::Approx(0.3).epsilon(1e-14));
}

TEST_CASE("reference sets have zero asymmetry and the right shape") {
  for (double p : {0.1, 0.3, 0.5, 0.7}) {
    QuantileSet comp = reference_set(p, ReferenceShape::ComplementOfInterval);
    CHECK(comp.measure() == doctest::Approx(p).epsilon(1e-13));
    CHECK_FALSE(comp.contains_origin());
    // the two-tail set is the reference below measure 1/2, the interval above
    if (p <= 0.5)
      CHECK(asymmetry(comp) == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));

    QuantileSet in = reference_set(p, ReferenceShape::Interval);
    CHECK(in.measure() == doctest::Approx(p).epsilon(1e-13));
    CHECK(in.contains_origin());
    if (p >= 0.5)
      CHECK(asymmetry(in) == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
  }
}

TEST_CASE("asymmetry basics") {
  // a far-left interval of measure .2 against the two-tail reference
  // (0,.1)u(.9,1): the overlap is (0,.1), so the difference has measure .2
  QuantileSet left({0.0, 0.2});
  CHECK(asymmetry(left) == doctest::Approx(0.2).epsilon(1e-12));
  // the symmetric interval misses the reference entirely: worst case 2p
  QuantileSet centered({0.4, 0.6});
  CHECK(asymmetry(centered) == doctest::Approx(0.4).epsilon(1e-12));
}

TEST_CASE("asymmetry properties on random sets") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int trial = 0; trial < 300; ++trial) {
    const int k = 1 + int(rng() % 3);
    std::vector<double> ends(2 * k);
    for (double& t : ends) t = unif(rng);
    std::sort(ends.begin(), ends.end());
    QuantileSet s(ends);
    if (s.empty()) continue;
    const double lam = asymmetry(s);
    const double p = s.measure();
    CHECK(lam >= -1e-14);
    CHECK(lam <= 2.0 * std::min(p, 1.0 - p) + 1e-12);
    CHECK(asymmetry(s.complement()) == doctest::Approx(lam).epsilon(1e-11));
    CHECK(asymmetry(s.mirrored()) == doctest::Approx(lam).epsilon(1e-11));
  }
}

TEST_CASE("deficit is nonnegative and vanishes on references") {
  Measure m = Measure::generalized_cauchy(1.0);
  CHECK(deficit(reference_set(0.3, ReferenceShape::ComplementOfInterval), m) ==
        doctest::Approx(0.0).scale(1.0).epsilon(1e-13));
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<double> ends(4);
    for (double& t : ends) t = unif(rng);
    std::sort(ends.begin(), ends.end());
    QuantileSet s(ends);
    if (s.empty() || s.measure() < 1e-6 || s.measure() > 1.0 - 1e-6) continue;
    CHECK(deficit(s, m) >= -1e-12);
  }
}

TEST_CASE("reference points are consistent with the quantile map") {
  Measure m = Measure::generalized_cauchy(1.0);
  ReferencePoints rp = reference_points(m, 0.3);
  CHECK(rp.alpha_quantile == doctest::Approx(0.35));
  CHECK(rp.sigma_quantile == doctest::Approx(0.3));
  CHECK(rp.beta_quantile == doctest::Approx(0.15));
  CHECK(m.quantile(rp.beta_quantile) == doctest::Approx(-rp.beta_p).epsilon(1e-10));
  CHECK(m.quantile(rp.alpha_quantile) == doctest::Approx(-rp.alpha_p).epsilon(1e-10));
  CHECK(m.quantile(rp.sigma_quantile) == doctest::Approx(-rp.sigma_p).epsilon(1e-10));
}

TEST_CASE("exponential interval perimeter closed form") {
  Measure e = Measure::two_sided_exponential();
  const double inf = std::numeric_limits<double>::infinity();
  CHECK(exp_interval_perimeter(0.4, -inf) == doctest::Approx(0.4).epsilon(1e-13));
  CHECK_THROWS_AS(exp_interval_perimeter(1.2, 0.0), std::invalid_argument);

  // all three branches against the generic quantile-set perimeter
  auto check_pair = [&](double t1, double t2) {
    const double p = t2 - t1;
    const double a = t1 <= 0.0 ? -inf : e.quantile(t1);
    const double generic = perimeter(QuantileSet({t1, t2}), e);
    CHECK(exp_interval_perimeter(p, a) ==
          doctest::Approx(generic).epsilon(1e-12));
  };
  check_pair(0.05, 0.3);   // entirely on the left half line
  check_pair(0.2, 0.8);    // straddles the origin
  check_pair(0.6, 0.95);   // entirely on the right half line
  check_pair(0.2, 0.5);    // right endpoint exactly at the origin
  check_pair(0.5, 0.75);   // left endpoint exactly at the origin
  check_pair(0.0, 0.35);   // half line
}
