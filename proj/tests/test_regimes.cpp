#include "kirchhoff/gn_profile.hpp"
#include "kirchhoff/regimes.hpp"

#include <doctest.h>

#include <cmath>

using namespace kirchhoff;

namespace {

std::string rejected_parameter(const ProblemParams& pr) {
  try {
    check_problem(pr);
  } catch (const InadmissibleError& e) {
    return e.parameter();
  }
  return "";
}

}  // namespace

TEST_SUITE("regimes") {
  TEST_CASE("classification of the three regimes") {
    const Regime sup = classify(ProblemParams{1, 1, 1, 3, 5});
    CHECK(sup.tag == RegimeTag::KirchhoffSupercritical);
    CHECK(sup.cStar == 0);

    const Regime crit = classify(ProblemParams{1, 1, 1, 3, 14.0 / 3});
    CHECK(crit.tag == RegimeTag::KirchhoffCritical);
    CHECK(crit.cStar == doctest::Approx(threshold_c0(1, 3)).epsilon(1e-14));

    const Regime two = classify(ProblemParams{1, 1, 1, 3, 4});
    CHECK(two.tag == RegimeTag::TwoBranch);
    CHECK(two.cStar == doctest::Approx(threshold_c1(1, 1, 3, 4)).epsilon(1e-14));

    CHECK(classify(ModelParams{1, 1, 4, 3.6}).tag == RegimeTag::TwoBranch);
    CHECK(is_kirchhoff_critical(3, 14.0 / 3));
    CHECK(is_kirchhoff_critical(1, 10));
    CHECK_FALSE(is_kirchhoff_critical(3, 4.67));
  }

  TEST_CASE("admissibility names the offending parameter") {
    CHECK(rejected_parameter({1, 1, 1, 3, 3}) == "p");         // p <= 2 + 4/N
    CHECK(rejected_parameter({1, 1, 1, 3, 6}) == "p");         // p >= 2*
    CHECK(rejected_parameter({1, 1, 1, 4, 4}) == "p");         // N = 4 outside the two-branch range
    CHECK(rejected_parameter({1, 1, 1, 5, 2.5}) == "N");
    CHECK(rejected_parameter({0, 1, 1, 3, 5}) == "a");
    CHECK(rejected_parameter({1, -1, 1, 3, 5}) == "b");
    CHECK(rejected_parameter({1, 1, 0, 3, 5}) == "c");
    CHECK(rejected_parameter({1, 1, NAN, 3, 5}) == "c");
    CHECK(rejected_parameter({1, 0, 1, 3, 5}).empty());
    CHECK(rejected_parameter({1, 1, 1, 4, 3.6}).empty());
  }

  TEST_CASE("derived exponents follow their definitions") {
    const auto e = derived_exponents(3, 5);
    CHECK(e.theta == doctest::Approx(5));
    CHECK(e.eta == doctest::Approx(-1));
    CHECK(e.zeta == doctest::Approx(1));
    CHECK(e.q == doctest::Approx(0.4));
    CHECK(derived_exponents(1, 8).q == doctest::Approx(10));
    CHECK(derived_exponents(2, 6).q == doctest::Approx(2));
    for (auto [N, p] : {std::pair{1, 7.5}, {2, 5.0}, {3, 4.2}, {3, 5.5}}) {
      const auto d = derived_exponents(N, p);
      CHECK(d.q * d.theta == doctest::Approx(2 * d.zeta));
      CHECK(d.theta + d.eta == doctest::Approx(4));
    }
  }

  TEST_CASE("c0 closed form") {
    const double q = qp_l2_norm(3, 14.0 / 3);
    const double expected = std::pow(0.5, 3.0 / 2) * std::pow(q, 4.0);
    CHECK(threshold_c0(1, 3) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(threshold_c0(4, 3) / threshold_c0(1, 3) == doctest::Approx(8).epsilon(1e-12));
    CHECK_THROWS_AS(threshold_c0(1, 4), InadmissibleError);
  }

  TEST_CASE("c1 closed form and scaling") {
    // N = 3, p = 4 reduces to c1 = (4/3) ||Q_4||^2 sqrt(ab)
    const double q2 = qp_profile(3, 4)->l2sq;
    CHECK(threshold_c1(1, 1, 3, 4) == doctest::Approx(4.0 / 3 * q2).epsilon(1e-12));
    CHECK(threshold_c1(1, 4, 3, 4) / threshold_c1(1, 1, 3, 4) == doctest::Approx(2).epsilon(1e-12));
    CHECK(threshold_c1(9, 1, 3, 4) / threshold_c1(1, 1, 3, 4) == doctest::Approx(3).epsilon(1e-12));
    CHECK_THROWS_AS(threshold_c1(1, 1, 3, 5), InadmissibleError);
  }

  TEST_CASE("scaling degree") {
    CHECK(scaling_degree(3, 5) == doctest::Approx(9));
    CHECK(scaling_degree(3, 14.0 / 3) == 8);
  }
}
