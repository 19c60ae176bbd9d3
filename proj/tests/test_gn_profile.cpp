#include "kirchhoff/gn_profile.hpp"
#include "kirchhoff/regimes.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace kirchhoff;

namespace {

// ((p/2) sech²((p−2)x/2))^{1/(p−2)}
double sech_soliton(double p, double x) {
  const double s = 1.0 / std::cosh((p - 2) * x / 2);
  return std::pow(p / 2 * s * s, 1.0 / (p - 2));
}

}  // namespace

TEST_SUITE("gn_profile") {
  TEST_CASE("closed-form 1D soliton") {
    for (double p : {4.0, 6.0, 9.0})
      for (double x : {0.0, 0.3, 1.7, 6.0}) CHECK(soliton_1d(p, x) == doctest::Approx(sech_soliton(p, x)).epsilon(1e-14));
  }

  TEST_CASE("1D shooting reproduces the soliton") {
    ShootingConfig cfg;
    cfg.rMax = 12;
    for (double p : {4.0, 7.0}) {
      const RadialField W = shoot_ground_state(1, p, cfg);
      double err = 0;
      for (Eigen::Index i = 0; i < W.size(); ++i) err = std::max(err, std::abs(W.values[i] - sech_soliton(p, W.nodes[i])));
      CHECK(err < 1e-8);
    }
  }

  TEST_CASE("3D cubic ground state height") {
    // the standard value W(0) = 4.3373876...
    const RadialField W = standard_ground_state(3, 4);
    CHECK(W.values[0] > 4.3);
    CHECK(W.values[0] < 4.4);
    CHECK(W.values[0] == doctest::Approx(4.33738768).epsilon(1e-7));
    CHECK((W.values.tail(W.size() - 1).array() <= W.values.head(W.size() - 1).array()).all());
  }

  TEST_CASE("GN identities hold for Q_p") {
    for (auto [N, p] : {std::pair{1, 7.0}, {2, 4.5}, {2, 7.0}, {3, 4.3}}) {
      const auto qp = qp_profile(N, p);
      CHECK(qp->gradl2sq == doctest::Approx(qp->l2sq).epsilon(1e-7));
      CHECK(2.0 / p * qp->lpp == doctest::Approx(qp->l2sq).epsilon(1e-7));
      CHECK(qp->l2norm() == doctest::Approx(std::sqrt(qp->l2sq)).epsilon(1e-15));
    }
  }

  TEST_CASE("Q_p attains the GN constant and a Gaussian does not exceed it") {
    const int N = 3;
    const double p = 4.5;
    const auto qp = qp_profile(N, p);
    const double C = gn_best_constant(*qp);
    CHECK(gn_rhs(C, N, p, qp->l2sq, qp->gradl2sq) == doctest::Approx(std::pow(qp->lpp, 1 / p)).epsilon(1e-7));
    for (double w : {0.3, 1.0, 4.0}) {
      const auto g = sample_field<double>(N, 12 * w, 4096, [w](double r) { return std::exp(-r * r / (w * w)); });
      const auto n = norms(g, p);
      CHECK(std::pow(n.lpp, 1 / p) < gn_rhs(C, N, p, n.l2sq, n.gradl2sq));
    }
  }

  TEST_CASE("1D mass of the sixth-power soliton") {
    const RadialField W = standard_ground_state(1, 6);
    const auto n = norms(W, 6.0);
    CHECK(n.l2sq == doctest::Approx(std::sqrt(3.0) * std::numbers::pi / 2).epsilon(1e-10));
  }

  TEST_CASE("profile cache is shared") {
    const auto a = qp_profile(2, 5);
    const auto b = qp_profile(2, 5);
    CHECK(a.get() == b.get());
  }

  TEST_CASE("shooting input validation") {
    ShootingConfig cfg;
    cfg.intervals = 101;
    CHECK_THROWS(shoot_ground_state(3, 4, cfg));
    CHECK_THROWS_AS(shoot_ground_state(3, 7), InadmissibleError);
  }
}
