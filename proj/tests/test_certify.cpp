#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "plap/certify.hpp"
#include "plap/eigensolve.hpp"
#include "plap/potential.hpp"
#include "plap/weak_forms.hpp"

using namespace plap;

TEST_CASE("exponential barrier values and shape") {
  auto g = build_grid(DomainSpec::radial_ball(2, 8.0), 256);
  ExpBarrier b = barrier_exp(0.5, 0.5, g);
  const double e = std::exp(1.0);
  CHECK(b.psi[0] ==
        doctest::Approx(std::pow(e + 1.0 / e, -0.5)).epsilon(1e-14));
  for (std::size_t j = 1; j < g->size(); ++j)
    CHECK(b.psi[j] < b.psi[j - 1]);
  CHECK_THROWS_AS(barrier_exp(-1.0, 0.5, g), std::invalid_argument);
  CHECK_THROWS_AS(
      barrier_exp(0.5, 0.5, build_grid(DomainSpec::interval(0.0, 1.0), 16)),
      std::invalid_argument);
}

TEST_CASE("closed form dominates the discrete barrier action away from 0") {
  // the analytic bound on -Lap_p psi drops a (N-1)/r transport term, so it
  // only holds once r is large enough for that term to be paid for; compare
  // hats against it on r >= 3 where the inequality carries real margin
  auto g = build_grid(DomainSpec::radial_ball(2, 8.0), 256);
  ExpBarrier b = barrier_exp(0.5, 0.5, g);
  Field V0(g, 0.0);
  const auto hats = operator_action_hats(b.psi, V0, 2.0);
  int tested = 0;
  for (std::size_t k = 0; k < g->interior_idx.size(); ++k) {
    const int j = g->interior_idx[k];
    const double r = g->radial(j);
    if (r < 3.0) continue;
    const double w = g->quad_weights[j];
    CHECK(hats[k] <= w * (b.closed_form_bound(2.0, r) + 1e-3));
    ++tested;
  }
  CHECK(tested > 100);
}

TEST_CASE("matched barrier values and smooth-region action signs") {
  auto g = build_grid(DomainSpec::radial_ball(3, 2.0), 64);
  const double h = g->h;
  Field psi = barrier_matched(3, 2.0, g);
  CHECK(psi[0] == doctest::Approx(1.0));
  CHECK(psi[32] == doctest::Approx(1.0));  // r = 1
  CHECK(psi[64] == doctest::Approx(std::exp(-2.0)).epsilon(1e-13));
  Field psi3 = barrier_matched(3, 3.0, g);
  CHECK(psi3[64] == doctest::Approx(std::exp(-1.0)).epsilon(1e-13));

  Field V0(g, 0.0);
  const auto hats = operator_action_hats(psi, V0, 2.0);
  for (std::size_t k = 0; k < g->interior_idx.size(); ++k) {
    const int j = g->interior_idx[k];
    const double r = g->radial(j);
    if (r <= 1.0 - 2 * h) {
      CHECK(std::abs(hats[k]) <= 1e-15);  // flat region, exact zero
    } else if (r >= 1.0 + 2 * h) {
      CHECK(hats[k] <= 1e-9);  // Lap_p psi >= 0 outside the unit ball
    }
  }
  CHECK_THROWS_AS(barrier_matched(0, 2.0, g), std::invalid_argument);
  CHECK_THROWS_AS(
      barrier_matched(3, 2.0, build_grid(DomainSpec::radial_ball(3, 0.5), 16)),
      std::invalid_argument);
}

TEST_CASE("decay comparison barrier dominates at the annulus ends") {
  auto g = build_grid(DomainSpec::radial_ball(2, 12.0), 96);
  const double R = 4.0, rho = 2.0, omega = 1.0, tau = 0.5;
  Field w = barrier_decay(R, rho, omega, tau, g);
  const double a = std::exp((R + rho) * (tau - omega));
  const double b = std::exp(R * (tau + omega));
  for (int j : {0, 16, 32, 48, 96}) {
    const double r = g->radial(j);
    CHECK(w[j] == doctest::Approx(a * std::exp(omega * r) +
                                  b * std::exp(-omega * r))
                      .epsilon(1e-13));
  }
  CHECK(w[32] >= std::exp(tau * R));        // node r = 4
  CHECK(w[48] >= std::exp(tau * (R + rho)));  // node r = 6
  CHECK_THROWS_AS(barrier_decay(R, rho, 0.5, 0.7, g), std::invalid_argument);
}

TEST_CASE("eigenfunction witnesses give a sandwich") {
  auto g = build_grid(DomainSpec::interval(0.0, 1.0), 64);
  Field V = sample(PotentialSpec::constant(0.2), g);
  SolverConfig c;
  c.tol_lambda = 1e-12;
  c.tol_residual = 1e-10;
  c.max_iter = 200000;
  EigenPair e = principal_eig(g, V, c);

  Certificate lo = certify_lower(e.phi, e.lambda - 1e-6, V, 2.0, 1.0, "phi");
  CHECK(lo.valid);
  CHECK(lo.direction == Certificate::Direction::lower);
  CHECK(lo.bound == doctest::Approx(e.lambda - 1e-6));
  CHECK(lo.margin >= -1e-10);

  Certificate hi = certify_upper(e.phi, V, 2.0, "phi");
  CHECK(hi.valid);
  CHECK(hi.direction == Certificate::Direction::upper);
  CHECK(hi.bound == doctest::Approx(e.lambda).epsilon(1e-11));
  CHECK(lo.bound <= hi.bound + 1e-9);

  // a level above the eigenvalue cannot be certified from below
  Certificate bad = certify_lower(e.phi, e.lambda + 0.1, V, 2.0, 1.0, "phi");
  CHECK_FALSE(bad.valid);
  CHECK(bad.margin < 0.0);
}

TEST_CASE("certificate witnesses are validated") {
  auto g = build_grid(DomainSpec::interval(0.0, 1.0), 16);
  Field V = sample(PotentialSpec::constant(0.0), g);
  Field zero(g, 0.0);
  CHECK_THROWS_AS(certify_lower(zero, 0.0, V, 2.0), std::invalid_argument);
  Field ones(g, 1.0);
  CHECK_THROWS_AS(certify_upper(ones, V, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(certify_upper(zero, V, 2.0), std::invalid_argument);
}

TEST_CASE("large-diffusion barrier certificate") {
  const auto bump = PotentialSpec::bump();
  Certificate good = lim1_certificate(bump, 2.0, 1e3, 0.05, 16.0, 16, 2);
  CHECK(good.valid);
  CHECK(good.bound == doctest::Approx(0.4).epsilon(1e-6));
  CHECK(good.witness_id.find("exp_barrier") == 0);

  Certificate bad = lim1_certificate(bump, 2.0, 1e-2, 0.05, 16.0, 16, 2);
  CHECK_FALSE(bad.valid);

  CHECK_THROWS_AS(lim1_certificate(bump, 2.0, -1.0, 0.05, 16.0, 16, 2),
                  std::invalid_argument);
  CHECK_THROWS_AS(lim1_certificate(bump, 2.0, 1e3, 0.0, 16.0, 16, 2),
                  std::invalid_argument);
}
