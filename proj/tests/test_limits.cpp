#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "plap/limits.hpp"
#include "plap/potential.hpp"

using namespace plap;

namespace {
SolverConfig tight() {
  SolverConfig c;
  c.tol_lambda = 1e-13;
  c.tol_residual = 1e-10;
  c.max_iter = 200000;
  return c;
}
}  // namespace

TEST_CASE("find_threshold bisects to the root") {
  auto f = [](double a) { return a * a - 2.0; };
  const double r = find_threshold(f, 0.0, 3.0, 1e-10);
  CHECK(r == doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));
}

TEST_CASE("find_threshold validates its bracket") {
  auto f = [](double a) { return a - 1.0; };
  CHECK_THROWS_AS(find_threshold(f, 2.0, 3.0, 1e-6), std::invalid_argument);
  CHECK_THROWS_AS(find_threshold(f, 3.0, 2.0, 1e-6), std::invalid_argument);
  CHECK_THROWS_AS(find_threshold(f, 0.0, 3.0, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(find_threshold(f, -3.0, 0.5, 0.0), std::invalid_argument);
}

TEST_CASE("eval domain factories") {
  EvalDomain fd = EvalDomain::fixed_domain(DomainSpec::interval(0.0, 1.0), 32);
  CHECK(fd.fixed.has_value());
  CHECK(fd.n_fixed == 32);
  CHECK(fd.schedule.empty());
  EvalDomain ex = EvalDomain::exhaustion(exhaustion_schedule(1, 2.0, 2.0, 3), 16);
  CHECK_FALSE(ex.fixed.has_value());
  CHECK(ex.schedule.size() == 3);
  CHECK(ex.n_per_unit == 16);
}

TEST_CASE("lambda_on a fixed grid equals the direct solve") {
  auto d = DomainSpec::interval(0.0, 1.0);
  auto g = build_grid(d, 32);
  Field V = sample(PotentialSpec::constant(0.3), g);
  const double direct = principal_eig(g, V, tight()).lambda;
  const double via = lambda_on(PotentialSpec::constant(0.3), 2.0,
                               EvalDomain::fixed_domain(d, 32), tight());
  CHECK(via == doctest::Approx(direct).epsilon(1e-11));
}

TEST_CASE("diffusion sweep equals direct alpha-weighted assembly") {
  auto d = DomainSpec::interval(0.0, 1.0);
  auto g = build_grid(d, 32);
  const PotentialSpec spec = PotentialSpec::constant(0.3);
  Field V = sample(spec, g);
  const std::vector<double> alphas{0.5, 1.0, 2.0};
  SweepTable t = diffusion_sweep(spec, 2.0, alphas,
                                 EvalDomain::fixed_domain(d, 32), tight());
  REQUIRE(t.lambdas.size() == alphas.size());
  CHECK(t.kind == SweepKind::diffusion);
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    SolverConfig c = tight();
    c.diffusion = alphas[i];
    const double direct = principal_eig(g, V, c).lambda;
    CHECK(std::abs(t.lambdas[i] - direct) <=
          1e-11 * std::max(1.0, std::abs(direct)));
  }
}

TEST_CASE("diffusion sweep on a constant potential is affine in alpha") {
  auto d = DomainSpec::interval(0.0, 1.0);
  auto g = build_grid(d, 32);
  const double l1 =
      principal_eig(g, sample(PotentialSpec::constant(0.0), g), tight()).lambda;
  SweepTable t =
      diffusion_sweep(PotentialSpec::constant(0.3), 2.0, {0.5, 1.0, 2.0},
                      EvalDomain::fixed_domain(d, 32), tight());
  for (std::size_t i = 0; i < t.alphas.size(); ++i)
    CHECK(t.lambdas[i] ==
          doctest::Approx(t.alphas[i] * l1 + 0.3).epsilon(1e-9));
}

TEST_CASE("amplitude sweep tabulates toward inf V and sup V") {
  auto d = DomainSpec::interval(0.0, 1.0);
  auto g = build_grid(d, 32);
  const double l1 =
      principal_eig(g, sample(PotentialSpec::constant(0.0), g), tight()).lambda;
  const std::vector<double> alphas{4.0, 16.0};
  SweepTable pos = amplitude_sweep(PotentialSpec::constant(1.0), 2.0, +1,
                                   alphas, EvalDomain::fixed_domain(d, 32),
                                   tight());
  SweepTable neg = amplitude_sweep(PotentialSpec::constant(1.0), 2.0, -1,
                                   alphas, EvalDomain::fixed_domain(d, 32),
                                   tight());
  CHECK(pos.kind == SweepKind::amplitude_pos);
  CHECK(neg.kind == SweepKind::amplitude_neg);
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    CHECK(pos.lambdas[i] ==
          doctest::Approx(l1 / alphas[i] + 1.0).epsilon(1e-9));
    CHECK(neg.lambdas[i] ==
          doctest::Approx(1.0 - l1 / alphas[i]).epsilon(1e-9));
  }
  CHECK_THROWS_AS(amplitude_sweep(PotentialSpec::constant(1.0), 2.0, 0, alphas,
                                  EvalDomain::fixed_domain(d, 32), tight()),
                  std::invalid_argument);
}

TEST_CASE("dilation leaves constant potentials alone") {
  auto d = DomainSpec::interval(0.0, 1.0);
  SweepTable t = dilation_sweep(PotentialSpec::constant(0.4), 2.0, {0.25, 4.0},
                                EvalDomain::fixed_domain(d, 32), tight());
  CHECK(t.lambdas[0] == doctest::Approx(t.lambdas[1]).epsilon(1e-10));
}

TEST_CASE("sweeps validate alphas") {
  auto base = EvalDomain::fixed_domain(DomainSpec::interval(0.0, 1.0), 32);
  CHECK_THROWS_AS(
      diffusion_sweep(PotentialSpec::constant(0.0), 2.0, {}, base, tight()),
      std::invalid_argument);
  CHECK_THROWS_AS(diffusion_sweep(PotentialSpec::constant(0.0), 2.0, {-1.0},
                                  base, tight()),
                  std::invalid_argument);
}

TEST_CASE("exhaustion run on a well potential") {
  SolverConfig c;
  c.tol_lambda = 1e-11;
  c.tol_residual = 1e-8;
  c.max_iter = 200000;
  auto schedule = exhaustion_schedule(1, 2.0, 2.0, 3);
  ExhaustionReport rep = lambda_unbounded(
      PotentialSpec::radial_well(-1.0, 1.0, 1.0), 2.0, schedule, 32, c);
  REQUIRE(rep.radii.size() == 3);
  CHECK(rep.radii[0] == doctest::Approx(2.0));
  CHECK(rep.radii[2] == doctest::Approx(8.0));
  CHECK(rep.monotone);
  REQUIRE(rep.diffs.size() == 2);
  for (double dfs : rep.diffs) CHECK(dfs > -1e-9);
  CHECK(rep.lambda_inf <= rep.lambdas.back() + 1e-9);
}
