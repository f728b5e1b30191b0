#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>

#include "plap/potential.hpp"

using namespace plap;

TEST_CASE("constant potential") {
  auto v = PotentialSpec::constant(0.7);
  CHECK(v.eval_radial(0.0) == doctest::Approx(0.7));
  CHECK(v.eval_radial(13.0) == doctest::Approx(0.7));
}

TEST_CASE("bump potential shape") {
  auto v = PotentialSpec::bump();
  CHECK(v.eval_radial(0.0) == doctest::Approx(-0.5).epsilon(1e-14));
  CHECK(v.eval_radial(1.0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(v.eval_radial(5.0) == doctest::Approx(0.5).epsilon(1e-14));
  // strictly increasing in r inside the unit ball
  double prev = v.eval_radial(0.0);
  for (int k = 1; k <= 10; ++k) {
    double cur = v.eval_radial(0.099 * k);
    CHECK(cur > prev);
    prev = cur;
  }
}

TEST_CASE("radial well and power tail") {
  auto w = PotentialSpec::radial_well(-1.0, 1.0, 1.0);
  CHECK(w.eval_radial(0.5) == doctest::Approx(-1.0));
  CHECK(w.eval_radial(1.0) == doctest::Approx(1.0));
  CHECK(w.eval_radial(7.0) == doctest::Approx(1.0));

  auto t = PotentialSpec::power_tail(0.5, -1.0, 2.0);
  CHECK(t.eval_radial(0.0) == doctest::Approx(-0.5));
  CHECK(t.eval_radial(9.0) == doctest::Approx(0.5 - 1.0 / 100.0));
}

TEST_CASE("amplitude and dilation compose") {
  auto v = PotentialSpec::bump().scaled(2.0);
  CHECK(v.eval_radial(0.0) == doctest::Approx(-1.0).epsilon(1e-14));
  auto d = PotentialSpec::bump().dilated(2.0);
  CHECK(d.eval_radial(0.5) == doctest::Approx(0.5).epsilon(1e-14));  // base at 1
  auto both = PotentialSpec::radial_well(-1.0, 1.0, 0.0).scaled(3.0).dilated(4.0);
  CHECK(both.eval_radial(0.1) == doctest::Approx(-3.0));  // base at 0.4 < 1
  CHECK(both.eval_radial(0.5) == doctest::Approx(0.0));   // base at 2 >= 1
}

TEST_CASE("sampling on grids uses |x|") {
  auto g = build_grid(DomainSpec::interval(-1.0, 1.0), 16);
  auto v = PotentialSpec::power_tail(0.0, 1.0, 1.0);
  Field f = sample(v, g);
  for (std::size_t j = 0; j < g->size(); ++j)
    CHECK(f[j] == doctest::Approx(1.0 / (1.0 + std::abs(g->nodes[j][0])))
                      .epsilon(1e-14));
}

TEST_CASE("tabulated potential") {
  auto g = build_grid(DomainSpec::interval(0.0, 1.0), 8);
  std::vector<double> coords, values;
  for (std::size_t j = 0; j < g->size(); ++j) {
    coords.push_back(g->radial(static_cast<int>(j)));
    values.push_back(std::sin(double(j)));
  }
  auto v = PotentialSpec::tabulated(coords, values);
  Field f = sample(v, g);
  for (std::size_t j = 0; j < g->size(); ++j)
    CHECK(f[j] == doctest::Approx(values[j]).epsilon(1e-15));

  auto finer = build_grid(DomainSpec::interval(0.0, 1.0), 16);
  CHECK_THROWS(sample(v, finer));
}

TEST_CASE("tabulated potential from csv") {
  auto g = build_grid(DomainSpec::interval(0.0, 1.0), 8);
  const char* path = "potential_roundtrip.csv";
  {
    std::ofstream f(path);
    f << "# r, V\n";
    for (std::size_t j = 0; j < g->size(); ++j)
      f << g->nodes[j][0] << "," << 1.5 + double(j) << "\n";
  }
  auto v = PotentialSpec::from_csv(path);
  CHECK(v.kind == PotentialKind::tabulated);
  Field f = sample(v, g);
  for (std::size_t j = 0; j < g->size(); ++j)
    CHECK(f[j] == doctest::Approx(1.5 + double(j)).epsilon(1e-12));
  CHECK_THROWS(PotentialSpec::from_csv("no_such_file.csv"));
  std::remove(path);
}

TEST_CASE("sampled bounds of the bump") {
  auto b = bounds(PotentialSpec::bump(), 16.0, 2048);
  CHECK(b.inf_est == doctest::Approx(-0.5).epsilon(1e-3));
  CHECK(b.sup_est == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(b.liminf_inf_est == doctest::Approx(0.5).epsilon(1e-12));
}
