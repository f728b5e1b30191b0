#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>

#include "plap/grid.hpp"

using namespace plap;

namespace {
constexpr double pi = 3.14159265358979323846;

double weight_sum(const Grid& g) {
  return std::accumulate(g.quad_weights.begin(), g.quad_weights.end(), 0.0);
}

double cell_measure_sum(const Grid& g) {
  double s = 0.0;
  for (const auto& c : g.cells) s += c.measure;
  return s;
}
}  // namespace

TEST_CASE("interval grid geometry") {
  auto g = build_grid(DomainSpec::interval(-1.0, 2.0), 16);
  CHECK(g->size() == 17);
  CHECK(g->h == doctest::Approx(3.0 / 16).epsilon(1e-15));
  CHECK(weight_sum(*g) == doctest::Approx(3.0).epsilon(1e-13));
  CHECK(cell_measure_sum(*g) == doctest::Approx(3.0).epsilon(1e-13));
  CHECK(g->boundary_idx.size() == 2);
  CHECK(g->interior_idx.size() == 15);
  for (double w : g->quad_weights) CHECK(w > 0.0);
  CHECK(g->radial(0) == doctest::Approx(1.0));   // |x| at x = -1
  CHECK(g->radial(16) == doctest::Approx(2.0));
}

TEST_CASE("radial ball grid geometry") {
  auto g = build_grid(DomainSpec::radial_ball(2, 1.5), 12);
  CHECK(g->size() == 13);
  CHECK(weight_sum(*g) == doctest::Approx(pi * 1.5 * 1.5).epsilon(1e-12));
  CHECK(cell_measure_sum(*g) == doctest::Approx(pi * 1.5 * 1.5).epsilon(1e-12));
  // only the outer rim is Dirichlet boundary; the origin is interior
  CHECK(g->boundary_idx.size() == 1);
  CHECK(g->boundary_idx[0] == 12);
  CHECK_FALSE(g->is_boundary[0]);
  for (std::size_t j = 0; j < g->size(); ++j)
    CHECK(g->radial(static_cast<int>(j)) ==
          doctest::Approx(1.5 * double(j) / 12).epsilon(1e-14));
}

TEST_CASE("box grid geometry") {
  auto g = build_grid(DomainSpec::box2(0.0, 1.0, 0.0, 1.3), 8);
  CHECK(g->size() == 81);
  CHECK(g->h == doctest::Approx(1.0 / 8));
  CHECK(g->hy == doctest::Approx(1.3 / 8));
  CHECK(weight_sum(*g) == doctest::Approx(1.3).epsilon(1e-12));
  CHECK(cell_measure_sum(*g) == doctest::Approx(1.3).epsilon(1e-12));
  CHECK(g->boundary_idx.size() == 4 * 8);
  CHECK(g->interior_idx.size() == 49);
  for (const auto& c : g->cells) CHECK(c.comps == 2);
}

TEST_CASE("refine halves the spacing") {
  auto g = build_grid(DomainSpec::interval(0.0, 1.0), 8);
  auto f = refine(*g);
  CHECK(f->n == 16);
  CHECK(f->h == doctest::Approx(g->h / 2));
  CHECK(f->domain == g->domain);
}

TEST_CASE("exhaustion schedule") {
  auto s = exhaustion_schedule(2, 2.0, 2.0, 3);
  REQUIRE(s.size() == 3);
  for (const auto& d : s) {
    CHECK(d.kind == DomainKind::radial_ball);
    CHECK(d.dim == 2);
  }
  CHECK(s[0].radius == doctest::Approx(2.0));
  CHECK(s[1].radius == doctest::Approx(4.0));
  CHECK(s[2].radius == doctest::Approx(8.0));
  CHECK_THROWS_AS(exhaustion_schedule(2, 2.0, 1.0, 3), std::invalid_argument);
  CHECK_THROWS_AS(exhaustion_schedule(2, 2.0, 2.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(exhaustion_schedule(2, -1.0, 2.0, 3), std::invalid_argument);
}

TEST_CASE("grid validation") {
  CHECK_THROWS_AS(build_grid(DomainSpec::interval(0.0, 1.0), 4),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_grid(DomainSpec::interval(1.0, 0.0), 16),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_grid(DomainSpec::radial_ball(0, 1.0), 16),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_grid(DomainSpec::radial_ball(2, -1.0), 16),
                  std::invalid_argument);
}

TEST_CASE("sphere surface measures") {
  CHECK(sphere_surface(1) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(sphere_surface(2) == doctest::Approx(2 * pi).epsilon(1e-14));
  CHECK(sphere_surface(3) == doctest::Approx(4 * pi).epsilon(1e-14));
}

TEST_CASE("domain measure") {
  CHECK(DomainSpec::interval(-1.0, 2.0).measure() == doctest::Approx(3.0));
  CHECK(DomainSpec::radial_ball(3, 2.0).measure() ==
        doctest::Approx(4.0 / 3.0 * pi * 8.0).epsilon(1e-13));
  CHECK(DomainSpec::box2(0.0, 2.0, 0.0, 0.5).measure() == doctest::Approx(1.0));
}
