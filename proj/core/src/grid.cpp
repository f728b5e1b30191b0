#include "plap/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace plap {

DomainSpec DomainSpec::interval(double a, double b) {
  DomainSpec d;
  d.kind = DomainKind::interval;
  d.a = a;
  d.b = b;
  d.validate();
  return d;
}

DomainSpec DomainSpec::radial_ball(int dim, double radius) {
  DomainSpec d;
  d.kind = DomainKind::radial_ball;
  d.dim = dim;
  d.radius = radius;
  d.validate();
  return d;
}

DomainSpec DomainSpec::box2(double ax, double bx, double ay, double by) {
  DomainSpec d;
  d.kind = DomainKind::box2;
  d.ax = ax;
  d.bx = bx;
  d.ay = ay;
  d.by = by;
  d.validate();
  return d;
}

void DomainSpec::validate() const {
  switch (kind) {
    case DomainKind::interval:
      if (!(b > a)) throw std::invalid_argument("interval requires b > a");
      break;
    case DomainKind::radial_ball:
      if (dim < 1) throw std::invalid_argument("radial_ball requires dim >= 1");
      if (!(radius > 0.0))
        throw std::invalid_argument("radial_ball requires radius > 0");
      break;
    case DomainKind::box2:
      if (!(bx > ax) || !(by > ay))
        throw std::invalid_argument("box2 requires bx > ax and by > ay");
      break;
  }
}

double sphere_surface(int dim) {
  // 2 pi^{d/2} / Gamma(d/2); d = 1 gives 2 (two-sided half-line weight).
  return 2.0 * std::pow(M_PI, 0.5 * dim) / std::tgamma(0.5 * dim);
}

double DomainSpec::measure() const {
  switch (kind) {
    case DomainKind::interval:
      return b - a;
    case DomainKind::radial_ball:
      return sphere_surface(dim) / dim * std::pow(radius, dim);
    case DomainKind::box2:
      return (bx - ax) * (by - ay);
  }
  return 0.0;
}

double Grid::radial(int i) const {
  const auto& p = nodes[static_cast<std::size_t>(i)];
  if (domain.kind == DomainKind::box2) return std::hypot(p[0], p[1]);
  return std::abs(p[0]);
}

namespace {

void build_interval(Grid& g) {
  const double a = g.domain.a, b = g.domain.b;
  const int n = g.n;
  g.h = (b - a) / n;
  g.nodes.resize(n + 1);
  g.quad_weights.assign(n + 1, g.h);
  g.quad_weights.front() = 0.5 * g.h;
  g.quad_weights.back() = 0.5 * g.h;
  g.is_boundary.assign(n + 1, 0);
  g.is_boundary.front() = 1;
  g.is_boundary.back() = 1;
  for (int i = 0; i <= n; ++i) g.nodes[i] = {a + i * g.h, 0.0};
  g.cells.resize(n);
  for (int i = 0; i < n; ++i) {
    CellGrad c;
    c.measure = g.h;
    c.comps = 1;
    c.terms[0] = 2;
    c.idx[0] = {i, i + 1, 0, 0};
    c.w[0] = {-1.0 / g.h, 1.0 / g.h, 0.0, 0.0};
    g.cells[i] = c;
  }
}

void build_radial(Grid& g) {
  const int n = g.n, N = g.domain.dim;
  const double R = g.domain.radius;
  const double sigma = sphere_surface(N);
  g.h = R / n;
  g.nodes.resize(n + 1);
  g.quad_weights.resize(n + 1);
  g.is_boundary.assign(n + 1, 0);
  g.is_boundary.back() = 1;  // r = 0 stays interior (symmetry node)
  auto ball = [&](double r) {
    return sigma / N * std::pow(std::max(r, 0.0), N);
  };
  for (int i = 0; i <= n; ++i) {
    const double r = i * g.h;
    g.nodes[i] = {r, 0.0};
    const double lo = std::max(r - 0.5 * g.h, 0.0);
    const double hi = std::min(r + 0.5 * g.h, R);
    g.quad_weights[i] = ball(hi) - ball(lo);
  }
  g.cells.resize(n);
  for (int i = 0; i < n; ++i) {
    CellGrad c;
    c.measure = ball((i + 1) * g.h) - ball(i * g.h);  // exact shell measure
    c.comps = 1;
    c.terms[0] = 2;
    c.idx[0] = {i, i + 1, 0, 0};
    c.w[0] = {-1.0 / g.h, 1.0 / g.h, 0.0, 0.0};
    g.cells[i] = c;
  }
}

void build_box2(Grid& g) {
  const int n = g.n;
  const int m = n + 1;
  g.h = (g.domain.bx - g.domain.ax) / n;
  g.hy = (g.domain.by - g.domain.ay) / n;
  g.nodes.resize(static_cast<std::size_t>(m) * m);
  g.quad_weights.resize(g.nodes.size());
  g.is_boundary.assign(g.nodes.size(), 0);
  auto id = [m](int i, int j) { return j * m + i; };
  for (int j = 0; j < m; ++j) {
    const double wy = (j == 0 || j == n) ? 0.5 * g.hy : g.hy;
    for (int i = 0; i < m; ++i) {
      const double wx = (i == 0 || i == n) ? 0.5 * g.h : g.h;
      g.nodes[id(i, j)] = {g.domain.ax + i * g.h, g.domain.ay + j * g.hy};
      g.quad_weights[id(i, j)] = wx * wy;
      if (i == 0 || i == n || j == 0 || j == n) g.is_boundary[id(i, j)] = 1;
    }
  }
  g.cells.resize(static_cast<std::size_t>(n) * n);
  // Cell-midpoint gradient: each component averages the two parallel edge
  // differences of the cell.
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      CellGrad c;
      c.measure = g.h * g.hy;
      c.comps = 2;
      c.terms = {4, 4};
      const int p00 = id(i, j), p10 = id(i + 1, j);
      const int p01 = id(i, j + 1), p11 = id(i + 1, j + 1);
      c.idx[0] = {p00, p10, p01, p11};
      c.w[0] = {-0.5 / g.h, 0.5 / g.h, -0.5 / g.h, 0.5 / g.h};
      c.idx[1] = {p00, p01, p10, p11};
      c.w[1] = {-0.5 / g.hy, 0.5 / g.hy, -0.5 / g.hy, 0.5 / g.hy};
      g.cells[static_cast<std::size_t>(j) * n + i] = c;
    }
  }
}

void finish(Grid& g) {
  g.interior_idx.clear();
  g.boundary_idx.clear();
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g.is_boundary[i])
      g.boundary_idx.push_back(static_cast<int>(i));
    else
      g.interior_idx.push_back(static_cast<int>(i));
  }
}

}  // namespace

GridPtr build_grid(const DomainSpec& spec, int n) {
  spec.validate();
  if (n < 8)
    throw std::invalid_argument("build_grid requires n >= 8, got " +
                                std::to_string(n));
  auto g = std::make_shared<Grid>();
  g->domain = spec;
  g->n = n;
  switch (spec.kind) {
    case DomainKind::interval:
      build_interval(*g);
      break;
    case DomainKind::radial_ball:
      build_radial(*g);
      break;
    case DomainKind::box2:
      build_box2(*g);
      break;
  }
  finish(*g);
  return g;
}

GridPtr refine(const Grid& g) { return build_grid(g.domain, 2 * g.n); }

std::vector<DomainSpec> exhaustion_schedule(int dim, double r0, double factor,
                                            int count) {
  if (!(r0 > 0.0)) throw std::invalid_argument("exhaustion requires r0 > 0");
  if (!(factor > 1.0))
    throw std::invalid_argument("exhaustion requires factor > 1");
  if (count < 2) throw std::invalid_argument("exhaustion requires count >= 2");
  std::vector<DomainSpec> out;
  double r = r0;
  for (int k = 0; k < count; ++k) {
    out.push_back(DomainSpec::radial_ball(dim, r));
    r *= factor;
  }
  return out;
}

}  // namespace plap
