#pragma once

#include <array>
#include <memory>
#include <vector>

namespace plap {

enum class DomainKind { interval, radial_ball, box2 };

/// Geometry description. Radial balls are handled through their radial
/// profile on [0, R] with the surface measure of the N-sphere folded into
/// the quadrature weights.
struct DomainSpec {
  DomainKind kind = DomainKind::interval;
  double a = 0.0, b = 0.0;                     // interval
  int dim = 1;                                 // radial_ball
  double radius = 0.0;                         // radial_ball
  double ax = 0.0, bx = 0.0, ay = 0.0, by = 0.0;  // box2

  static DomainSpec interval(double a, double b);
  static DomainSpec radial_ball(int dim, double radius);
  static DomainSpec box2(double ax, double bx, double ay, double by);

  /// Lebesgue measure of the domain (ball volume for radial_ball).
  double measure() const;
  /// Throws std::invalid_argument on degenerate geometry.
  void validate() const;
  bool operator==(const DomainSpec&) const = default;
};

/// One quadrature cell for the gradient part of the energy: the discrete
/// gradient at the cell midpoint is a fixed linear combination of nodal
/// values per component, and the cell carries its exact weighted measure.
struct CellGrad {
  double measure = 0.0;
  int comps = 1;                    // spatial components of the gradient
  std::array<int, 2> terms{};       // nodes entering each component
  std::array<std::array<int, 4>, 2> idx{};
  std::array<std::array<double, 4>, 2> w{};
};

/// Uniform tensor grid. Immutable after construction; share via GridPtr.
class Grid {
 public:
  DomainSpec domain;
  int n = 0;          // cells per axis; nodes per axis = n + 1
  double h = 0.0;     // spacing (x spacing for box2)
  double hy = 0.0;    // y spacing, box2 only

  std::vector<std::array<double, 2>> nodes;  // node coordinates, y unused in 1-D
  std::vector<double> quad_weights;          // nodal weights, sum = domain measure
  std::vector<int> interior_idx;
  std::vector<int> boundary_idx;
  std::vector<char> is_boundary;
  std::vector<CellGrad> cells;

  std::size_t size() const { return nodes.size(); }
  /// |x| of a node; radial coordinate for radial grids.
  double radial(int i) const;
};

using GridPtr = std::shared_ptr<const Grid>;

/// Builds the uniform grid with n cells per axis. Requires n >= 8.
GridPtr build_grid(const DomainSpec& spec, int n);

/// Same domain with spacing halved.
GridPtr refine(const Grid& g);

/// Nested balls B_{R0 * factor^k}, k = 0..count-1. Requires factor > 1,
/// count >= 2, R0 > 0.
std::vector<DomainSpec> exhaustion_schedule(int dim, double r0, double factor,
                                            int count);

/// Surface measure of the unit (dim-1)-sphere: 2 pi^{dim/2} / Gamma(dim/2).
double sphere_surface(int dim);

}  // namespace plap
