#pragma once

#include <string>
#include <vector>

#include "plap/field.hpp"
#include "plap/grid.hpp"

namespace plap {

enum class PotentialKind { constant, bump, radial_well, power_tail, tabulated };

/// Radial potential family. eval is amplitude * base(dilation * |x|), so
/// amplitude sweeps and dilation sweeps reuse one spec type.
///
/// bump:        -exp(-r^2/(1-r^2)) + 1/2 inside the unit ball, 1/2 outside.
/// radial_well: depth for r < r0, outside for r >= r0.
/// power_tail:  v_inf + coeff / (1+r)^q, bounded at the origin with an
///              algebraic tail of exponent q.
struct PotentialSpec {
  PotentialKind kind = PotentialKind::constant;
  double c = 0.0;
  double depth = 0.0, r0 = 0.0, outside = 0.0;
  double v_inf = 0.0, coeff = 0.0, q = 0.0;
  std::vector<double> tab_coords, tab_values;
  double amplitude = 1.0;
  double dilation = 1.0;

  static PotentialSpec constant(double c);
  static PotentialSpec bump();
  static PotentialSpec radial_well(double depth, double r0, double outside);
  static PotentialSpec power_tail(double v_inf, double coeff, double q);
  static PotentialSpec tabulated(std::vector<double> coords,
                                 std::vector<double> values);
  /// Two-column CSV (coordinate, value), one sample per line.
  static PotentialSpec from_csv(const std::string& path);

  PotentialSpec scaled(double amp) const;     // multiply values
  PotentialSpec dilated(double alpha) const;  // evaluate base at alpha * x

  double eval_radial(double r) const;
  std::string id() const;
};

/// Nodal samples of the potential. Tabulated specs require the grid nodes
/// to match the stored coordinates.
Field sample(const PotentialSpec& spec, const GridPtr& grid);

struct PotentialBounds {
  double inf_est = 0.0;
  double sup_est = 0.0;
  double liminf_inf_est = 0.0;  // min over the outer half of the window
};

/// Sampled bounds over radii [0, window_radius]. Requires n >= 100.
PotentialBounds bounds(const PotentialSpec& spec, double window_radius, int n);

}  // namespace plap
