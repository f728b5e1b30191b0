#pragma once

#include <stdexcept>
#include <vector>

#include "plap/grid.hpp"

namespace plap {

/// Nodal scalar values on a grid. Dirichlet fields hold exact zeros on
/// boundary nodes; nothing here enforces that, the solver and the weak
/// forms that need it check it.
struct Field {
  GridPtr grid;
  std::vector<double> values;

  Field() = default;
  Field(GridPtr g, double fill = 0.0)
      : grid(std::move(g)), values(grid->size(), fill) {}
  Field(GridPtr g, std::vector<double> v) : grid(std::move(g)), values(std::move(v)) {
    if (values.size() != grid->size())
      throw std::invalid_argument("field value count does not match grid");
  }

  double& operator[](std::size_t i) { return values[i]; }
  double operator[](std::size_t i) const { return values[i]; }
  std::size_t size() const { return values.size(); }
};

/// Fields must live on the same grid object or on structurally equal grids.
inline void require_same_grid(const Field& a, const Field& b) {
  if (a.grid == b.grid) return;
  if (a.grid && b.grid && a.grid->domain == b.grid->domain &&
      a.grid->n == b.grid->n)
    return;
  throw std::invalid_argument("fields live on different grids");
}

}  // namespace plap
