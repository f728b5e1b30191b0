#pragma once

#include <cstdint>
#include <stdexcept>

#include "plap/field.hpp"

namespace plap {

struct SolverConfig {
  double p = 2.0;
  double tol_lambda = 1e-9;    // relative stagnation of the quotient
  double tol_residual = 1e-6;  // sup norm of the nodal weak residual
  int max_iter = 50000;
  double armijo_c = 1e-4;
  double armijo_shrink = 0.5;
  std::uint64_t rng_seed = 42;
  enum class Init { bump, random_positive };
  Init init = Init::bump;
  double diffusion = 1.0;  // gradient-term coefficient for scaled operators
};

struct EigenPair {
  double lambda = 0.0;
  Field phi;                  // >= 0, unit L^p norm, zero on the boundary
  double residual_inf = 0.0;  // max |weak residual| over interior hats
  int iters = 0;
};

class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CoercivityError : public SolverError {
 public:
  using SolverError::SolverError;
};

/// Principal Dirichlet eigenpair of  u -> -diffusion * Lap_p u + V u^{p-1}
/// by projected gradient descent of the Rayleigh quotient on the L^p unit
/// sphere: Barzilai-Borwein trial steps, Armijo backtracking, |u| projection
/// and renormalization after every step. Stops when the relative quotient
/// change drops below tol_lambda and the residual below tol_residual.
/// warm_start, when given, seeds the iteration (values on the same grid).
/// Throws SolverError on non-convergence or loss of interior positivity.
EigenPair principal_eig(const GridPtr& grid, const Field& V,
                        const SolverConfig& cfg,
                        const Field* warm_start = nullptr);

/// Minimizer of J(u) = (1/p) int (diffusion |Du|^p + (V - lambda) u_+^p)
///                     - int f u   over Dirichlet fields.
/// Requires lambda below the principal eigenvalue (checked; throws
/// CoercivityError) and f >= 0. f identically zero returns the zero field.
Field solve_source(const GridPtr& grid, const Field& V, double lambda,
                   const Field& f, const SolverConfig& cfg);

}  // namespace plap
