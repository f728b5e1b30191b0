#pragma once

#include <string>

#include "plap/field.hpp"
#include "plap/potential.hpp"

namespace plap {

struct Certificate {
  enum class Direction { lower, upper };
  Direction direction = Direction::lower;
  double bound = 0.0;
  double margin = 0.0;  // worst nodal residual (lower) or 0 (upper)
  std::string witness_id;
  bool valid = false;
};

/// Lower bound lambda <= principal eigenvalue, witnessed by psi > 0 on the
/// interior: margin is the minimum of the weak residual of (K_V - lambda)
/// at psi over all interior hats, and the certificate is valid when the
/// margin is >= -1e-10. psi need not vanish on the boundary.
Certificate certify_lower(const Field& psi, double lambda, const Field& V,
                          double p, double diffusion = 1.0,
                          const std::string& witness_id = "psi");

/// Upper bound: the Rayleigh quotient of any admissible Dirichlet psi >= 0.
Certificate certify_upper(const Field& psi, const Field& V, double p,
                          const std::string& witness_id = "psi");

/// Two-term exponential barrier (e^{beta r + 1} + e^{-beta r - 1})^{-gamma},
/// decreasing in r, value (e + 1/e)^{-gamma} at the origin. closed_form_bound
/// gives the analytic upper bound for the radial p-Laplacian of the barrier,
///   c_p (p-1) beta^p gamma^{p-1} ((gamma+1) g(r)^2 - 1) psi^{p-1},
/// with g(r) = tanh(beta r + 1) and c_p = tanh(1)^{p-2} + 1. The bound is
/// valid away from the origin kink for dim >= 2.
struct ExpBarrier {
  Field psi;
  double beta = 0.0, gamma = 0.0;
  double closed_form_bound(double p, double r) const;
};

ExpBarrier barrier_exp(double beta, double gamma, const GridPtr& grid);

/// Matched barrier: 1 inside the unit ball, exp(((N-1)/(p-1))(1-r)) outside.
/// Smooth-region p-Laplacian is zero inside and nonnegative outside; the
/// interface carries an unfavorable flux jump, so discrete checks stay away
/// from r = 1.
Field barrier_matched(int N, double p, const GridPtr& grid);

/// Annulus comparison barrier
///   e^{(R+rho)(tau-omega)} e^{omega r} + e^{R(tau+omega)} e^{-omega r},
/// which dominates e^{tau r} at both annulus ends r = R and r = R + rho.
Field barrier_decay(double R, double rho, double omega, double tau,
                    const GridPtr& grid);

/// Lower certificate for the diffusion-scaled operator
/// -alpha Lap_p + V at level (liminf proxy of V) - 2 eps, witnessed by the
/// exponential barrier with beta = alpha^{-1/(2p)}, gamma = alpha^{-1/(2p-1)}.
/// The residual check is evaluated, not assumed: too-small alpha comes back
/// as an invalid certificate.
Certificate lim1_certificate(const PotentialSpec& V, double p, double alpha,
                             double eps, double R, int n_per_unit,
                             int dim = 2);

}  // namespace plap
