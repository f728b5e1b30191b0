#pragma once

#include <utility>
#include <vector>

#include "plap/field.hpp"

namespace plap {

/// |g|^{p-2} g with the convention 0 at g = 0 (continuous for p > 1).
double phi_p(double g, double p);
/// |g|^p.
double pow_abs(double g, double p);

/// Discrete energy  diffusion * sum_cells m_c |Du_c|^p
///                  + sum_nodes w_j V_j |u_j|^p.
/// Cell gradients are forward differences at cell midpoints; nodal terms
/// use the midpoint-cell quadrature weights.
double p_energy(const Field& u, const Field& V, double p,
                double diffusion = 1.0);

/// sum_nodes w_j |u_j|^p.
double lp_norm_p(const Field& u, double p);

/// p_energy / lp_norm_p. Throws std::domain_error on zero denominator.
double rayleigh(const Field& u, const Field& V, double p,
                double diffusion = 1.0);

/// Weak form of (K_V - lambda) at u tested against phi:
///   diffusion * sum_c m_c |Du|^{p-2} Du . Dphi
///   + sum_j w_j (V_j - lambda) u_j^{p-1} phi_j.
/// Requires u >= 0 and phi >= 0 with phi = 0 on boundary nodes.
/// A nonnegative value for every nodal hat certifies K_V[u] >= lambda u^{p-1}
/// in the discrete weak sense.
double weak_residual(const Field& u, double lambda, const Field& V, double p,
                     const Field& phi, double diffusion = 1.0);

/// weak_residual against every interior nodal hat, aligned with
/// grid->interior_idx. u >= 0 required; boundary values of u may be nonzero
/// (hats vanish there).
std::vector<double> weak_residual_hats(const Field& u, double lambda,
                                       const Field& V, double p,
                                       double diffusion = 1.0);

/// Signed weak action of K_V at u against interior hats, with the odd
/// extension |u|^{p-2} u in the potential term. Used for maximum principle
/// hypothesis checks on sign-changing candidates.
std::vector<double> operator_action_hats(const Field& u, const Field& V,
                                         double p, double diffusion = 1.0);

/// Exact gradient field of p_energy at u with respect to interior nodal
/// values; boundary entries are zero. For 1 < p < 2 the degenerate cell
/// factor |g|^{p-2} is evaluated as (g^2 + eps_reg^2)^{(p-2)/2} with
/// eps_reg = 1e-12; energies and residuals stay unregularized.
Field energy_grad(const Field& u, const Field& V, double p,
                  double diffusion = 1.0);

/// Pair (lhs, rhs) of the cutoff inequality with
///   lhs = (lambda_star - lambda) * sum_j w_j u_j^p psi_j^p
///   rhs = sum_c m_c |Dpsi_c|^p * mean_c(u^p),
/// mean_c taken over the cell's nodes. psi must vanish on the boundary.
std::pair<double, double> cutoff_inequality(const Field& u, double lambda,
                                            double lambda_star,
                                            const Field& psi, double p);

constexpr double eps_reg = 1e-12;

}  // namespace plap
