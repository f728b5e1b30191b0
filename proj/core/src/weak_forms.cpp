#include "plap/weak_forms.hpp"

#include <cmath>
#include <stdexcept>

namespace plap {

double pow_abs(double g, double p) {
  const double a = std::abs(g);
  if (p == 2.0) return a * a;
  if (p == 3.0) return a * a * a;
  return std::pow(a, p);
}

double phi_p(double g, double p) {
  if (g == 0.0) return 0.0;
  if (p == 2.0) return g;
  if (p == 3.0) return std::abs(g) * g;
  return std::copysign(std::pow(std::abs(g), p - 1.0), g);
}

namespace {

// |g|^{p-2} for the cell gradient magnitude, from gnorm2 = |g|^2.
// reg switches on the eps_reg smoothing used only for 1 < p < 2.
inline double degenerate_factor(double gnorm2, double p, bool reg) {
  if (p == 2.0) return 1.0;
  if (reg && p < 2.0)
    return std::pow(gnorm2 + eps_reg * eps_reg, 0.5 * (p - 2.0));
  if (gnorm2 == 0.0) return 0.0;  // combined with g it acts as |g|^{p-1} -> 0
  if (p == 3.0) return std::sqrt(gnorm2);
  return std::pow(gnorm2, 0.5 * (p - 2.0));
}

void check_p(double p) {
  if (!(p > 1.0) || !std::isfinite(p))
    throw std::invalid_argument("p must satisfy 1 < p < infinity");
}

void check_nonnegative(const Field& f, const char* what) {
  for (double v : f.values)
    if (v < 0.0) throw std::invalid_argument(std::string(what) + " has negative entries");
}

void check_compact_support(const Field& f, const char* what) {
  const Grid& g = *f.grid;
  for (int b : g.boundary_idx)
    if (f[b] != 0.0)
      throw std::invalid_argument(std::string(what) + " must vanish on the boundary");
}

struct CellGradEval {
  double comp[2];
  double norm2;
};

inline CellGradEval cell_gradient(const CellGrad& c, const std::vector<double>& u) {
  CellGradEval e{{0.0, 0.0}, 0.0};
  for (int d = 0; d < c.comps; ++d) {
    double g = 0.0;
    for (int t = 0; t < c.terms[d]; ++t) g += c.w[d][t] * u[c.idx[d][t]];
    e.comp[d] = g;
    e.norm2 += g * g;
  }
  return e;
}

}  // namespace

double p_energy(const Field& u, const Field& V, double p, double diffusion) {
  check_p(p);
  require_same_grid(u, V);
  const Grid& g = *u.grid;
  double grad = 0.0;
  for (const CellGrad& c : g.cells) {
    const auto e = cell_gradient(c, u.values);
    grad += c.measure * pow_abs(std::sqrt(e.norm2), p);
  }
  double pot = 0.0;
  for (std::size_t j = 0; j < g.size(); ++j)
    pot += g.quad_weights[j] * V[j] * pow_abs(u[j], p);
  return diffusion * grad + pot;
}

double lp_norm_p(const Field& u, double p) {
  check_p(p);
  const Grid& g = *u.grid;
  double s = 0.0;
  for (std::size_t j = 0; j < g.size(); ++j)
    s += g.quad_weights[j] * pow_abs(u[j], p);
  return s;
}

double rayleigh(const Field& u, const Field& V, double p, double diffusion) {
  const double den = lp_norm_p(u, p);
  if (den == 0.0) throw std::domain_error("rayleigh quotient of the zero field");
  return p_energy(u, V, p, diffusion) / den;
}

double weak_residual(const Field& u, double lambda, const Field& V, double p,
                     const Field& phi, double diffusion) {
  check_p(p);
  require_same_grid(u, V);
  require_same_grid(u, phi);
  check_nonnegative(u, "u");
  check_nonnegative(phi, "phi");
  check_compact_support(phi, "phi");
  const Grid& g = *u.grid;
  double acc = 0.0;
  for (const CellGrad& c : g.cells) {
    const auto eu = cell_gradient(c, u.values);
    const auto ep = cell_gradient(c, phi.values);
    const double f = degenerate_factor(eu.norm2, p, false);
    double dot = 0.0;
    for (int d = 0; d < c.comps; ++d) dot += eu.comp[d] * ep.comp[d];
    acc += diffusion * c.measure * f * dot;
  }
  for (std::size_t j = 0; j < g.size(); ++j)
    acc += g.quad_weights[j] * (V[j] - lambda) * pow_abs(u[j], p - 1.0) * phi[j];
  return acc;
}

namespace {

// Shared assembly: cell flux scatter plus nodal potential term, signed or
// nonnegative powers, optional regularization and lambda shift.
std::vector<double> assemble_hats(const Field& u, const Field& V, double p,
                                  double diffusion, double lambda, bool signed_power) {
  const Grid& g = *u.grid;
  std::vector<double> full(g.size(), 0.0);
  for (const CellGrad& c : g.cells) {
    const auto e = cell_gradient(c, u.values);
    const double f = degenerate_factor(e.norm2, p, false);
    for (int d = 0; d < c.comps; ++d) {
      const double flux = diffusion * c.measure * f * e.comp[d];
      if (flux == 0.0) continue;
      for (int t = 0; t < c.terms[d]; ++t) full[c.idx[d][t]] += flux * c.w[d][t];
    }
  }
  std::vector<double> out(g.interior_idx.size());
  for (std::size_t k = 0; k < g.interior_idx.size(); ++k) {
    const int j = g.interior_idx[k];
    const double up = signed_power ? phi_p(u[j], p) : pow_abs(u[j], p - 1.0);
    out[k] = full[j] + g.quad_weights[j] * (V[j] - lambda) * up;
  }
  return out;
}

}  // namespace

std::vector<double> weak_residual_hats(const Field& u, double lambda,
                                       const Field& V, double p,
                                       double diffusion) {
  check_p(p);
  require_same_grid(u, V);
  check_nonnegative(u, "u");
  return assemble_hats(u, V, p, diffusion, lambda, false);
}

std::vector<double> operator_action_hats(const Field& u, const Field& V,
                                         double p, double diffusion) {
  check_p(p);
  require_same_grid(u, V);
  return assemble_hats(u, V, p, diffusion, 0.0, true);
}

Field energy_grad(const Field& u, const Field& V, double p, double diffusion) {
  check_p(p);
  require_same_grid(u, V);
  const Grid& g = *u.grid;
  Field out(u.grid);
  for (const CellGrad& c : g.cells) {
    const auto e = cell_gradient(c, u.values);
    const double f = degenerate_factor(e.norm2, p, true);
    for (int d = 0; d < c.comps; ++d) {
      const double flux = p * diffusion * c.measure * f * e.comp[d];
      if (flux == 0.0) continue;
      for (int t = 0; t < c.terms[d]; ++t)
        out[c.idx[d][t]] += flux * c.w[d][t];
    }
  }
  for (std::size_t j = 0; j < g.size(); ++j)
    out[j] += p * g.quad_weights[j] * V[j] * phi_p(u[j], p);
  // gradient w.r.t. interior values only; boundary nodes are not unknowns
  for (int j : g.boundary_idx) out[j] = 0.0;
  return out;
}

std::pair<double, double> cutoff_inequality(const Field& u, double lambda,
                                            double lambda_star,
                                            const Field& psi, double p) {
  check_p(p);
  require_same_grid(u, psi);
  check_nonnegative(u, "u");
  check_nonnegative(psi, "psi");
  check_compact_support(psi, "psi");
  const Grid& g = *u.grid;
  double lhs = 0.0;
  for (std::size_t j = 0; j < g.size(); ++j)
    lhs += g.quad_weights[j] * pow_abs(u[j], p) * pow_abs(psi[j], p);
  lhs *= (lambda_star - lambda);
  double rhs = 0.0;
  for (const CellGrad& c : g.cells) {
    const auto e = cell_gradient(c, psi.values);
    if (e.norm2 == 0.0) continue;
    // mean of u^p over the cell's nodes
    double um = 0.0;
    int cnt = 0;
    for (int t = 0; t < c.terms[0]; ++t) {
      um += pow_abs(u[c.idx[0][t]], p);
      ++cnt;
    }
    um /= cnt;
    rhs += c.measure * pow_abs(std::sqrt(e.norm2), p) * um;
  }
  return {lhs, rhs};
}

}  // namespace plap
