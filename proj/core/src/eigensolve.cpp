#include "plap/eigensolve.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <string>

#include "plap/weak_forms.hpp"

namespace plap {

namespace {

// %e so a 1e-13 residual does not print as "0.000000".
std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

inline double dfac(double gnorm2, double p, bool reg) {
  if (p == 2.0) return 1.0;
  if (reg && p < 2.0)
    return std::pow(gnorm2 + eps_reg * eps_reg, 0.5 * (p - 2.0));
  if (gnorm2 == 0.0) return 0.0;
  if (p == 3.0) return std::sqrt(gnorm2);
  return std::pow(gnorm2, 0.5 * (p - 2.0));
}

// One pass: energy, L^p mass, and optionally the energy gradient.
// plus_part replaces u by max(u, 0) inside the potential and mass terms,
// which is the source-problem convention; the eigensolver keeps u >= 0 by
// projection so both conventions coincide there.
void assemble(const Grid& g, const std::vector<double>& u,
              const std::vector<double>& V, double p, double diffusion,
              bool reg, double* energy, double* mass, std::vector<double>* grad,
              bool plus_part = false) {
  double E = 0.0;
  if (grad) std::fill(grad->begin(), grad->end(), 0.0);
  for (const CellGrad& c : g.cells) {
    double comp[2] = {0.0, 0.0};
    double norm2 = 0.0;
    for (int d = 0; d < c.comps; ++d) {
      double s = 0.0;
      for (int t = 0; t < c.terms[d]; ++t) s += c.w[d][t] * u[c.idx[d][t]];
      comp[d] = s;
      norm2 += s * s;
    }
    E += diffusion * c.measure * pow_abs(std::sqrt(norm2), p);
    if (grad) {
      const double f = dfac(norm2, p, reg);
      for (int d = 0; d < c.comps; ++d) {
        const double flux = p * diffusion * c.measure * f * comp[d];
        if (flux == 0.0) continue;
        for (int t = 0; t < c.terms[d]; ++t)
          (*grad)[c.idx[d][t]] += flux * c.w[d][t];
      }
    }
  }
  double M = 0.0;
  for (std::size_t j = 0; j < g.size(); ++j) {
    const double uj = plus_part ? std::max(u[j], 0.0) : u[j];
    const double up1 = pow_abs(uj, p - 1.0);
    const double up = up1 * uj;
    E += g.quad_weights[j] * V[j] * up;
    M += g.quad_weights[j] * up;
    if (grad) (*grad)[j] += p * g.quad_weights[j] * V[j] * up1;
  }
  if (energy) *energy = E;
  if (mass) *mass = M;
}

void init_values(const Grid& g, const SolverConfig& cfg,
                 const Field* warm_start, std::vector<double>& u) {
  u.assign(g.size(), 0.0);
  if (warm_start) {
    if (warm_start->size() != g.size())
      throw std::invalid_argument("warm start field does not match grid");
    for (int j : g.interior_idx)
      u[j] = std::abs(warm_start->values[j]);
    return;
  }
  if (cfg.init == SolverConfig::Init::random_positive) {
    std::mt19937_64 rng(cfg.rng_seed);
    std::uniform_real_distribution<double> dist(0.5, 1.5);
    for (int j : g.interior_idx) u[j] = dist(rng);
    return;
  }
  //

  // centered bump, product of per-axis parabolas
  switch (g.domain.kind) {
    case DomainKind::interval:
      for (int j : g.interior_idx) {
        const double x = g.nodes[j][0];
        u[j] = (x - g.domain.a) * (g.domain.b - x);
      }
      break;
    case DomainKind::radial_ball:
      for (int j : g.interior_idx) {
        const double r = g.nodes[j][0];
        u[j] = g.domain.radius * g.domain.radius - r * r;
      }
      break;
    case DomainKind::box2:
      for (int j : g.interior_idx) {
        const double x = g.nodes[j][0], y = g.nodes[j][1];
        u[j] = (x - g.domain.ax) * (g.domain.bx - x) * (y - g.domain.ay) *
               (g.domain.by - y);
      }
      break;
  }
}

double normalize_lp(const Grid& g, double p, std::vector<double>& u) {
  double M = 0.0;
  for (std::size_t j = 0; j < g.size(); ++j)
    M += g.quad_weights[j] * pow_abs(u[j], p);
  if (M <= 0.0) throw SolverError("iterate collapsed to zero");
  const double s = std::pow(M, -1.0 / p);
  for (double& v : u) v *= s;
  return M;
}

}  // namespace

EigenPair principal_eig(const GridPtr& grid, const Field& V,
                        const SolverConfig& cfg, const Field* warm_start) {
  if (!grid) throw std::invalid_argument("null grid");
  if (V.grid != grid) require_same_grid(Field(grid), V);
  if (!(cfg.p > 1.0)) throw std::invalid_argument("p must exceed 1");
  if (grid->interior_idx.empty()) throw std::invalid_argument("no interior nodes");
  const Grid& g = *grid;
  const double p = cfg.p;

  std::vector<double> u, grad(g.size()), u_prev, grad_prev, trial(g.size());
  init_values(g, cfg, warm_start, u);
  normalize_lp(g, p, u);

  double lambda = 0.0, lambda_prev = std::numeric_limits<double>::infinity();
  double residual_inf = std::numeric_limits<double>::infinity();
  double step = 0.0;
  int iters = 0;
  bool have_prev = false;
  bool converged = false;
  const bool needs_exact_residual = (p < 2.0);

  // nonmonotone Armijo reference (max of the last accepted quotients); a
  // monotone guard would clip the Barzilai-Borwein steps back to steepest
  // descent and stall on stiff fine grids
  std::array<double, 10> recent;
  recent.fill(std::numeric_limits<double>::infinity());

  Field u_field(grid);  // reused for the p < 2 exact-residual path

  for (iters = 0; iters < cfg.max_iter; ++iters) {
    double E, M;
    assemble(g, u, V.values, p, cfg.diffusion, true, &E, &M, &grad);
    lambda = E / M;  // M = 1 up to rounding; keep the quotient exact

    // Rayleigh gradient, boundary rows frozen
    double gsq = 0.0, ginf = 0.0;
    for (int b : g.boundary_idx) grad[b] = 0.0;
    residual_inf = 0.0;
    for (int j : g.interior_idx) {
      const double mass_j = p * g.quad_weights[j] * pow_abs(u[j], p - 1.0);
      const double r = grad[j] - lambda * mass_j;
      grad[j] = r;
      gsq += r * r;
      ginf = std::max(ginf, std::abs(r));
      residual_inf = std::max(residual_inf, std::abs(r) / p);
    }
    if (needs_exact_residual) {
      u_field.values = u;
      const auto hats = weak_residual_hats(u_field, lambda, V, p, cfg.diffusion);
      residual_inf = 0.0;
      for (double r : hats) residual_inf = std::max(residual_inf, std::abs(r));
    }

    const bool lam_ok =
        std::abs(lambda - lambda_prev) <= cfg.tol_lambda * std::max(1.0, std::abs(lambda));
    if (lam_ok && residual_inf <= cfg.tol_residual) {
      converged = true;
      break;
    }

    if (iters == 0)
      recent.fill(lambda);
    else
      recent[static_cast<std::size_t>(iters % 10)] = lambda;
    const double lam_ref = *std::max_element(recent.begin(), recent.end());

    // Barzilai-Borwein trial step from the last accepted move
    double s;
    if (have_prev) {
      double sy = 0.0, ss = 0.0;
      for (int j : g.interior_idx) {
        const double du = u[j] - u_prev[j];
        const double dg = grad[j] - grad_prev[j];
        sy += du * dg;
        ss += du * du;
      }
      s = (sy > 0.0 && std::isfinite(sy)) ? ss / sy : step * 2.0;
    } else {
      s = 0.1 / (ginf + 1e-30);
    }
    s = std::clamp(s, 1e-18, 1e14);

    u_prev = u;
    grad_prev = grad;

    // Armijo backtracking on the normalized quotient
    bool accepted = false;
    for (int ls = 0; ls < 80; ++ls) {
      for (std::size_t j = 0; j < g.size(); ++j)
        trial[j] = std::abs(u[j] - s * grad[j]);
      for (int b : g.boundary_idx) trial[b] = 0.0;
      double Et, Mt;
      assemble(g, trial, V.values, p, cfg.diffusion, true, &Et, &Mt, nullptr);
      if (Mt > 0.0 && std::isfinite(Et)) {
        const double lam_t = Et / Mt;
        if (lam_t <= lam_ref - cfg.armijo_c * s * gsq) {
          const double scale = std::pow(Mt, -1.0 / p);
          for (std::size_t j = 0; j < g.size(); ++j) u[j] = trial[j] * scale;
          step = s;
          accepted = true;
          break;
        }
      }
      s *= cfg.armijo_shrink;
      if (s < 1e-20) break;
    }

    if (!accepted) {
      // no representable decrease left; accept if the residual test passes
      if (residual_inf <= cfg.tol_residual) {
        converged = true;
        break;
      }
      throw SolverError("principal_eig stalled at residual " +
                        sci(residual_inf));
    }
    lambda_prev = lambda;
    have_prev = true;
  }

  if (!converged)
    throw SolverError("principal_eig did not converge in " +
                      std::to_string(cfg.max_iter) + " iterations (residual " +
                      sci(residual_inf) + ", quotient drift " +
                      sci(std::abs(lambda - lambda_prev)) + ")");

  EigenPair out;
  out.phi = Field(grid, std::move(u));
  normalize_lp(g, p, out.phi.values);
  out.lambda = rayleigh(out.phi, V, p, cfg.diffusion);
  const auto hats = weak_residual_hats(out.phi, out.lambda, V, p, cfg.diffusion);
  out.residual_inf = 0.0;
  for (double r : hats) out.residual_inf = std::max(out.residual_inf, std::abs(r));
  out.iters = iters;
  // Positivity holds up to solver resolution: on wide domains the true tail
  // underflows the solve and the projection parks those nodes at exactly 0
  // with hat residuals far inside tol. A zero whose neighbors carry real
  // mass cannot pass the residual test, so only equation-consistent zeros
  // are let through; negatives never are.
  for (std::size_t k = 0; k < g.interior_idx.size(); ++k) {
    const double v = out.phi[g.interior_idx[k]];
    if (v < 0.0 || (v == 0.0 && std::abs(hats[k]) > cfg.tol_residual))
      throw SolverError("eigenfunction lost interior positivity");
  }
  return out;
}

Field solve_source(const GridPtr& grid, const Field& V, double lambda,
                   const Field& f, const SolverConfig& cfg) {
  if (!grid) throw std::invalid_argument("null grid");
  require_same_grid(Field(grid), V);
  require_same_grid(Field(grid), f);
  for (double v : f.values)
    if (v < 0.0) throw std::invalid_argument("source must be nonnegative");

  const EigenPair ground = principal_eig(grid, V, cfg);
  if (!(lambda < ground.lambda))
    throw CoercivityError("lambda " + std::to_string(lambda) +
                          " is not below the principal eigenvalue " +
                          std::to_string(ground.lambda));

  const Grid& g = *grid;
  const double p = cfg.p;
  bool f_zero = true;
  for (double v : f.values)
    if (v != 0.0) {
      f_zero = false;
      break;
    }
  if (f_zero) return Field(grid, 0.0);

  // shifted potential folds the -lambda term into V
  std::vector<double> Vs(g.size());
  for (std::size_t j = 0; j < g.size(); ++j) Vs[j] = V[j] - lambda;

  std::vector<double> u(g.size(), 0.0), grad(g.size()), u_prev, grad_prev,
      trial(g.size());
  for (int j : g.interior_idx) u[j] = ground.phi[j];  // positive seed

  auto objective = [&](const std::vector<double>& w, double* J,
                       std::vector<double>* gr) {
    double E, M;
    assemble(g, w, Vs, p, cfg.diffusion, true, &E, &M, gr, true);
    double lin = 0.0;
    for (std::size_t j = 0; j < g.size(); ++j)
      lin += g.quad_weights[j] * f[j] * w[j];
    if (gr) {
      for (std::size_t j = 0; j < g.size(); ++j) {
        (*gr)[j] = (*gr)[j] / p - g.quad_weights[j] * f[j];
      }
      for (int b : g.boundary_idx) (*gr)[b] = 0.0;
    }
    *J = E / p - lin;
  };

  double J = 0.0, J_prev = std::numeric_limits<double>::infinity();
  double step = 0.0;
  bool have_prev = false, converged = false;
  std::array<double, 10> recent;
  recent.fill(std::numeric_limits<double>::infinity());
  for (int it = 0; it < cfg.max_iter; ++it) {
    objective(u, &J, &grad);
    if (it == 0)
      recent.fill(J);
    else
      recent[static_cast<std::size_t>(it % 10)] = J;
    const double J_ref = *std::max_element(recent.begin(), recent.end());
    double gsq = 0.0, ginf = 0.0;
    for (int j : g.interior_idx) {
      gsq += grad[j] * grad[j];
      ginf = std::max(ginf, std::abs(grad[j]));
    }
    const bool J_ok =
        std::abs(J - J_prev) <= cfg.tol_lambda * std::max(1.0, std::abs(J));
    if (ginf <= cfg.tol_residual && J_ok) {
      converged = true;
      break;
    }

    double s;
    if (have_prev) {
      double sy = 0.0, ss = 0.0;
      for (int j : g.interior_idx) {
        const double du = u[j] - u_prev[j];
        const double dg = grad[j] - grad_prev[j];
        sy += du * dg;
        ss += du * du;
      }
      s = (sy > 0.0 && std::isfinite(sy)) ? ss / sy : step * 2.0;
    } else {
      double umax = 0.0;
      for (int j : g.interior_idx) umax = std::max(umax, std::abs(u[j]));
      s = 0.1 * std::max(umax, 1.0) / (ginf + 1e-30);
    }
    s = std::clamp(s, 1e-18, 1e14);

    u_prev = u;
    grad_prev = grad;
    bool accepted = false;
    for (int ls = 0; ls < 80; ++ls) {
      for (std::size_t j = 0; j < g.size(); ++j) trial[j] = u[j] - s * grad[j];
      for (int b : g.boundary_idx) trial[b] = 0.0;
      double Jt;
      objective(trial, &Jt, nullptr);
      if (std::isfinite(Jt) && Jt <= J_ref - cfg.armijo_c * s * gsq) {
        u.swap(trial);
        step = s;
        accepted = true;
        break;
      }
      s *= cfg.armijo_shrink;
      if (s < 1e-20) break;
    }
    if (!accepted) {
      if (ginf <= cfg.tol_residual) {
        converged = true;
        break;
      }
      throw SolverError("solve_source stalled with gradient sup " + sci(ginf));
    }
    J_prev = J;
    have_prev = true;
  }
  if (!converged)
    throw SolverError("solve_source did not converge in " +
                      std::to_string(cfg.max_iter) + " iterations");

  for (double& v : u) v = std::max(v, 0.0);
  Field out(grid, std::move(u));
  // Same rule as principal_eig: a zero is tolerated only where the converged
  // gradient cannot distinguish it from positive (underflowed far tail).
  for (int j : g.interior_idx)
    if (out[j] < 0.0 || (out[j] == 0.0 && std::abs(grad[j]) > cfg.tol_residual))
      throw SolverError("source solution lost interior positivity");
  return out;
}

}  // namespace plap
