#include "plap/certify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "plap/weak_forms.hpp"

namespace plap {

namespace {

constexpr double margin_tol = 1e-10;

void check_positive_interior(const Field& psi, const char* who) {
  const Grid& g = *psi.grid;
  for (int j : g.interior_idx)
    if (!(psi[j] > 0.0)) {
      std::ostringstream os;
      os << who << ": witness must be strictly positive on interior nodes, "
         << "node " << j << " has value " << psi[j];
      throw std::invalid_argument(os.str());
    }
  for (int j : g.boundary_idx)
    if (psi[j] < 0.0)
      throw std::invalid_argument(
          std::string(who) + ": witness must be nonnegative on the boundary");
}

}  // namespace

Certificate certify_lower(const Field& psi, double lambda, const Field& V,
                          double p, double diffusion,
                          const std::string& witness_id) {
  require_same_grid(psi, V);
  check_positive_interior(psi, "certify_lower");
  const auto hats = weak_residual_hats(psi, lambda, V, p, diffusion);
  double margin = std::numeric_limits<double>::infinity();
  for (double r : hats) margin = std::min(margin, r);
  Certificate c;
  c.direction = Certificate::Direction::lower;
  c.bound = lambda;
  c.margin = margin;
  c.witness_id = witness_id;
  c.valid = margin >= -margin_tol;
  return c;
}

Certificate certify_upper(const Field& psi, const Field& V, double p,
                          const std::string& witness_id) {
  require_same_grid(psi, V);
  const Grid& g = *psi.grid;
  double mx = 0.0;
  for (std::size_t j = 0; j < g.size(); ++j) {
    if (psi[j] < 0.0)
      throw std::invalid_argument("certify_upper: psi must be nonnegative");
    mx = std::max(mx, psi[j]);
  }
  for (int j : g.boundary_idx)
    if (psi[j] != 0.0)
      throw std::invalid_argument(
          "certify_upper: psi must vanish on the boundary");
  if (mx == 0.0)
    throw std::invalid_argument("certify_upper: psi is identically zero");
  Certificate c;
  c.direction = Certificate::Direction::upper;
  c.bound = rayleigh(psi, V, p);
  c.margin = 0.0;
  c.witness_id = witness_id;
  c.valid = true;
  return c;
}

double ExpBarrier::closed_form_bound(double p, double r) const {
  const double g = std::tanh(beta * r + 1.0);
  const double cp = std::pow(std::tanh(1.0), p - 2.0) + 1.0;
  const double psir = std::pow(std::exp(beta * r + 1.0) +
                                   std::exp(-beta * r - 1.0),
                               -gamma);
  return cp * (p - 1.0) * std::pow(beta, p) * std::pow(gamma, p - 1.0) *
         ((gamma + 1.0) * g * g - 1.0) * std::pow(psir, p - 1.0);
}

ExpBarrier barrier_exp(double beta, double gamma, const GridPtr& grid) {
  if (!(beta > 0.0) || !(gamma > 0.0))
    throw std::invalid_argument("barrier_exp: beta and gamma must be > 0");
  if (grid->domain.kind != DomainKind::radial_ball)
    throw std::invalid_argument("barrier_exp: radial grid required");
  ExpBarrier b;
  b.beta = beta;
  b.gamma = gamma;
  Field psi(grid, 0.0);
  for (std::size_t j = 0; j < grid->size(); ++j) {
    const double r = grid->radial(j);
    psi.values[j] =
        std::pow(std::exp(beta * r + 1.0) + std::exp(-beta * r - 1.0), -gamma);
  }
  b.psi = std::move(psi);
  return b;
}

Field barrier_matched(int N, double p, const GridPtr& grid) {
  if (N < 1) throw std::invalid_argument("barrier_matched: N must be >= 1");
  if (!(p > 1.0)) throw std::invalid_argument("barrier_matched: p must be > 1");
  if (grid->domain.kind != DomainKind::radial_ball ||
      !(grid->domain.radius > 1.0))
    throw std::invalid_argument(
        "barrier_matched: radial grid with radius > 1 required");
  const double k = double(N - 1) / (p - 1.0);
  Field psi(grid, 0.0);
  for (std::size_t j = 0; j < grid->size(); ++j) {
    const double r = grid->radial(j);
    psi.values[j] = r <= 1.0 ? 1.0 : std::exp(k * (1.0 - r));
  }
  return psi;
}

Field barrier_decay(double R, double rho, double omega, double tau,
                    const GridPtr& grid) {
  if (!(R > 0.0) || !(rho > 0.0))
    throw std::invalid_argument("barrier_decay: R and rho must be > 0");
  if (!(tau > 0.0) || !(tau < omega))
    throw std::invalid_argument("barrier_decay: need 0 < tau < omega");
  const double a = std::exp((R + rho) * (tau - omega));
  const double b = std::exp(R * (tau + omega));
  Field w(grid, 0.0);
  for (std::size_t j = 0; j < grid->size(); ++j) {
    const double r = grid->radial(j);
    w.values[j] = a * std::exp(omega * r) + b * std::exp(-omega * r);
  }
  return w;
}

Certificate lim1_certificate(const PotentialSpec& V, double p, double alpha,
                             double eps, double R, int n_per_unit, int dim) {
  if (!(alpha > 0.0))
    throw std::invalid_argument("lim1_certificate: alpha must be > 0");
  if (!(eps > 0.0))
    throw std::invalid_argument("lim1_certificate: eps must be > 0");
  if (!(R > 0.0)) throw std::invalid_argument("lim1_certificate: R must be > 0");
  const double beta = std::pow(alpha, -1.0 / (2.0 * p));
  const double gamma = std::pow(alpha, -1.0 / (2.0 * p - 1.0));
  const int n = std::max(8, int(std::lround(R * n_per_unit)));
  auto grid = build_grid(DomainSpec::radial_ball(dim, R), n);
  ExpBarrier b = barrier_exp(beta, gamma, grid);
  Field Vf = sample(V, grid);
  const PotentialBounds pb = bounds(V, std::max(R, 1.0), 2048);
  const double lambda = pb.liminf_inf_est - 2.0 * eps;
  Certificate c = certify_lower(b.psi, lambda, Vf, p, alpha, "");
  std::ostringstream id;
  id << "exp_barrier(beta=" << beta << ",gamma=" << gamma << ",R=" << R << ")";
  c.witness_id = id.str();
  return c;
}

}  // namespace plap
