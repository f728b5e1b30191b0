#include "plap/limits.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "plap/parallel.hpp"

namespace plap {

EvalDomain EvalDomain::fixed_domain(const DomainSpec& d, int n) {
  EvalDomain e;
  e.fixed = d;
  e.n_fixed = n;
  return e;
}

EvalDomain EvalDomain::exhaustion(std::vector<DomainSpec> schedule,
                                  int n_per_unit) {
  EvalDomain e;
  e.schedule = std::move(schedule);
  e.n_per_unit = n_per_unit;
  return e;
}

namespace {

int nodes_for_radius(double radius, int n_per_unit) {
  return std::max(8, static_cast<int>(std::llround(radius * n_per_unit)));
}

void check_schedule(const std::vector<DomainSpec>& schedule) {
  if (schedule.size() < 2)
    throw std::invalid_argument("exhaustion schedule needs at least 2 balls");
  for (std::size_t k = 0; k < schedule.size(); ++k) {
    if (schedule[k].kind != DomainKind::radial_ball)
      throw std::invalid_argument("exhaustion schedule must consist of balls");
    if (k > 0) {
      if (schedule[k].dim != schedule[0].dim)
        throw std::invalid_argument("exhaustion schedule mixes dimensions");
      if (!(schedule[k].radius > schedule[k - 1].radius))
        throw std::invalid_argument("exhaustion radii must strictly increase");
    }
  }
}

// previous-ball eigenfunction carried onto the next radial grid
Field interpolate_radial(const Field& prev, const GridPtr& grid) {
  Field out(grid);
  const Grid& src = *prev.grid;
  const double r_max = src.domain.radius;
  for (int j : grid->interior_idx) {
    const double r = grid->nodes[j][0];
    if (r >= r_max) continue;
    const double t = r / src.h;
    const int i0 = std::min(static_cast<int>(t), src.n - 1);
    const double w = t - i0;
    out[j] = (1.0 - w) * prev[i0] + w * prev[i0 + 1];
  }
  return out;
}

}  // namespace

ExhaustionReport lambda_unbounded(const PotentialSpec& V, double p,
                                  const std::vector<DomainSpec>& schedule,
                                  int n_per_unit, const SolverConfig& cfg) {
  check_schedule(schedule);
  if (n_per_unit < 32)
    throw std::invalid_argument("n_per_unit must be >= 32 nodes per unit radius");
  SolverConfig c = cfg;
  c.p = p;
  ExhaustionReport rep;
  Field prev_phi;
  for (const DomainSpec& d : schedule) {
    const auto grid = build_grid(d, nodes_for_radius(d.radius, n_per_unit));
    const Field Vf = sample(V, grid);
    Field warm;
    const Field* warm_ptr = nullptr;
    if (prev_phi.grid) {
      warm = interpolate_radial(prev_phi, grid);
      warm_ptr = &warm;
    }
    const EigenPair e = principal_eig(grid, Vf, c, warm_ptr);
    rep.radii.push_back(d.radius);
    rep.lambdas.push_back(e.lambda);
    prev_phi = e.phi;
  }

  const std::size_t m = rep.lambdas.size();
  rep.diffs.resize(m - 1);
  rep.monotone = true;
  for (std::size_t k = 0; k + 1 < m; ++k) {
    rep.diffs[k] = rep.lambdas[k] - rep.lambdas[k + 1];
    if (rep.lambdas[k + 1] >
        rep.lambdas[k] + 10.0 * cfg.tol_lambda * std::max(1.0, std::abs(rep.lambdas[k])))
      rep.monotone = false;
  }

  // geometric-tail fit lambda_k ~ lambda_inf + c rho^k on the last three
  double extrap = rep.lambdas.back();
  if (m >= 3) {
    const double d1 = rep.lambdas[m - 2] - rep.lambdas[m - 3];
    const double d2 = rep.lambdas[m - 1] - rep.lambdas[m - 2];
    if (d1 != 0.0 && d1 * d2 > 0.0 && std::abs(d2) < std::abs(d1)) {
      const double rho = d2 / d1;
      extrap = rep.lambdas[m - 1] + d2 * rho / (1.0 - rho);
    }
  }
  // keep the reported limit inside the provable window
  const double window = std::max(rep.radii.back(), 1.0);
  const PotentialBounds pb = bounds(V, window, 2048);
  const double lo = pb.inf_est;
  const double hi = *std::min_element(rep.lambdas.begin(), rep.lambdas.end());
  rep.lambda_inf = std::clamp(extrap, std::min(lo, hi), hi);
  return rep;
}

double lambda_on(const PotentialSpec& V, double p, const EvalDomain& base,
                 const SolverConfig& cfg) {
  SolverConfig c = cfg;
  c.p = p;
  if (base.fixed) {
    const auto grid = build_grid(*base.fixed, base.n_fixed);
    return principal_eig(grid, sample(V, grid), c).lambda;
  }
  return lambda_unbounded(V, p, base.schedule, base.n_per_unit, c).lambda_inf;
}

namespace {

void check_alphas(const std::vector<double>& alphas) {
  if (alphas.empty()) throw std::invalid_argument("empty alpha list");
  for (double a : alphas)
    if (!(a > 0.0) || !std::isfinite(a))
      throw std::invalid_argument("sweep alphas must be positive and finite");
}

}  // namespace

SweepTable diffusion_sweep(const PotentialSpec& V, double p,
                           const std::vector<double>& alphas,
                           const EvalDomain& base, const SolverConfig& cfg) {
  check_alphas(alphas);
  SweepTable t;
  t.kind = SweepKind::diffusion;
  t.alphas = alphas;
  t.lambdas.resize(alphas.size());
  t.note = "lambda(-alpha Lap_p + V) = alpha * lambda(K_{V/alpha})";
  parallel_map(static_cast<int>(alphas.size()), [&](int i) {
    const double a = alphas[i];
    t.lambdas[i] = a * lambda_on(V.scaled(1.0 / a), p, base, cfg);
  });
  return t;
}

SweepTable dilation_sweep(const PotentialSpec& V, double p,
                          const std::vector<double>& alphas,
                          const EvalDomain& base, const SolverConfig& cfg) {
  check_alphas(alphas);
  if (!base.fixed && base.schedule.empty())
    throw std::invalid_argument("dilation sweep needs a domain or a schedule");
  SweepTable t;
  t.kind = SweepKind::dilation;
  t.alphas = alphas;
  t.lambdas.resize(alphas.size());
  t.note = "lambda(K_{V(alpha x)})";
  const double window =
      base.fixed ? (base.fixed->kind == DomainKind::radial_ball
                        ? base.fixed->radius
                        : std::abs(base.fixed->b - base.fixed->a))
                 : base.schedule.back().radius;
  const PotentialBounds pb = bounds(V, std::max(window, 1.0), 2048);
  const double v0 = V.kind == PotentialKind::tabulated ? pb.inf_est
                                                       : V.eval_radial(0.0);
  if (v0 > pb.inf_est + 1e-9 * (1.0 + std::abs(pb.inf_est)))
    t.note += "; warning: V(0) != inf V, small-alpha limit not covered";
  parallel_map(static_cast<int>(alphas.size()), [&](int i) {
    t.lambdas[i] = lambda_on(V.dilated(alphas[i]), p, base, cfg);
  });
  return t;
}

SweepTable amplitude_sweep(const PotentialSpec& V, double p, int sign,
                           const std::vector<double>& alphas,
                           const EvalDomain& base, const SolverConfig& cfg) {
  check_alphas(alphas);
  if (sign != 1 && sign != -1)
    throw std::invalid_argument("amplitude sweep sign must be +1 or -1");
  SweepTable t;
  t.kind = sign > 0 ? SweepKind::amplitude_pos : SweepKind::amplitude_neg;
  t.alphas = alphas;
  t.lambdas.resize(alphas.size());
  t.note = sign > 0
               ? "lambda(K_{alpha V}) / alpha via lambda(-(1/alpha) Lap_p + V)"
               : "lambda(K_{-alpha V}) / (-alpha) via "
                 "-lambda(-(1/alpha) Lap_p - V)";
  parallel_map(static_cast<int>(alphas.size()), [&](int i) {
    SolverConfig c = cfg;
    c.diffusion = 1.0 / alphas[i];
    const double lam = lambda_on(V.scaled(sign), p, base, c);
    t.lambdas[i] = sign > 0 ? lam : -lam;
  });
  return t;
}

double find_threshold(const std::function<double(double)>& lambda_at,
                      double lo, double hi, double tol) {
  if (!(lo < hi)) throw std::invalid_argument("threshold bracket needs lo < hi");
  if (!(tol > 0.0)) throw std::invalid_argument("threshold tol must be > 0");
  double f_lo = lambda_at(lo);
  double f_hi = lambda_at(hi);
  if (!(f_lo < 0.0) || !(f_hi > 0.0))
    throw std::invalid_argument(
        "threshold bracket must satisfy lambda(lo) < 0 < lambda(hi)");
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // spacing floor
    const double f = lambda_at(mid);
    if (f == 0.0) return mid;
    if (f < 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace plap
