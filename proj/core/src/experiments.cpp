#include "plap/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "plap/limits.hpp"
#include "plap/weak_forms.hpp"

namespace plap {

namespace {

constexpr double simplicity_tol = 1e-4;   // pairwise sup distance of profiles
constexpr double subsolution_tol = 1e-12; // nodal hats of K_V[u]
constexpr double conclusion_tol = 1e-8;   // "u <= 0" slack
// Final-hop sup-ratio band. The first ring's readout window overlaps its own
// source annulus by construction, so the first hop carries a pre-asymptotic
// transient that grows with the depth of lambda (measured 2.07 one unit below
// the threshold). The hop between the two widest rings is the actual
// stabilization signal (measured 1.0004 there), so only it is gated.
constexpr double stabilize_tail = 1.3;

std::string key(const char* stem, std::size_t i) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s_%02zu", stem, i);
  return buf;
}

std::string num(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

DecayFit decay_rate_fit(const Field& phi, double r_lo, double r_hi) {
  if (!(r_hi > r_lo) || !(r_lo >= 0.0))
    throw std::invalid_argument("decay_rate_fit: need 0 <= r_lo < r_hi");
  const Grid& g = *phi.grid;
  std::vector<double> rs, ls;
  for (std::size_t j = 0; j < g.size(); ++j) {
    const double r = g.radial(int(j));
    if (r < r_lo || r > r_hi) continue;
    if (!(phi[j] > 0.0))
      throw std::domain_error(
          "decay_rate_fit: nonpositive value inside the fit window");
    rs.push_back(r);
    ls.push_back(std::log(phi[j]));
  }
  if (rs.size() < 3)
    throw std::invalid_argument(
        "decay_rate_fit: fewer than three nodes in the fit window");
  const double n = double(rs.size());
  double sr = 0.0, sl = 0.0;
  for (std::size_t i = 0; i < rs.size(); ++i) {
    sr += rs[i];
    sl += ls[i];
  }
  const double mr = sr / n, ml = sl / n;
  double cov = 0.0, var = 0.0;
  for (std::size_t i = 0; i < rs.size(); ++i) {
    cov += (rs[i] - mr) * (ls[i] - ml);
    var += (rs[i] - mr) * (rs[i] - mr);
  }
  DecayFit fit;
  const double slope = cov / var;
  fit.rate = -slope;
  fit.intercept = ml - slope * mr;
  fit.points = int(rs.size());
  for (std::size_t i = 0; i < rs.size(); ++i)
    fit.max_dev =
        std::max(fit.max_dev, std::abs(ls[i] - (fit.intercept + slope * rs[i])));
  return fit;
}

bool growth_bound_check(const Field& phi, double C, double beta) {
  const Grid& g = *phi.grid;
  if (g.domain.kind != DomainKind::radial_ball)
    throw std::invalid_argument("growth_bound_check: radial grid required");
  const double phi0 = phi[0];
  if (!(phi0 > 0.0))
    throw std::domain_error("growth_bound_check: phi(0) must be positive");
  for (std::size_t j = 0; j < g.size(); ++j) {
    const double cap = C * std::exp(beta * g.radial(int(j))) * phi0;
    if (phi[j] > cap * (1.0 + 1e-12)) return false;
  }
  return true;
}

ExperimentReport simplicity_probe(const GridPtr& grid, const PotentialSpec& V,
                                  double p,
                                  const std::vector<std::uint64_t>& seeds,
                                  const SolverConfig& cfg) {
  if (seeds.empty())
    throw std::invalid_argument("simplicity_probe: need at least one seed");
  if (!(p >= 2.0))
    throw std::invalid_argument(
        "simplicity_probe: simplicity statements assume p >= 2");
  const Field Vf = sample(V, grid);
  std::vector<Field> phis;
  std::vector<double> lambdas;
  for (std::uint64_t s : seeds) {
    SolverConfig c = cfg;
    c.p = p;
    c.init = SolverConfig::Init::random_positive;
    c.rng_seed = s;
    EigenPair ep = principal_eig(grid, Vf, c);
    phis.push_back(std::move(ep.phi));
    lambdas.push_back(ep.lambda);
  }
  double spread = 0.0;
  for (std::size_t a = 0; a < phis.size(); ++a)
    for (std::size_t b = a + 1; b < phis.size(); ++b) {
      double d = 0.0;
      for (std::size_t j = 0; j < grid->size(); ++j)
        d = std::max(d, std::abs(phis[a][j] - phis[b][j]));
      spread = std::max(spread, d);
    }
  const double lmin = *std::min_element(lambdas.begin(), lambdas.end());
  const double lmax = *std::max_element(lambdas.begin(), lambdas.end());

  double window = 0.0;
  for (std::size_t j = 0; j < grid->size(); ++j)
    window = std::max(window, grid->radial(int(j)));
  const PotentialBounds pb = bounds(V, std::max(window, 1.0), 2048);

  ExperimentReport rep;
  rep.name = "simplicity_probe";
  rep.inputs["potential"] = V.id();
  rep.inputs["p"] = num(p);
  rep.inputs["runs"] = num(double(seeds.size()));
  rep.observed["max_sup_distance"] = spread;
  rep.observed["lambda_spread"] = lmax - lmin;
  rep.observed["lambda_mean"] =
      0.5 * (lmin + lmax);
  rep.observed["essential_gap_proxy"] = pb.liminf_inf_est - lmax;
  rep.pass = spread <= simplicity_tol;
  rep.notes = rep.pass
                  ? "independently seeded runs landed on one normalized profile"
                  : "seeded runs disagree beyond tolerance";
  return rep;
}

ExperimentReport spectrum_scan(const PotentialSpec& V, double p,
                               const std::vector<double>& lambdas,
                               const std::vector<double>& radii, int dim,
                               int n_per_unit, const SolverConfig& cfg,
                               double margin) {
  if (lambdas.empty())
    throw std::invalid_argument("spectrum_scan: empty lambda grid");
  if (radii.size() < 2)
    throw std::invalid_argument("spectrum_scan: need at least two radii");
  for (std::size_t k = 0; k + 1 < radii.size(); ++k)
    if (!(radii[k] < radii[k + 1]))
      throw std::invalid_argument("spectrum_scan: radii must increase");
  if (!(radii.front() > 1.0))
    throw std::invalid_argument(
        "spectrum_scan: first radius must exceed the unit source annulus");
  if (!(margin >= 0.0))
    throw std::invalid_argument("spectrum_scan: margin must be >= 0");

  std::vector<DomainSpec> schedule;
  for (double r : radii) schedule.push_back(DomainSpec::radial_ball(dim, r));
  const ExhaustionReport ex = lambda_unbounded(V, p, schedule, n_per_unit, cfg);
  const double lam_inf = ex.lambda_inf;

  SolverConfig c = cfg;
  c.p = p;
  // Stabilization solves need headroom below the profile itself: with the
  // source pinned at the rim, u(0) ~ exp(-omega (R - 1)) can sit near 1e-7
  // on the widest ring while the pointwise solve error is tol_residual / h.
  // Pin those solves to a tight floor regardless of the caller's config; the
  // rejection branch only needs the coercivity check, so it keeps cfg speed.
  SolverConfig cs = c;
  cs.tol_residual = std::min(cfg.tol_residual, 1e-10);
  cs.tol_lambda = std::min(cfg.tol_lambda, 1e-11);
  cs.max_iter = std::max(cfg.max_iter, 800000);

  struct Stage {
    GridPtr grid;
    Field Vf;
    Field f;
  };
  std::vector<Stage> stages;
  for (double R : radii) {
    Stage st;
    st.grid = build_grid(DomainSpec::radial_ball(dim, R),
                         std::max(8, int(std::lround(R * n_per_unit))));
    st.Vf = sample(V, st.grid);
    Field f(st.grid, 0.0);
    const double ctr = R - 0.5, hw = 0.5;
    for (std::size_t j = 0; j < st.grid->size(); ++j) {
      const double t = (st.grid->radial(int(j)) - ctr) / hw;
      const double b = std::max(0.0, 1.0 - t * t);
      f.values[j] = b * b;
    }
    for (int bidx : st.grid->boundary_idx) f.values[bidx] = 0.0;
    st.f = std::move(f);
    stages.push_back(std::move(st));
  }

  ExperimentReport rep;
  rep.name = "spectrum_scan";
  rep.inputs["potential"] = V.id();
  rep.inputs["p"] = num(p);
  rep.inputs["dim"] = num(double(dim));
  rep.inputs["margin"] = num(margin);
  rep.observed["lambda_inf"] = lam_inf;

  const double R0 = radii.front();
  bool ok = true;
  std::ostringstream notes;
  notes << "limit eigenvalue " << lam_inf << ";";
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    const double lam = lambdas[i];
    double status;
    if (lam <= lam_inf - margin) {
      std::vector<double> sups;
      status = 2.0;
      for (const Stage& st : stages) {
        try {
          Field u = solve_source(st.grid, st.Vf, lam, st.f, cs);
          const double u0 = u[0];
          if (!(u0 > 0.0)) {
            status = -1.0;
            break;
          }
          double s = 0.0;
          for (std::size_t j = 0; j < st.grid->size(); ++j)
            if (st.grid->radial(int(j)) <= R0 + 1e-9)
              s = std::max(s, u[j] / u0);
          sups.push_back(s);
        } catch (const CoercivityError&) {
          status = -3.0;
          break;
        }
      }
      if (status == 2.0) {
        const double ratio = sups.back() / sups[sups.size() - 2];
        rep.observed[key("ratio_last", i)] = ratio;
        if (!(ratio <= stabilize_tail && ratio >= 1.0 / stabilize_tail))
          status = -1.0;
      }
      if (status != 2.0) ok = false;
    } else if (lam >= lam_inf + margin) {
      const Stage& st = stages.back();
      try {
        solve_source(st.grid, st.Vf, lam, st.f, c);
        status = -2.0;
        ok = false;
      } catch (const CoercivityError&) {
        status = 1.0;
      }
    } else {
      status = 0.0;
    }
    rep.observed[key("trial_lambda", i)] = lam;
    rep.observed[key("status", i)] = status;
    if (status != 2.0 && status != 1.0 && status != 0.0)
      notes << " lambda=" << lam << " anomalous status " << status << ";";
  }
  rep.pass = ok;
  if (ok)
    notes << " every trial below the limit stabilized, every trial above "
             "was rejected by coercivity";
  rep.notes = notes.str();
  return rep;
}

ExperimentReport max_principle_check(
    const GridPtr& grid, const PotentialSpec& V, double p,
    const std::vector<std::pair<std::string, Field>>& candidates,
    const SolverConfig& cfg) {
  const Grid& g = *grid;
  if (g.domain.kind != DomainKind::radial_ball)
    throw std::invalid_argument("max_principle_check: radial grid required");
  if (candidates.empty())
    throw std::invalid_argument("max_principle_check: no candidates");
  const double R = g.domain.radius;
  const int npu = std::max(32, int(std::lround(g.n / R)));
  const auto schedule = exhaustion_schedule(g.domain.dim, R, 2.0, 3);
  // The limit estimate only feeds the sign decision below; certification
  // grade tolerances would stall the widest ring without sharpening it.
  SolverConfig exc = cfg;
  exc.tol_lambda = std::max(cfg.tol_lambda, 1e-11);
  exc.tol_residual = std::max(cfg.tol_residual, 1e-8);
  const ExhaustionReport ex = lambda_unbounded(V, p, schedule, npu, exc);
  const double lam_inf = ex.lambda_inf;
  const bool positive_mode = lam_inf > 0.0;

  const Field Vf = sample(V, grid);

  ExperimentReport rep;
  rep.name = "max_principle_check";
  rep.inputs["potential"] = V.id();
  rep.inputs["p"] = num(p);
  rep.inputs["mode"] = positive_mode ? "positive_limit" : "sign_counterexample";
  rep.observed["lambda_inf"] = lam_inf;

  int violations = 0, admitted = 0;
  std::ostringstream notes;
  for (const auto& [name, u] : candidates) {
    require_same_grid(u, Vf);
    double umax = -std::numeric_limits<double>::infinity();
    double uabs = 0.0;
    for (std::size_t j = 0; j < g.size(); ++j) {
      umax = std::max(umax, u[j]);
      uabs = std::max(uabs, std::abs(u[j]));
    }
    const auto hats = operator_action_hats(u, Vf, p, cfg.diffusion);
    double worst_hat = 0.0;
    for (double hval : hats) worst_hat = std::max(worst_hat, hval);
    bool grad_vanishes = false;
    for (const CellGrad& cell : g.cells) {
      double n2 = 0.0;
      for (int d = 0; d < cell.comps; ++d) {
        double gc = 0.0;
        for (int t = 0; t < cell.terms[d]; ++t)
          gc += cell.w[d][t] * u[cell.idx[d][t]];
        n2 += gc * gc;
      }
      if (n2 == 0.0) {
        grad_vanishes = true;
        break;
      }
    }
    if (grad_vanishes)
      notes << " " << name
            << ": discrete gradient vanishes on some cell (the nondegeneracy "
               "hypothesis has no discrete analog);";
    const double bdry_tol = std::max(1e-8, 1e-6 * uabs);
    bool bdry_ok = true;
    for (std::size_t j = 0; j < g.size(); ++j)
      if (g.radial(int(j)) >= 0.95 * R && u[j] > bdry_tol) bdry_ok = false;

    double status;
    if (worst_hat > subsolution_tol || !bdry_ok) {
      status = 0.0;
      notes << " " << name << ": skipped ("
            << (worst_hat > subsolution_tol ? "not a weak subsolution"
                                            : "positive near the boundary")
            << ");";
    } else {
      ++admitted;
      if (umax > conclusion_tol) {
        status = -1.0;
        ++violations;
        notes << " " << name << ": exceeds zero by " << umax << ";";
      } else {
        status = 1.0;
      }
    }
    rep.observed["status_" + name] = status;
    rep.observed["max_value_" + name] = umax;
    rep.observed["worst_hat_" + name] = worst_hat;
  }

  if (positive_mode)
    rep.pass = admitted > 0 && violations == 0;
  else
    rep.pass = violations > 0;
  std::ostringstream head;
  head << "limit eigenvalue " << lam_inf
       << (positive_mode ? " > 0: admitted subsolutions must stay <= 0."
                         : " <= 0: expecting a sign violation.");
  rep.notes = head.str() + notes.str();
  return rep;
}

}  // namespace plap
