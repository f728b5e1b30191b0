#include "plap/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "plap/certify.hpp"
#include "plap/eigensolve.hpp"
#include "plap/experiments.hpp"
#include "plap/field.hpp"
#include "plap/grid.hpp"
#include "plap/limits.hpp"
#include "plap/potential.hpp"
#include "plap/report_io.hpp"
#include "plap/weak_forms.hpp"

namespace plap {

namespace {

constexpr double pi = 3.14159265358979323846;

double pi_p(double p) { return 2.0 * pi / (p * std::sin(pi / p)); }

double rel_to(double a, double b) {
  return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

std::string num(double v) {
  std::ostringstream out;
  out.precision(10);
  out << v;
  return out.str();
}

// reference instances on bounded grids, each solved once and shared between
// the oracle checks and the certificate sandwich
struct Instance {
  GridPtr grid;
  Field V;
  double p = 2.0;
  EigenPair eig;
};

SolverConfig tight_cfg() {
  SolverConfig c;
  c.tol_lambda = 1e-13;
  c.tol_residual = 1e-10;
  c.max_iter = 600000;
  return c;
}

class Shared {
 public:
  const Instance& interval_p2() {
    return get(0, [&] {
      return make(DomainSpec::interval(0.0, 1.0), 1024, 2.0, nullptr);
    });
  }
  const Instance& interval_p2_fine() {
    return get(1, [&] {
      // quotient error is quadratic in the residual, so 1e-8 leaves the
      // Richardson combination orders below its 1e-4 relative target
      SolverConfig c;
      c.tol_lambda = 1e-11;
      c.tol_residual = 1e-8;
      c.max_iter = 600000;
      return make(DomainSpec::interval(0.0, 1.0), 2048, 2.0, nullptr, &c);
    });
  }
  const Instance& interval_p3() {
    return get(2, [&] {
      const Instance& base = interval_p2();
      return make(DomainSpec::interval(0.0, 1.0), 1024, 3.0, &base.eig.phi);
    });
  }
  const Instance& disk_p2() {
    return get(3, [&] {
      return make(DomainSpec::radial_ball(2, 1.0), 1024, 2.0, nullptr);
    });
  }

 private:
  static Instance make(const DomainSpec& d, int n, double p,
                       const Field* warm, const SolverConfig* cfg = nullptr) {
    Instance inst;
    inst.grid = build_grid(d, n);
    inst.V = Field(inst.grid, 0.0);
    inst.p = p;
    SolverConfig c = cfg ? *cfg : tight_cfg();
    c.p = p;
    inst.eig = principal_eig(inst.grid, inst.V, c, warm);
    return inst;
  }

  struct Slot {
    std::optional<Instance> inst;
    std::optional<std::string> error;
  };

  const Instance& get(int slot, const std::function<Instance()>& build) {
    Slot& s = slots_[static_cast<std::size_t>(slot)];
    if (s.error) throw SolverError(*s.error);
    if (!s.inst) {
      try {
        s.inst = build();
      } catch (const std::exception& e) {
        s.error = e.what();
        throw;
      }
    }
    return *s.inst;
  }

  std::array<Slot, 4> slots_;
};

std::array<GridPtr, 3> small_grids() {
  return {build_grid(DomainSpec::interval(-1.0, 2.0), 16),
          build_grid(DomainSpec::radial_ball(2, 1.5), 12),
          build_grid(DomainSpec::box2(0.0, 1.0, 0.0, 1.3), 8)};
}

void criterion_interval_linear(Shared& sh, CriterionResult& r) {
  const Instance& a = sh.interval_p2();
  const Instance& af = sh.interval_p2_fine();
  const double exact = pi * pi;
  const double rel_raw = std::abs(a.eig.lambda - exact) / exact;
  const double rich = (4.0 * af.eig.lambda - a.eig.lambda) / 3.0;
  const double rel_rich = std::abs(rich - exact) / exact;
  r.pass = rel_raw <= 1e-3 && rel_rich <= 1e-4;
  r.detail = "lambda=" + num(a.eig.lambda) + " rel=" + num(rel_raw) +
             " richardson_rel=" + num(rel_rich) + " (tol 1e-3 / 1e-4)";
}

void criterion_interval_plap(Shared& sh, CriterionResult& r) {
  const Instance& b = sh.interval_p3();
  const double exact = 2.0 * std::pow(pi_p(3.0), 3.0);
  const double oracle = shooting_eigenvalue_1d(3.0);
  const double rel_solver = std::abs(b.eig.lambda - exact) / exact;
  const double rel_oracle = std::abs(oracle - exact) / exact;
  const double rel_cross = std::abs(b.eig.lambda - oracle) / oracle;
  r.pass = rel_solver <= 5e-3 && rel_oracle <= 1e-3 && rel_cross <= 5e-3;
  r.detail = "lambda=" + num(b.eig.lambda) + " shooting=" + num(oracle) +
             " closed_form=" + num(exact) + " rel=" + num(rel_solver) +
             " cross_rel=" + num(rel_cross);
}

void criterion_disk_linear(Shared& sh, CriterionResult& r) {
  const Instance& d = sh.disk_p2();
  const double j0 = bessel_j0_first_zero();
  const double exact = j0 * j0;
  const double rel = std::abs(d.eig.lambda - exact) / exact;
  r.pass = rel <= 5e-3;
  r.detail = "lambda=" + num(d.eig.lambda) + " j01^2=" + num(exact) +
             " rel=" + num(rel) + " (tol 5e-3)";
}

void criterion_exact_identities(CriterionResult& r) {
  const auto grids = small_grids();
  const std::array<double, 4> ps = {1.5, 2.0, 3.0, 4.0};
  std::mt19937_64 rng(1234);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  double worst = 0.0;
  for (int k = 0; k < 20; ++k) {
    const GridPtr& g = grids[static_cast<std::size_t>(k % 3)];
    const double p = ps[static_cast<std::size_t>(k % 4)];
    Field u(g), V(g);
    for (std::size_t j = 0; j < g->size(); ++j) {
      u[j] = g->is_boundary[j] ? 0.0 : 0.5 + 1.5 * u01(rng);
      V[j] = -2.0 + 4.0 * u01(rng);
    }
    const double base = rayleigh(u, V, p);

    const double cs = std::pow(10.0, -3.0 + 6.0 * u01(rng));
    Field cu(g);
    for (std::size_t j = 0; j < g->size(); ++j) cu[j] = cs * u[j];
    worst = std::max(worst, rel_to(rayleigh(cu, V, p), base));

    const double shift = -5.0 + 10.0 * u01(rng);
    Field Vs(g);
    for (std::size_t j = 0; j < g->size(); ++j) Vs[j] = V[j] + shift;
    worst = std::max(worst, rel_to(rayleigh(u, Vs, p), base + shift));

    const double al = std::pow(10.0, -2.0 + 4.0 * u01(rng));
    Field Va(g);
    for (std::size_t j = 0; j < g->size(); ++j) Va[j] = V[j] / al;
    worst = std::max(worst, rel_to(rayleigh(u, V, p, al),
                                   al * rayleigh(u, Va, p)));
  }
  r.pass = worst <= 1e-12;
  r.detail = "20 instances, worst relative defect " + num(worst) +
             " (tol 1e-12)";
}

void criterion_gradient_fd(CriterionResult& r) {
  const auto grids = small_grids();
  const std::array<double, 4> ps = {1.5, 2.0, 3.0, 4.0};
  std::mt19937_64 rng(777);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const GridPtr& g = grids[static_cast<std::size_t>(i % 3)];
    const double p = ps[static_cast<std::size_t>(i / 25)];
    Field u(g), V(g);
    for (std::size_t j = 0; j < g->size(); ++j) {
      u[j] = g->is_boundary[j] ? 0.0 : 0.5 + 1.5 * u01(rng);
      V[j] = -2.0 + 4.0 * u01(rng);
    }
    const Field grad = energy_grad(u, V, p);
    double scale = 1.0;
    for (int j : g->interior_idx) scale = std::max(scale, std::abs(grad[j]));
    for (int j : g->interior_idx) {
      const double delta =
          1e-5 * std::max(1.0, std::abs(u[static_cast<std::size_t>(j)]));
      Field up = u, um = u;
      up[static_cast<std::size_t>(j)] += delta;
      um[static_cast<std::size_t>(j)] -= delta;
      const double fd =
          (p_energy(up, V, p) - p_energy(um, V, p)) / (2.0 * delta);
      worst = std::max(worst, std::abs(grad[j] - fd) / scale);
    }
    for (int j : g->boundary_idx)
      worst = std::max(worst, std::abs(grad[j]));
  }
  r.pass = worst <= 1e-6;
  r.detail = "100 fields, p in {1.5,2,3,4}, worst relative error " +
             num(worst) + " (tol 1e-6)";
}

void criterion_exhaustion_monotone(CriterionResult& r) {
  SolverConfig cfg;
  cfg.tol_lambda = 1e-11;
  cfg.tol_residual = 1e-8;
  cfg.max_iter = 200000;
  const auto rep = lambda_unbounded(PotentialSpec::bump(), 2.0,
                                    exhaustion_schedule(1, 2.0, 2.0, 5), 32,
                                    cfg);
  const double lam_min =
      *std::min_element(rep.lambdas.begin(), rep.lambdas.end());
  r.pass = rep.monotone && rep.diffs.front() > 0.0 &&
           rep.lambda_inf >= -0.5 - 1e-9 &&
           rep.lambda_inf <= lam_min + 1e-12;
  std::ostringstream d;
  d << "lambdas";
  for (double l : rep.lambdas) d << " " << num(l);
  d << " -> " << num(rep.lambda_inf)
    << (rep.monotone ? " (monotone)" : " (NOT monotone)");
  r.detail = d.str();
}

void criterion_small_diffusion(CriterionResult& r) {
  SolverConfig cfg;
  cfg.tol_lambda = 1e-14;
  cfg.tol_residual = 1e-9;
  cfg.max_iter = 400000;
  std::vector<double> alphas;
  for (int k = 0; k <= 6; ++k) alphas.push_back(std::pow(10.0, -3.0 + 0.5 * k));
  const auto base =
      EvalDomain::fixed_domain(DomainSpec::radial_ball(1, 4.0), 256);
  const auto tab = diffusion_sweep(PotentialSpec::bump(), 2.0, alphas, base, cfg);
  const double at_min = tab.lambdas.front();
  double worst_dd = -1e300;
  for (std::size_t k = 0; k + 2 < tab.alphas.size(); ++k) {
    const double s1 = (tab.lambdas[k + 1] - tab.lambdas[k]) /
                      (tab.alphas[k + 1] - tab.alphas[k]);
    const double s2 = (tab.lambdas[k + 2] - tab.lambdas[k + 1]) /
                      (tab.alphas[k + 2] - tab.alphas[k + 1]);
    worst_dd = std::max(worst_dd, (s2 - s1) / (tab.alphas[k + 2] - tab.alphas[k]));
  }
  r.pass = std::abs(at_min + 0.5) <= 0.05 && worst_dd <= 1e-6;
  r.detail = "lambda(1e-3)=" + num(at_min) +
             " (target -0.5 +- 0.05), max second divided difference " +
             num(worst_dd) + " (tol 1e-6)";
}

void criterion_fixed_domain_blowup(CriterionResult& r) {
  SolverConfig cfg;
  cfg.tol_lambda = 1e-12;
  cfg.tol_residual = 1e-9;
  cfg.max_iter = 200000;
  const std::vector<double> alphas = {1e2, 1e3, 1e4};
  const auto base =
      EvalDomain::fixed_domain(DomainSpec::radial_ball(1, 2.0), 128);
  const auto tab = diffusion_sweep(PotentialSpec::bump(), 2.0, alphas, base, cfg);
  double min_ratio = 1e300;
  for (std::size_t k = 0; k < alphas.size(); ++k)
    min_ratio = std::min(min_ratio, tab.lambdas[k] / tab.alphas[k]);
  r.pass = min_ratio >= 0.1;
  r.detail = "min lambda/alpha on B_2 = " + num(min_ratio) +
             " (needs >= 0.1; discrete Poincare constant ~0.617)";
}

void criterion_large_diffusion_threshold(CriterionResult& r) {
  SolverConfig cfg;
  cfg.tol_lambda = 1e-12;
  cfg.tol_residual = 1e-8;
  cfg.max_iter = 300000;
  const PotentialSpec bump = PotentialSpec::bump();

  const auto big = EvalDomain::exhaustion(exhaustion_schedule(1, 8.0, 2.0, 4), 32);
  const double lam_big =
      diffusion_sweep(bump, 2.0, {1e3}, big, cfg).lambdas.front();
  const bool ok_big = std::abs(lam_big - 0.5) <= 0.05;

  const auto mid = EvalDomain::exhaustion(exhaustion_schedule(1, 16.0, 2.0, 3), 32);
  const auto dil = dilation_sweep(bump, 2.0, {1e-2, 1e2}, mid, cfg);
  const bool ok_dil = std::abs(dil.lambdas.front() + 0.5) <= 0.05 &&
                      std::abs(dil.lambdas.back() - 0.5) <= 0.05;

  SolverConfig cheap;
  cheap.tol_lambda = 1e-11;
  cheap.tol_residual = 1e-8;
  cheap.max_iter = 200000;
  const auto small = EvalDomain::exhaustion(exhaustion_schedule(1, 4.0, 2.0, 3), 32);
  const auto fam = [&](double alpha) {
    return lambda_on(bump.dilated(alpha), 2.0, small, cheap);
  };
  const double astar = find_threshold(fam, 1e-2, 1e2, 1e-3);
  const double below = fam(astar - 1e-3), above = fam(astar + 1e-3);
  const bool ok_thr = below < 0.0 && above > 0.0;

  r.pass = ok_big && ok_dil && ok_thr;
  r.detail = "lambda(alpha=1e3)=" + num(lam_big) + ", dilation endpoints " +
             num(dil.lambdas.front()) + " / " + num(dil.lambdas.back()) +
             ", threshold alpha*=" + num(astar) + " with lambda(a*-+1e-3)=" +
             num(below) + "/" + num(above);
}

void criterion_amplitude_limits(CriterionResult& r) {
  SolverConfig cfg;
  cfg.tol_lambda = 1e-12;
  cfg.tol_residual = 1e-8;
  cfg.max_iter = 300000;
  const auto base =
      EvalDomain::fixed_domain(DomainSpec::radial_ball(1, 8.0), 512);
  const PotentialSpec bump = PotentialSpec::bump();
  const double plus =
      amplitude_sweep(bump, 2.0, +1, {1e3}, base, cfg).lambdas.front();
  const double minus =
      amplitude_sweep(bump, 2.0, -1, {1e3}, base, cfg).lambdas.front();
  r.pass = std::abs(plus + 0.5) <= 0.05 && std::abs(minus - 0.5) <= 0.05;
  r.detail = "lambda/alpha at +1e3: " + num(plus) +
             " (inf V = -0.5), at -1e3: " + num(minus) + " (sup V = +0.5)";
}

void criterion_certificate_sandwich(Shared& sh, CriterionResult& r) {
  const std::array<const Instance*, 3> cases = {
      &sh.interval_p2(), &sh.interval_p3(), &sh.disk_p2()};
  bool ok = true;
  std::ostringstream d;
  for (const Instance* c : cases) {
    const auto lo =
        certify_lower(c->eig.phi, c->eig.lambda - 1e-6, c->V, c->p, 1.0,
                      "eigenfunction");
    const auto hi = certify_upper(c->eig.phi, c->V, c->p, "eigenfunction");
    const bool this_ok = lo.valid && hi.bound <= c->eig.lambda + 1e-6 &&
                         lo.bound <= hi.bound + 1e-9;
    ok = ok && this_ok;
    d << "[p=" << num(c->p) << " " << num(lo.bound) << " <= " << num(hi.bound)
      << " margin=" << num(lo.margin) << (this_ok ? " ok" : " FAIL") << "] ";
  }
  r.pass = ok;
  r.detail = d.str();
}

void criterion_tail_decay(CriterionResult& r) {
  SolverConfig cfg;
  cfg.tol_lambda = 1e-12;
  cfg.tol_residual = 1e-9;
  cfg.max_iter = 300000;
  const auto grid = build_grid(DomainSpec::radial_ball(1, 16.0), 512);
  const PotentialSpec well = PotentialSpec::radial_well(-1.0, 1.0, 1.0);
  const EigenPair e = principal_eig(grid, sample(well, grid), cfg);
  const double mu = (1.0 - e.lambda) * (1.0 - 1e-6);
  const double omega = std::pow(mu / (1.0 * (2.0 - 1.0)), 1.0 / 2.0);
  const DecayFit fit = decay_rate_fit(e.phi, 3.0, 8.0);
  r.pass = e.lambda < 1.0 - mu && fit.rate >= 0.9 * omega;
  r.detail = "lambda=" + num(e.lambda) + " target rate " + num(omega) +
             ", fitted " + num(fit.rate) + " over [3,8] (" +
             std::to_string(fit.points) + " nodes, max_dev " +
             num(fit.max_dev) + ")";
}

void criterion_simplicity(CriterionResult& r) {
  SolverConfig cfg;
  cfg.tol_lambda = 1e-11;
  cfg.tol_residual = 1e-8;
  cfg.max_iter = 300000;
  const std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5};
  const auto ga = build_grid(DomainSpec::radial_ball(1, 16.0), 512);
  const auto rep_a = simplicity_probe(
      ga, PotentialSpec::radial_well(-1.0, 1.0, 1.0), 2.0, seeds, cfg);
  const auto gb = build_grid(DomainSpec::interval(0.0, 1.0), 256);
  const auto rep_b =
      simplicity_probe(gb, PotentialSpec::constant(0.0), 3.0, seeds, cfg);
  r.pass = rep_a.pass && rep_b.pass;
  r.detail = "sup-distance across 5 seeds: well p=2 " +
             num(rep_a.observed.at("max_sup_distance")) + ", interval p=3 " +
             num(rep_b.observed.at("max_sup_distance")) + " (tol 1e-4)";
}

void criterion_spectrum_interval(CriterionResult& r) {
  SolverConfig cfg;
  cfg.tol_lambda = 1e-11;
  cfg.tol_residual = 1e-8;
  cfg.max_iter = 200000;
  const PotentialSpec V0 = PotentialSpec::constant(0.0);
  const std::vector<DomainSpec> schedule = exhaustion_schedule(1, 3.0, 2.0, 3);
  const double lam_inf = lambda_unbounded(V0, 2.0, schedule, 32, cfg).lambda_inf;
  const std::vector<double> lams = {lam_inf - 1.0, -0.5,  -0.25, lam_inf,
                                    0.25,          0.5,   1.0};
  const auto rep =
      spectrum_scan(V0, 2.0, lams, {3.0, 6.0, 12.0}, 1, 32, cfg, 0.1);
  const std::array<double, 7> want = {2, 2, 2, 0, 1, 1, 1};
  bool statuses_ok = true;
  std::ostringstream d;
  d << "lambda_inf=" << num(lam_inf) << " statuses";
  for (std::size_t i = 0; i < want.size(); ++i) {
    char k[16];
    std::snprintf(k, sizeof k, "status_%02zu", i);
    const double got = rep.observed.at(k);
    statuses_ok = statuses_ok && got == want[i];
    d << " " << got;
  }
  d << " (want 2 2 2 0 1 1 1)";
  r.pass = rep.pass && statuses_ok;
  r.detail = d.str();
}

void criterion_max_principle(CriterionResult& r) {
  // positive limit eigenvalue: admitted subsolutions must stay nonpositive
  SolverConfig cfg_pos;
  cfg_pos.tol_lambda = 1e-12;
  cfg_pos.tol_residual = 1e-9;
  cfg_pos.max_iter = 300000;
  const auto gp = build_grid(DomainSpec::radial_ball(1, 4.0), 128);
  const PotentialSpec vone = PotentialSpec::constant(1.0);
  const EigenPair ep = principal_eig(gp, sample(vone, gp), cfg_pos);
  Field neg_eig(gp), pos_bump(gp), zero(gp), neg_const(gp);
  for (std::size_t j = 0; j < gp->size(); ++j) {
    neg_eig[j] = -ep.phi[j];
    pos_bump[j] = ep.phi[j];
    neg_const[j] = -1.0;
  }
  std::vector<std::pair<std::string, Field>> suite;
  suite.emplace_back("neg_eigenfunction", neg_eig);
  suite.emplace_back("zero", zero);
  suite.emplace_back("neg_constant", neg_const);
  suite.emplace_back("pos_bump", pos_bump);
  const auto rep_pos = max_principle_check(gp, vone, 2.0, suite, cfg_pos);
  const bool pos_ok = rep_pos.pass &&
                      rep_pos.observed.at("status_neg_eigenfunction") == 1 &&
                      rep_pos.observed.at("status_zero") == 1 &&
                      rep_pos.observed.at("status_neg_constant") == 1 &&
                      rep_pos.observed.at("status_pos_bump") == 0;

  // negative limit eigenvalue: the positive eigenfunction is an admitted
  // subsolution violating the conclusion, so the sign condition is sharp
  SolverConfig cfg_neg;
  cfg_neg.tol_lambda = 1e-13;
  cfg_neg.tol_residual = 1e-12;
  cfg_neg.max_iter = 600000;
  const auto gc = build_grid(DomainSpec::radial_ball(1, 16.0), 512);
  const PotentialSpec vwell = PotentialSpec::radial_well(-1.0, 1.0, 1.0);
  const EigenPair ec = principal_eig(gc, sample(vwell, gc), cfg_neg);
  std::vector<std::pair<std::string, Field>> counter;
  counter.emplace_back("pos_eigenfunction", ec.phi);
  const auto rep_neg = max_principle_check(gc, vwell, 2.0, counter, cfg_neg);
  const bool neg_ok = rep_neg.pass &&
                      rep_neg.observed.at("status_pos_eigenfunction") == -1;

  r.pass = pos_ok && neg_ok;
  r.detail = std::string("positive mode ") + (pos_ok ? "ok" : "FAIL") +
             " (lambda_inf=" + num(rep_pos.observed.at("lambda_inf")) +
             "), counter mode " + (neg_ok ? "ok" : "FAIL") + " (lambda_inf=" +
             num(rep_neg.observed.at("lambda_inf")) + ")";
}

void criterion_cutoff_stability(CriterionResult& r) {
  SolverConfig cfg;
  cfg.tol_lambda = 1e-11;
  cfg.tol_residual = 1e-8;
  cfg.max_iter = 300000;
  const PotentialSpec bump = PotentialSpec::bump();
  std::vector<double> ratios;
  for (int n : {256, 512, 1024}) {
    const auto grid = build_grid(DomainSpec::radial_ball(1, 16.0), n);
    const EigenPair e = principal_eig(grid, sample(bump, grid), cfg);
    Field psi(grid);
    for (std::size_t j = 0; j < grid->size(); ++j) {
      const double rr = grid->radial(static_cast<int>(j));
      psi[j] = rr <= 8.0 ? 1.0 : std::max(0.0, (12.0 - rr) / 4.0);
    }
    const auto [lhs, rhs] =
        cutoff_inequality(e.phi, e.lambda - 1.0, e.lambda, psi, 2.0);
    if (!(std::isfinite(lhs) && std::isfinite(rhs)) || lhs <= 0.0 || rhs <= 0.0) {
      r.pass = false;
      r.detail = "degenerate cutoff pair lhs=" + num(lhs) + " rhs=" + num(rhs);
      return;
    }
    ratios.push_back(lhs / rhs);
  }
  const double lo = *std::min_element(ratios.begin(), ratios.end());
  const double hi = *std::max_element(ratios.begin(), ratios.end());
  r.pass = hi / lo < 2.0;
  r.detail = "lhs/rhs at n=256,512,1024: " + num(ratios[0]) + ", " +
             num(ratios[1]) + ", " + num(ratios[2]) + " (spread x" +
             num(hi / lo) + ", needs < 2)";
}

void criterion_determinism(CriterionResult& r) {
  const auto pipeline = []() {
    SolverConfig cfg;
    cfg.tol_lambda = 1e-10;
    cfg.tol_residual = 1e-7;
    cfg.max_iter = 100000;
    const PotentialSpec bump = PotentialSpec::bump();
    const auto grid = build_grid(DomainSpec::radial_ball(1, 4.0), 128);
    const Field Vf = sample(bump, grid);
    const EigenPair e = principal_eig(grid, Vf, cfg);
    std::ostringstream out;
    out << to_json(e);
    const auto base = EvalDomain::fixed_domain(DomainSpec::radial_ball(1, 4.0), 128);
    const auto tab = diffusion_sweep(bump, 2.0, {0.5, 1.0, 2.0}, base, cfg);
    out << to_json(tab) << to_csv(tab);
    out << to_json(certify_lower(e.phi, e.lambda - 1e-6, Vf, 2.0));
    const auto rep = lambda_unbounded(bump, 2.0,
                                      exhaustion_schedule(1, 2.0, 2.0, 3), 32,
                                      cfg);
    out << to_json(rep) << to_csv(rep);
    return out.str();
  };
  const std::string first = pipeline();
  const std::string second = pipeline();
  r.pass = !first.empty() && first == second;
  r.detail = "two pipeline runs, " + std::to_string(first.size()) +
             " bytes each, " + (r.pass ? "byte-identical" : "DIFFER");
}

CriterionResult run_one(int id, const std::string& name,
                        const std::function<void(CriterionResult&)>& fn) {
  CriterionResult r;
  r.id = id;
  r.name = name;
  try {
    fn(r);
  } catch (const std::exception& e) {
    r.pass = false;
    r.detail = r.detail.empty() ? std::string("raised: ") + e.what()
                                : r.detail + " | raised: " + e.what();
  }
  return r;
}

}  // namespace

std::vector<CriterionResult> run_all_criteria() {
  Shared sh;
  std::vector<CriterionResult> out;
  out.push_back(run_one(1, "interval-linear-oracle",
                        [&](CriterionResult& r) { criterion_interval_linear(sh, r); }));
  out.push_back(run_one(2, "interval-plap-oracle",
                        [&](CriterionResult& r) { criterion_interval_plap(sh, r); }));
  out.push_back(run_one(3, "disk-linear-oracle",
                        [&](CriterionResult& r) { criterion_disk_linear(sh, r); }));
  out.push_back(run_one(4, "exact-identities", criterion_exact_identities));
  out.push_back(run_one(5, "gradient-fd-check", criterion_gradient_fd));
  out.push_back(run_one(6, "exhaustion-monotone", criterion_exhaustion_monotone));
  out.push_back(run_one(7, "small-diffusion-limit", criterion_small_diffusion));
  out.push_back(run_one(8, "fixed-domain-blowup", criterion_fixed_domain_blowup));
  out.push_back(run_one(9, "large-diffusion-threshold",
                        criterion_large_diffusion_threshold));
  out.push_back(run_one(10, "amplitude-limits", criterion_amplitude_limits));
  out.push_back(run_one(11, "certificate-sandwich",
                        [&](CriterionResult& r) { criterion_certificate_sandwich(sh, r); }));
  out.push_back(run_one(12, "tail-decay-rate", criterion_tail_decay));
  out.push_back(run_one(13, "simplicity-seeds", criterion_simplicity));
  out.push_back(run_one(14, "spectrum-interval", criterion_spectrum_interval));
  out.push_back(run_one(15, "max-principle-probe", criterion_max_principle));
  out.push_back(run_one(16, "cutoff-ratio-stability", criterion_cutoff_stability));
  out.push_back(run_one(17, "determinism", criterion_determinism));
  return out;
}

double shooting_eigenvalue_1d(double p, int steps) {
  if (!(p > 1.0)) throw std::invalid_argument("shooting needs p > 1");
  if (steps < 16) throw std::invalid_argument("shooting needs steps >= 16");
  const double q = p / (p - 1.0);
  // u' = |v|^{q-2} v, v' = -lambda |u|^{p-2} u; u(0)=0, v(0)=1
  const auto endpoint = [&](double lambda) {
    double u = 0.0, v = 1.0;
    const double h = 1.0 / steps;
    for (int i = 0; i < steps; ++i) {
      const auto fu = [&](double vv) { return phi_p(vv, q); };
      const auto fv = [&](double uu) { return -lambda * phi_p(uu, p); };
      const double k1u = fu(v), k1v = fv(u);
      const double k2u = fu(v + 0.5 * h * k1v), k2v = fv(u + 0.5 * h * k1u);
      const double k3u = fu(v + 0.5 * h * k2v), k3v = fv(u + 0.5 * h * k2u);
      const double k4u = fu(v + h * k3v), k4v = fv(u + h * k3u);
      u += h / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
      v += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
    }
    return u;
  };
  double lo = 1.0;
  if (!(endpoint(lo) > 0.0))
    throw std::runtime_error("shooting bracket: endpoint already negative at lambda=1");
  double hi = 2.0 * lo;
  while (endpoint(hi) > 0.0) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e6) throw std::runtime_error("shooting bracket: no sign change below 1e6");
  }
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (endpoint(mid) > 0.0)
      lo = mid;
    else
      hi = mid;
    if (hi - lo < 1e-13 * hi) break;
  }
  return 0.5 * (lo + hi);
}

double bessel_j0_first_zero() {
  double lo = 2.0, hi = 3.0;
  for (int i = 0; i < 100; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (std::cyl_bessel_j(0.0, mid) > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace plap
