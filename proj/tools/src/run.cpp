#include "run.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <vector>

#include <json.hpp>

#include "plap/certify.hpp"
#include "plap/experiments.hpp"
#include "plap/limits.hpp"
#include "plap/report_io.hpp"
#include "plap/verify.hpp"
#include "plap/weak_forms.hpp"

namespace plap::cli {
namespace {

using nlohmann::json;

std::string joined(const RunConfig& rc, const std::string& name) {
  return (std::filesystem::path(rc.out_dir) / name).string();
}

json domain_json(const DomainSpec& d, int n) {
  json j;
  switch (d.kind) {
    case DomainKind::interval:
      j = {{"kind", "interval"}, {"a", d.a}, {"b", d.b}};
      break;
    case DomainKind::radial_ball:
      j = {{"kind", "radial_ball"}, {"dim", d.dim}, {"radius", d.radius}};
      break;
    case DomainKind::box2:
      j = {{"kind", "box2"}, {"ax", d.ax}, {"bx", d.bx},
           {"ay", d.ay}, {"by", d.by}};
      break;
  }
  if (n > 0) j["n"] = n;
  return j;
}

json inputs_json(const RunConfig& rc) {
  json j;
  j["command"] = rc.command;
  if (rc.command == "verify-all") return j;
  j["solver"] = {{"p", rc.solver.p},
                 {"tol_lambda", rc.solver.tol_lambda},
                 {"tol_residual", rc.solver.tol_residual},
                 {"max_iter", rc.solver.max_iter},
                 {"seed", rc.solver.rng_seed},
                 {"init", rc.solver.init == SolverConfig::Init::bump
                              ? "bump"
                              : "random_positive"},
                 {"diffusion", rc.solver.diffusion}};
  if (rc.potential) j["potential"] = rc.potential->id();
  if (rc.domain) j["domain"] = domain_json(*rc.domain, rc.domain_n);
  if (rc.has_exhaustion)
    j["exhaustion"] = {{"dim", rc.ex_dim},
                       {"r0", rc.ex_r0},
                       {"factor", rc.ex_factor},
                       {"count", rc.ex_count},
                       {"n_per_unit", rc.ex_npu}};
  return j;
}

void finish(const RunConfig& rc, json& j) {
  if (!rc.emit_json) return;
  write_text_file(joined(rc, "result.json"), j.dump(2) + "\n");
}

int run_eig(const RunConfig& rc, json& j) {
  const GridPtr grid = build_grid(*rc.domain, rc.domain_n);
  const Field V = sample(*rc.potential, grid);
  const EigenPair eig = principal_eig(grid, V, rc.solver);
  j["eigenpair"] = json::parse(to_json(eig));
  write_profile_dat(joined(rc, "eig_profile.dat"), eig.phi,
                    "principal eigenfunction: coordinate(s) value");
  finish(rc, j);
  return 0;
}

int run_eig_rn(const RunConfig& rc, json& j) {
  const auto schedule =
      exhaustion_schedule(rc.ex_dim, rc.ex_r0, rc.ex_factor, rc.ex_count);
  const ExhaustionReport rep = lambda_unbounded(
      *rc.potential, rc.solver.p, schedule, rc.ex_npu, rc.solver);
  j["exhaustion"] = json::parse(to_json(rep));
  if (rc.emit_csv)
    write_text_file(joined(rc, "eig-rn_exhaustion.csv"), to_csv(rep));
  write_xy_dat(joined(rc, "eig-rn_exhaustion.dat"), rep.radii, rep.lambdas,
               "ball eigenvalues: radius lambda");
  finish(rc, j);
  return 0;
}

int run_sweep(const RunConfig& rc, json& j) {
  const EvalDomain base =
      rc.sweep_eval == "fixed"
          ? EvalDomain::fixed_domain(*rc.domain, rc.domain_n)
          : EvalDomain::exhaustion(
                exhaustion_schedule(rc.ex_dim, rc.ex_r0, rc.ex_factor,
                                    rc.ex_count),
                rc.ex_npu);
  const PotentialSpec& V = *rc.potential;
  const double p = rc.solver.p;
  const SweepTable tab = [&] {
    if (rc.sweep_kind == "diffusion")
      return diffusion_sweep(V, p, rc.sweep_alphas, base, rc.solver);
    if (rc.sweep_kind == "dilation")
      return dilation_sweep(V, p, rc.sweep_alphas, base, rc.solver);
    return amplitude_sweep(V, p, rc.sweep_kind == "amplitude_pos" ? 1 : -1,
                           rc.sweep_alphas, base, rc.solver);
  }();
  j["sweep"] = json::parse(to_json(tab));
  const std::string stem = "sweep_" + rc.sweep_kind;
  if (rc.emit_csv) write_text_file(joined(rc, stem + ".csv"), to_csv(tab));
  write_xy_dat(joined(rc, stem + ".dat"), tab.alphas, tab.lambdas,
               rc.sweep_kind + " sweep: alpha lambda");
  finish(rc, j);
  return 0;
}

int run_certify(const RunConfig& rc, json& j) {
  if (rc.certify_witness == "exp_barrier") {
    const double R = rc.domain->radius;
    const int npu =
        std::max(1, static_cast<int>(std::lround(rc.domain_n / R)));
    const Certificate cert =
        lim1_certificate(*rc.potential, rc.solver.p, rc.certify_alpha,
                         rc.certify_eps, R, npu, rc.domain->dim);
    j["certificate"] = json::parse(to_json(cert));
    j["certificate"]["alpha"] = rc.certify_alpha;
    j["certificate"]["eps"] = rc.certify_eps;
    finish(rc, j);
    return 0;
  }
  const GridPtr grid = build_grid(*rc.domain, rc.domain_n);
  const Field Vf = sample(*rc.potential, grid);
  const EigenPair eig = principal_eig(grid, Vf, rc.solver);
  const Certificate lo =
      certify_lower(eig.phi, eig.lambda - rc.certify_shift, Vf, rc.solver.p,
                    rc.solver.diffusion, "eigenfunction");
  const Certificate hi = certify_upper(eig.phi, Vf, rc.solver.p, "eigenfunction");
  j["lambda_hat"] = eig.lambda;
  j["lower"] = json::parse(to_json(lo));
  j["upper"] = json::parse(to_json(hi));
  write_profile_dat(joined(rc, "certify_witness.dat"), eig.phi,
                    "certificate witness: coordinate(s) value");
  finish(rc, j);
  return 0;
}

int run_spectrum(const RunConfig& rc, json& j) {
  std::vector<double> radii(static_cast<size_t>(rc.ex_count));
  for (size_t k = 0; k < radii.size(); ++k)
    radii[k] = rc.ex_r0 * std::pow(rc.ex_factor, static_cast<double>(k));
  const ExperimentReport rep =
      spectrum_scan(*rc.potential, rc.solver.p, rc.spectrum_lambdas, radii,
                    rc.ex_dim, rc.ex_npu, rc.solver, rc.spectrum_margin);
  j["scan"] = json::parse(to_json(rep));
  std::vector<double> statuses(rc.spectrum_lambdas.size());
  for (size_t i = 0; i < statuses.size(); ++i) {
    char key[32];
    std::snprintf(key, sizeof key, "status_%02zu", i);
    statuses[i] = rep.observed.at(key);
  }
  write_xy_dat(joined(rc, "spectrum_scan.dat"), rc.spectrum_lambdas, statuses,
               "generalized-eigenvalue scan: trial_lambda status");
  finish(rc, j);
  return 0;
}

int run_decay(const RunConfig& rc, json& j) {
  const GridPtr grid = build_grid(*rc.domain, rc.domain_n);
  const Field Vf = sample(*rc.potential, grid);
  const EigenPair eig = principal_eig(grid, Vf, rc.solver);
  const DecayFit fit = decay_rate_fit(eig.phi, rc.decay_r_lo, rc.decay_r_hi);
  j["lambda"] = eig.lambda;
  j["fit"] = {{"rate", fit.rate},
              {"intercept", fit.intercept},
              {"max_dev", fit.max_dev},
              {"points", fit.points},
              {"r_lo", rc.decay_r_lo},
              {"r_hi", rc.decay_r_hi}};
  if (rc.growth_c)
    j["growth_ok"] = growth_bound_check(eig.phi, *rc.growth_c, *rc.growth_beta);
  write_profile_dat(joined(rc, "decay_profile.dat"), eig.phi,
                    "eigenfunction profile: r value");
  finish(rc, j);
  return 0;
}

int run_verify_all(const RunConfig& rc, json& j, std::ostream& log) {
  const auto results = run_all_criteria();
  int fails = 0;
  json arr = json::array();
  for (const auto& r : results) {
    if (!r.pass) ++fails;
    char line[32];
    std::snprintf(line, sizeof line, "[%s] %2d ", r.pass ? "PASS" : "FAIL",
                  r.id);
    log << line << r.name << ": " << r.detail << "\n";
    arr.push_back({{"id", r.id},
                   {"name", r.name},
                   {"pass", r.pass},
                   {"detail", r.detail}});
  }
  log << (results.size() - static_cast<size_t>(fails)) << "/" << results.size()
      << " criteria passed\n";
  j["criteria"] = arr;
  j["fails"] = fails;
  finish(rc, j);
  return fails == 0 ? 0 : 4;
}

}  // namespace

int run(const RunConfig& rc, std::ostream& log) {
  try {
    std::filesystem::create_directories(rc.out_dir);
  } catch (const std::filesystem::filesystem_error& e) {
    throw ConfigError(std::string("cannot create out_dir: ") + e.what());
  }
  json j;
  j["inputs"] = inputs_json(rc);
  if (rc.command == "eig") return run_eig(rc, j);
  if (rc.command == "eig-rn") return run_eig_rn(rc, j);
  if (rc.command == "sweep") return run_sweep(rc, j);
  if (rc.command == "certify") return run_certify(rc, j);
  if (rc.command == "spectrum") return run_spectrum(rc, j);
  if (rc.command == "decay") return run_decay(rc, j);
  return run_verify_all(rc, j, log);
}

}  // namespace plap::cli
