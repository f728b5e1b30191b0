#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "plap/eigensolve.hpp"
#include "plap/potential.hpp"

namespace plap {

struct ExhaustionReport {
  std::vector<double> radii;
  std::vector<double> lambdas;
  std::vector<double> diffs;  // lambda_k - lambda_{k+1}
  double lambda_inf = 0.0;
  bool monotone = false;
};

enum class SweepKind { diffusion, dilation, amplitude_pos, amplitude_neg };

struct SweepTable {
  SweepKind kind = SweepKind::diffusion;
  std::vector<double> alphas;
  std::vector<double> lambdas;
  std::string note;
};

/// Where a sweep evaluates its eigenvalues: one fixed grid, or an exhaustion
/// whose extrapolated limit stands in for the unbounded domain.
struct EvalDomain {
  std::optional<DomainSpec> fixed;
  int n_fixed = 0;
  std::vector<DomainSpec> schedule;
  int n_per_unit = 32;

  static EvalDomain fixed_domain(const DomainSpec& d, int n);
  static EvalDomain exhaustion(std::vector<DomainSpec> schedule, int n_per_unit);
};

/// Eigenvalues along a growing ball schedule, each solve warm-started by the
/// previous eigenfunction, with a geometric-tail fit of the limit on the
/// last three values when the decrements still shrink. A non-monotone
/// sequence is reported through the monotone flag, not an exception.
ExhaustionReport lambda_unbounded(const PotentialSpec& V, double p,
                                  const std::vector<DomainSpec>& schedule,
                                  int n_per_unit, const SolverConfig& cfg);

/// lambda(-alpha Lap_p + V) for each alpha, computed as
/// alpha * lambda(K_{V/alpha}); the identity is exact in the discretization
/// and keeps every solve at unit scale.
SweepTable diffusion_sweep(const PotentialSpec& V, double p,
                           const std::vector<double>& alphas,
                           const EvalDomain& base, const SolverConfig& cfg);

/// lambda(K_{V(alpha x)}) for each alpha. The small-alpha limit statement
/// needs V(0) = inf V; a violation is noted on the table, not an error.
SweepTable dilation_sweep(const PotentialSpec& V, double p,
                          const std::vector<double>& alphas,
                          const EvalDomain& base, const SolverConfig& cfg);

/// lambda(K_{sign*alpha*V}) / (sign*alpha) for each alpha, evaluated through
/// the scaled operator -(1/alpha) Lap_p + sign*V, so the tabulated values
/// approach inf V (sign +1) and sup V (sign -1).
SweepTable amplitude_sweep(const PotentialSpec& V, double p, int sign,
                           const std::vector<double>& alphas,
                           const EvalDomain& base, const SolverConfig& cfg);

/// Sign-change bisection for a continuous family alpha -> lambda(alpha).
/// Requires lambda(lo) < 0 < lambda(hi); bisects until the bracket is at
/// most tol wide and returns its midpoint.
double find_threshold(const std::function<double(double)>& lambda_at,
                      double lo, double hi, double tol);

/// Single eigenvalue of the family member on an EvalDomain (fixed grid or
/// extrapolated exhaustion limit). Shared by the sweeps and the threshold
/// search.
double lambda_on(const PotentialSpec& V, double p, const EvalDomain& base,
                 const SolverConfig& cfg);

}  // namespace plap
