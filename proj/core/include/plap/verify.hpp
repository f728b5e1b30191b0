#pragma once

#include <string>
#include <vector>

namespace plap {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
};

/// Full acceptance suite: every numbered check with its pinned tolerances.
/// Never throws; a criterion that raises is reported as failed with the
/// exception text in detail.
std::vector<CriterionResult> run_all_criteria();

/// Independent 1-D oracle for the principal Dirichlet eigenvalue of
/// -(|u'|^{p-2}u')' on (0,1): shooting with RK4 on the first-order system
/// u' = |v|^{q-2} v, v' = -lambda |u|^{p-2} u (q conjugate to p), bisecting
/// lambda on the sign of u(1). Closed form: (p-1) pi_p^p.
double shooting_eigenvalue_1d(double p, int steps = 4096);

/// First positive zero of the Bessel function J_0, by bisection on [2,3];
/// squared it is the unit-disk Dirichlet eigenvalue of the Laplacian.
double bessel_j0_first_zero();

}  // namespace plap
