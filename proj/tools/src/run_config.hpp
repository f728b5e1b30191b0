#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "plap/eigensolve.hpp"
#include "plap/grid.hpp"
#include "plap/potential.hpp"

namespace plap::cli {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Everything a single command run needs, resolved and validated.
struct RunConfig {
  std::string command;
  std::string out_dir = ".";
  bool emit_json = true;
  bool emit_csv = true;
  SolverConfig solver;

  std::optional<DomainSpec> domain;
  int domain_n = 0;
  std::optional<PotentialSpec> potential;

  bool has_exhaustion = false;
  int ex_dim = 1;
  double ex_r0 = 2.0;
  double ex_factor = 2.0;
  int ex_count = 4;
  int ex_npu = 32;

  std::string sweep_kind;
  std::vector<double> sweep_alphas;
  std::string sweep_eval;  // fixed | exhaustion

  double certify_shift = 1e-6;
  std::string certify_witness = "eigenfunction";
  double certify_alpha = 1.0;
  double certify_eps = 0.05;

  std::vector<double> spectrum_lambdas;
  double spectrum_margin = 0.05;

  double decay_r_lo = 0.0;
  double decay_r_hi = 0.0;
  std::optional<double> growth_c;
  std::optional<double> growth_beta;
};

/// Strict flat key-value parser: `key = value` lines, `#` comments, every
/// key checked against the registry of the chosen command, deterministic
/// errors naming the offending line. Throws ConfigError.
RunConfig parse_config(const std::string& text);

/// "A..B log N", "A..B lin N", a comma list, or a single number.
std::vector<double> expand_range(const std::string& value,
                                 const std::string& key, int line);

}  // namespace plap::cli
