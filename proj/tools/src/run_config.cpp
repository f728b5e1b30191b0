#include "run_config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <set>
#include <sstream>

namespace plap::cli {
namespace {

struct Entry {
  std::string value;
  int line = 0;
};

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(int line, const std::string& msg) {
  std::ostringstream os;
  os << "line " << line << ": " << msg;
  throw ConfigError(os.str());
}

const std::set<std::string>& known_keys() {
  static const std::set<std::string> k = {
      "command", "out_dir", "emit", "seed",
      "solver.p", "solver.tol_lambda", "solver.tol_residual",
      "solver.max_iter", "solver.init", "solver.diffusion",
      "domain", "domain.a", "domain.b", "domain.dim", "domain.radius",
      "domain.ax", "domain.bx", "domain.ay", "domain.by", "domain.n",
      "potential.id", "potential.c", "potential.depth", "potential.r0",
      "potential.outside", "potential.v_inf", "potential.coeff",
      "potential.q", "potential.csv", "potential.amplitude",
      "potential.dilation",
      "exhaustion.dim", "exhaustion.r0", "exhaustion.factor",
      "exhaustion.count", "exhaustion.n_per_unit",
      "sweep.kind", "sweep.alphas", "sweep.eval",
      "certify.shift", "certify.witness", "certify.alpha", "certify.eps",
      "spectrum.lambdas", "spectrum.margin",
      "decay.r_lo", "decay.r_hi", "decay.growth_c", "decay.growth_beta",
  };
  return k;
}

bool group_allowed(const std::string& command, const std::string& key) {
  auto in = [&](const char* prefix) {
    return key.rfind(prefix, 0) == 0;
  };
  if (key == "command" || key == "out_dir" || key == "emit") return true;
  if (command == "verify-all") return false;  // pinned runs, nothing else applies
  if (key == "seed" || in("solver.")) return true;
  const bool dom = key == "domain" || in("domain.");
  const bool pot = in("potential.");
  const bool exh = in("exhaustion.");
  if (command == "eig") return dom || pot;
  if (command == "eig-rn") return pot || exh;
  if (command == "sweep") return dom || pot || exh || in("sweep.");
  if (command == "certify") return dom || pot || in("certify.");
  if (command == "spectrum") return pot || exh || in("spectrum.");
  if (command == "decay") return dom || pot || in("decay.");
  return false;
}

class Reader {
 public:
  explicit Reader(const std::map<std::string, Entry>& kv) : kv_(kv) {}

  bool has(const std::string& key) const { return kv_.count(key) != 0; }

  std::string str(const std::string& key) const {
    return kv_.at(key).value;
  }

  std::string required_str(const std::string& key) const {
    if (!has(key)) throw ConfigError("missing required key: " + key);
    return str(key);
  }

  double real(const std::string& key) const {
    const Entry& e = kv_.at(key);
    return parse_real(e.value, key, e.line);
  }

  double real_or(const std::string& key, double fallback) const {
    return has(key) ? real(key) : fallback;
  }

  double required_real(const std::string& key) const {
    if (!has(key)) throw ConfigError("missing required key: " + key);
    return real(key);
  }

  long integer(const std::string& key) const {
    const Entry& e = kv_.at(key);
    char* end = nullptr;
    long v = std::strtol(e.value.c_str(), &end, 10);
    if (end == e.value.c_str() || *end != '\0')
      fail(e.line, "key '" + key + "' expects an integer, got '" + e.value + "'");
    return v;
  }

  long integer_or(const std::string& key, long fallback) const {
    return has(key) ? integer(key) : fallback;
  }

  std::string choice(const std::string& key,
                     const std::vector<std::string>& options) const {
    const Entry& e = kv_.at(key);
    if (std::find(options.begin(), options.end(), e.value) == options.end()) {
      std::string opts;
      for (const auto& o : options) opts += (opts.empty() ? "" : ", ") + o;
      fail(e.line, "key '" + key + "' expects one of {" + opts + "}, got '" +
                       e.value + "'");
    }
    return e.value;
  }

  int line(const std::string& key) const { return kv_.at(key).line; }

  static double parse_real(const std::string& v, const std::string& key,
                           int line) {
    char* end = nullptr;
    double x = std::strtod(v.c_str(), &end);
    if (end == v.c_str() || *end != '\0')
      fail(line, "key '" + key + "' expects a real, got '" + v + "'");
    return x;
  }

 private:
  const std::map<std::string, Entry>& kv_;
};

DomainSpec read_domain(const Reader& r, int* n_out) {
  const std::string kind =
      r.choice("domain", {"interval", "radial_ball", "box2"});
  *n_out = static_cast<int>(r.integer_or("domain.n", 256));
  if (*n_out < 8) fail(r.line("domain.n"), "domain.n must be at least 8");
  if (kind == "interval")
    return DomainSpec::interval(r.required_real("domain.a"),
                                r.required_real("domain.b"));
  if (kind == "radial_ball")
    return DomainSpec::radial_ball(
        static_cast<int>(r.integer_or("domain.dim", 1)),
        r.required_real("domain.radius"));
  return DomainSpec::box2(r.required_real("domain.ax"),
                          r.required_real("domain.bx"),
                          r.required_real("domain.ay"),
                          r.required_real("domain.by"));
}

PotentialSpec read_potential(const Reader& r) {
  const std::string id =
      r.choice("potential.id",
               {"constant", "bump", "radial_well", "power_tail", "tabulated"});
  PotentialSpec v = [&] {
    if (id == "constant")
      return PotentialSpec::constant(r.real_or("potential.c", 0.0));
    if (id == "bump") return PotentialSpec::bump();
    if (id == "radial_well")
      return PotentialSpec::radial_well(r.required_real("potential.depth"),
                                        r.required_real("potential.r0"),
                                        r.real_or("potential.outside", 0.0));
    if (id == "power_tail")
      return PotentialSpec::power_tail(r.required_real("potential.v_inf"),
                                       r.required_real("potential.coeff"),
                                       r.required_real("potential.q"));
    return PotentialSpec::from_csv(r.required_str("potential.csv"));
  }();
  if (r.has("potential.amplitude")) v = v.scaled(r.real("potential.amplitude"));
  if (r.has("potential.dilation")) v = v.dilated(r.real("potential.dilation"));
  return v;
}

}  // namespace

std::vector<double> expand_range(const std::string& value,
                                 const std::string& key, int line) {
  const auto dots = value.find("..");
  if (dots != std::string::npos) {
    const double a = Reader::parse_real(trim(value.substr(0, dots)), key, line);
    std::istringstream rest(value.substr(dots + 2));
    std::string btok, mode;
    long n = 0;
    rest >> btok >> mode >> n;
    std::string extra;
    if (!rest || (rest >> extra))
      fail(line, "key '" + key + "' expects 'A..B log N' or 'A..B lin N', got '" +
                     value + "'");
    const double b = Reader::parse_real(btok, key, line);
    if (mode != "log" && mode != "lin")
      fail(line, "key '" + key + "' range mode must be log or lin, got '" +
                     mode + "'");
    if (n < 2) fail(line, "key '" + key + "' range needs at least 2 points");
    if (a >= b) fail(line, "key '" + key + "' range needs A < B");
    if (mode == "log" && a <= 0.0)
      fail(line, "key '" + key + "' log range needs positive endpoints");
    std::vector<double> out(static_cast<size_t>(n));
    for (long i = 0; i < n; ++i) {
      const double t = static_cast<double>(i) / static_cast<double>(n - 1);
      out[static_cast<size_t>(i)] =
          i == 0 ? a
          : i == n - 1
              ? b
              : (mode == "log" ? std::exp(std::log(a) + t * (std::log(b) - std::log(a)))
                               : a + t * (b - a));
    }
    return out;
  }
  std::vector<double> out;
  std::string tok;
  std::istringstream list(value);
  while (std::getline(list, tok, ','))
    out.push_back(Reader::parse_real(trim(tok), key, line));
  if (out.empty()) fail(line, "key '" + key + "' expects at least one value");
  return out;
}

RunConfig parse_config(const std::string& text) {
  std::map<std::string, Entry> kv;
  {
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
      ++lineno;
      const std::string line = trim(raw);
      if (line.empty() || line[0] == '#') continue;
      const auto eq = line.find('=');
      if (eq == std::string::npos)
        fail(lineno, "expected 'key = value', got '" + line + "'");
      const std::string key = trim(line.substr(0, eq));
      const std::string value = trim(line.substr(eq + 1));
      if (key.empty()) fail(lineno, "empty key");
      if (value.empty()) fail(lineno, "key '" + key + "' has no value");
      if (!known_keys().count(key)) fail(lineno, "unknown key '" + key + "'");
      auto [it, fresh] = kv.emplace(key, Entry{value, lineno});
      if (!fresh)
        fail(lineno, "duplicate key '" + key + "' (first at line " +
                         std::to_string(it->second.line) + ")");
    }
  }

  Reader r(kv);
  RunConfig rc;
  if (!r.has("command")) throw ConfigError("missing required key: command");
  rc.command = r.choice("command", {"eig", "eig-rn", "sweep", "certify",
                                    "spectrum", "decay", "verify-all"});
  for (const auto& [key, entry] : kv)
    if (!group_allowed(rc.command, key))
      fail(entry.line,
           "key '" + key + "' is not used by command '" + rc.command + "'");

  // eager syntax pass over every numeric key present, so a type error is
  // reported with its line even when a missing section aborts later
  static const std::set<std::string> int_keys = {
      "seed", "domain.n", "domain.dim", "solver.max_iter",
      "exhaustion.dim", "exhaustion.count", "exhaustion.n_per_unit"};
  static const std::set<std::string> str_keys = {
      "command", "out_dir", "emit", "domain", "potential.id", "potential.csv",
      "solver.init", "sweep.kind", "sweep.alphas", "sweep.eval",
      "certify.witness", "spectrum.lambdas"};
  for (const auto& [key, entry] : kv) {
    (void)entry;
    if (str_keys.count(key)) continue;
    if (int_keys.count(key))
      r.integer(key);
    else
      r.real(key);
  }

  if (r.has("out_dir")) rc.out_dir = r.str("out_dir");
  if (r.has("emit")) {
    rc.emit_json = rc.emit_csv = false;
    std::istringstream list(r.str("emit"));
    std::string tok;
    while (std::getline(list, tok, ',')) {
      tok = trim(tok);
      if (tok == "json")
        rc.emit_json = true;
      else if (tok == "csv")
        rc.emit_csv = true;
      else
        fail(r.line("emit"), "key 'emit' expects a subset of {csv, json}, got '" +
                                 tok + "'");
    }
  }

  if (r.has("seed")) rc.solver.rng_seed = static_cast<std::uint64_t>(r.integer("seed"));
  rc.solver.p = r.real_or("solver.p", rc.solver.p);
  if (rc.solver.p <= 1.0)
    fail(r.line("solver.p"), "solver.p must exceed 1");
  rc.solver.tol_lambda = r.real_or("solver.tol_lambda", rc.solver.tol_lambda);
  rc.solver.tol_residual =
      r.real_or("solver.tol_residual", rc.solver.tol_residual);
  rc.solver.max_iter = static_cast<int>(
      r.integer_or("solver.max_iter", rc.solver.max_iter));
  if (r.has("solver.init"))
    rc.solver.init = r.choice("solver.init", {"bump", "random_positive"}) ==
                             "bump"
                         ? SolverConfig::Init::bump
                         : SolverConfig::Init::random_positive;
  rc.solver.diffusion = r.real_or("solver.diffusion", rc.solver.diffusion);
  if (rc.solver.diffusion <= 0.0)
    fail(r.line("solver.diffusion"), "solver.diffusion must be positive");

  if (r.has("domain")) rc.domain = read_domain(r, &rc.domain_n);
  if (r.has("potential.id")) rc.potential = read_potential(r);

  rc.has_exhaustion = r.has("exhaustion.r0") || r.has("exhaustion.count") ||
                      r.has("exhaustion.factor") || r.has("exhaustion.dim") ||
                      r.has("exhaustion.n_per_unit");
  rc.ex_dim = static_cast<int>(r.integer_or("exhaustion.dim", rc.ex_dim));
  rc.ex_r0 = r.real_or("exhaustion.r0", rc.ex_r0);
  rc.ex_factor = r.real_or("exhaustion.factor", rc.ex_factor);
  rc.ex_count = static_cast<int>(r.integer_or("exhaustion.count", rc.ex_count));
  rc.ex_npu =
      static_cast<int>(r.integer_or("exhaustion.n_per_unit", rc.ex_npu));

  const bool needs_potential = rc.command != "verify-all";
  if (needs_potential && !rc.potential)
    throw ConfigError("missing required key: potential.id");

  if (rc.command == "eig" || rc.command == "certify" || rc.command == "decay") {
    if (!rc.domain) throw ConfigError("missing required key: domain");
  }
  if (rc.command == "eig-rn" || rc.command == "spectrum") {
    if (!rc.has_exhaustion)
      throw ConfigError("missing required key: exhaustion.r0");
  }

  if (rc.command == "sweep") {
    rc.sweep_kind = r.has("sweep.kind")
                        ? r.choice("sweep.kind", {"diffusion", "dilation",
                                                  "amplitude_pos",
                                                  "amplitude_neg"})
                        : throw ConfigError("missing required key: sweep.kind");
    if (!r.has("sweep.alphas"))
      throw ConfigError("missing required key: sweep.alphas");
    rc.sweep_alphas =
        expand_range(r.str("sweep.alphas"), "sweep.alphas", r.line("sweep.alphas"));
    if (r.has("sweep.eval"))
      rc.sweep_eval = r.choice("sweep.eval", {"fixed", "exhaustion"});
    else if (rc.domain && !rc.has_exhaustion)
      rc.sweep_eval = "fixed";
    else if (rc.has_exhaustion && !rc.domain)
      rc.sweep_eval = "exhaustion";
    else
      throw ConfigError(
          "sweep.eval is required when both domain and exhaustion are given");
    if (rc.sweep_eval == "fixed" && !rc.domain)
      throw ConfigError("missing required key: domain");
    if (rc.sweep_eval == "exhaustion" && !rc.has_exhaustion)
      throw ConfigError("missing required key: exhaustion.r0");
  }

  if (rc.command == "certify") {
    rc.certify_shift = r.real_or("certify.shift", rc.certify_shift);
    if (r.has("certify.witness"))
      rc.certify_witness =
          r.choice("certify.witness", {"eigenfunction", "exp_barrier"});
    rc.certify_alpha = r.real_or("certify.alpha", rc.certify_alpha);
    rc.certify_eps = r.real_or("certify.eps", rc.certify_eps);
    if (rc.certify_witness == "exp_barrier" &&
        rc.domain->kind != DomainKind::radial_ball)
      throw ConfigError("certify.witness exp_barrier needs a radial_ball domain");
  }

  if (rc.command == "spectrum") {
    if (!r.has("spectrum.lambdas"))
      throw ConfigError("missing required key: spectrum.lambdas");
    rc.spectrum_lambdas = expand_range(r.str("spectrum.lambdas"),
                                       "spectrum.lambdas",
                                       r.line("spectrum.lambdas"));
    rc.spectrum_margin = r.real_or("spectrum.margin", rc.spectrum_margin);
  }

  if (rc.command == "decay") {
    if (rc.domain->kind != DomainKind::radial_ball)
      throw ConfigError("decay needs a radial_ball domain");
    rc.decay_r_lo = r.required_real("decay.r_lo");
    rc.decay_r_hi = r.required_real("decay.r_hi");
    if (rc.decay_r_lo <= 0.0 || rc.decay_r_hi <= rc.decay_r_lo)
      throw ConfigError("decay window needs 0 < r_lo < r_hi");
    if (r.has("decay.growth_c") != r.has("decay.growth_beta"))
      throw ConfigError(
          "decay.growth_c and decay.growth_beta must be given together");
    if (r.has("decay.growth_c")) {
      rc.growth_c = r.real("decay.growth_c");
      rc.growth_beta = r.real("decay.growth_beta");
    }
  }

  return rc;
}

}  // namespace plap::cli
