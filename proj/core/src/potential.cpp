#include "plap/potential.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace plap {

PotentialSpec PotentialSpec::constant(double c) {
  PotentialSpec s;
  s.kind = PotentialKind::constant;
  s.c = c;
  return s;
}

PotentialSpec PotentialSpec::bump() {
  PotentialSpec s;
  s.kind = PotentialKind::bump;
  return s;
}

PotentialSpec PotentialSpec::radial_well(double depth, double r0,
                                         double outside) {
  if (!(r0 > 0.0)) throw std::invalid_argument("radial_well requires r0 > 0");
  PotentialSpec s;
  s.kind = PotentialKind::radial_well;
  s.depth = depth;
  s.r0 = r0;
  s.outside = outside;
  return s;
}

PotentialSpec PotentialSpec::power_tail(double v_inf, double coeff, double q) {
  if (q < 0.0) throw std::invalid_argument("power_tail requires q >= 0");
  PotentialSpec s;
  s.kind = PotentialKind::power_tail;
  s.v_inf = v_inf;
  s.coeff = coeff;
  s.q = q;
  return s;
}

PotentialSpec PotentialSpec::tabulated(std::vector<double> coords,
                                       std::vector<double> values) {
  if (coords.size() != values.size() || coords.empty())
    throw std::invalid_argument("tabulated requires matching nonempty columns");
  PotentialSpec s;
  s.kind = PotentialKind::tabulated;
  s.tab_coords = std::move(coords);
  s.tab_values = std::move(values);
  return s;
}

PotentialSpec PotentialSpec::from_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open potential csv: " + path);
  std::vector<double> coords, values;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ss(line);
    double x, v;
    if (!(ss >> x >> v))
      throw std::invalid_argument("potential csv parse error at line " +
                                  std::to_string(lineno));
    coords.push_back(x);
    values.push_back(v);
  }
  return tabulated(std::move(coords), std::move(values));
}

PotentialSpec PotentialSpec::scaled(double amp) const {
  PotentialSpec s = *this;
  s.amplitude *= amp;
  return s;
}

PotentialSpec PotentialSpec::dilated(double alpha) const {
  if (!(alpha > 0.0)) throw std::invalid_argument("dilation factor must be > 0");
  if (kind == PotentialKind::tabulated)
    throw std::invalid_argument("dilation of tabulated potentials unsupported");
  PotentialSpec s = *this;
  s.dilation *= alpha;
  return s;
}

namespace {

double base_eval(const PotentialSpec& s, double r) {
  switch (s.kind) {
    case PotentialKind::constant:
      return s.c;
    case PotentialKind::bump: {
      if (r >= 1.0) return 0.5;
      const double r2 = r * r;
      return -std::exp(-r2 / (1.0 - r2)) + 0.5;
    }
    case PotentialKind::radial_well:
      return r < s.r0 ? s.depth : s.outside;
    case PotentialKind::power_tail:
      return s.v_inf + s.coeff / std::pow(1.0 + r, s.q);
    case PotentialKind::tabulated:
      throw std::logic_error("tabulated potentials sample by node index");
  }
  return 0.0;
}

}  // namespace

double PotentialSpec::eval_radial(double r) const {
  return amplitude * base_eval(*this, dilation * r);
}

std::string PotentialSpec::id() const {
  std::ostringstream out;
  switch (kind) {
    case PotentialKind::constant:
      out << "constant(" << c << ")";
      break;
    case PotentialKind::bump:
      out << "bump";
      break;
    case PotentialKind::radial_well:
      out << "radial_well(" << depth << "," << r0 << "," << outside << ")";
      break;
    case PotentialKind::power_tail:
      out << "power_tail(" << v_inf << "," << coeff << "," << q << ")";
      break;
    case PotentialKind::tabulated:
      out << "tabulated[" << tab_values.size() << "]";
      break;
  }
  if (amplitude != 1.0) out << "*" << amplitude;
  if (dilation != 1.0) out << "@" << dilation;
  return out.str();
}

Field sample(const PotentialSpec& spec, const GridPtr& grid) {
  Field f(grid);
  if (spec.kind == PotentialKind::tabulated) {
    if (spec.dilation != 1.0)
      throw std::invalid_argument("dilation of tabulated potentials unsupported");
    if (spec.tab_values.size() != grid->size())
      throw std::invalid_argument("tabulated node count does not match grid");
    for (std::size_t i = 0; i < grid->size(); ++i) {
      if (std::abs(spec.tab_coords[i] - grid->nodes[i][0]) >
          1e-9 * (1.0 + std::abs(grid->nodes[i][0])))
        throw std::invalid_argument("tabulated coordinates do not match grid");
      f[i] = spec.amplitude * spec.tab_values[i];
    }
    return f;
  }
  for (std::size_t i = 0; i < grid->size(); ++i)
    f[i] = spec.eval_radial(grid->radial(static_cast<int>(i)));
  return f;
}

PotentialBounds bounds(const PotentialSpec& spec, double window_radius, int n) {
  if (!(window_radius > 0.0))
    throw std::invalid_argument("bounds requires window_radius > 0");
  if (n < 100) throw std::invalid_argument("bounds requires n >= 100");
  PotentialBounds b;
  double vmin = 0, vmax = 0, vtail = 0;
  bool first = true, first_tail = true;
  for (int i = 0; i <= n; ++i) {
    const double r = window_radius * i / n;
    double v;
    if (spec.kind == PotentialKind::tabulated) {
      // nearest tabulated sample within the window
      std::size_t j = 0;
      double best = std::abs(spec.tab_coords[0] - r);
      for (std::size_t k = 1; k < spec.tab_coords.size(); ++k) {
        const double d = std::abs(spec.tab_coords[k] - r);
        if (d < best) best = d, j = k;
      }
      v = spec.amplitude * spec.tab_values[j];
    } else {
      v = spec.eval_radial(r);
    }
    if (first) vmin = vmax = v, first = false;
    vmin = std::min(vmin, v);
    vmax = std::max(vmax, v);
    if (r >= 0.5 * window_radius) {
      if (first_tail) vtail = v, first_tail = false;
      vtail = std::min(vtail, v);
    }
  }
  b.inf_est = vmin;
  b.sup_est = vmax;
  b.liminf_inf_est = vtail;
  return b;
}

}  // namespace plap
