#include "plap/report_io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace plap {

namespace {

using nlohmann::json;

const char* kind_name(SweepKind k) {
  switch (k) {
    case SweepKind::diffusion: return "diffusion";
    case SweepKind::dilation: return "dilation";
    case SweepKind::amplitude_pos: return "amplitude_pos";
    case SweepKind::amplitude_neg: return "amplitude_neg";
  }
  return "unknown";
}

}  // namespace

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string to_json(const SweepTable& t) {
  json j;
  j["kind"] = kind_name(t.kind);
  j["alphas"] = t.alphas;
  j["lambdas"] = t.lambdas;
  j["note"] = t.note;
  return j.dump(2);
}

std::string to_json(const ExhaustionReport& r) {
  json j;
  j["radii"] = r.radii;
  j["lambdas"] = r.lambdas;
  j["diffs"] = r.diffs;
  j["lambda_inf"] = r.lambda_inf;
  j["monotone"] = r.monotone;
  return j.dump(2);
}

std::string to_json(const Certificate& c) {
  json j;
  j["direction"] =
      c.direction == Certificate::Direction::lower ? "lower" : "upper";
  j["bound"] = c.bound;
  j["margin"] = c.margin;
  j["witness"] = c.witness_id;
  j["valid"] = c.valid;
  return j.dump(2);
}

std::string to_json(const ExperimentReport& r) {
  json j;
  j["name"] = r.name;
  j["inputs"] = r.inputs;
  j["observed"] = r.observed;
  j["pass"] = r.pass;
  j["notes"] = r.notes;
  return j.dump(2);
}

std::string to_json(const EigenPair& e) {
  json j;
  j["lambda"] = e.lambda;
  j["residual_inf"] = e.residual_inf;
  j["iters"] = e.iters;
  j["nodes"] = e.phi.grid ? e.phi.grid->size() : 0;
  return j.dump(2);
}

std::string to_csv(const SweepTable& t) {
  std::string out = "alpha,lambda\n";
  for (std::size_t i = 0; i < t.alphas.size(); ++i)
    out += fmt17(t.alphas[i]) + "," + fmt17(t.lambdas[i]) + "\n";
  return out;
}

std::string to_csv(const ExhaustionReport& r) {
  std::string out = "radius,lambda,diff\n";
  for (std::size_t i = 0; i < r.radii.size(); ++i) {
    out += fmt17(r.radii[i]) + "," + fmt17(r.lambdas[i]) + ",";
    if (i < r.diffs.size()) out += fmt17(r.diffs[i]);
    out += "\n";
  }
  return out;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f << content;
  if (!f) throw std::runtime_error("write failed: " + path);
}

void write_xy_dat(const std::string& path, const std::vector<double>& x,
                  const std::vector<double>& y, const std::string& header) {
  if (x.size() != y.size())
    throw std::invalid_argument("write_xy_dat: column length mismatch");
  std::string out = "# " + header + "\n";
  for (std::size_t i = 0; i < x.size(); ++i)
    out += fmt17(x[i]) + " " + fmt17(y[i]) + "\n";
  write_text_file(path, out);
}

void write_profile_dat(const std::string& path, const Field& f,
                       const std::string& header) {
  const Grid& g = *f.grid;
  std::string out = "# " + header + "\n";
  const bool two_d = g.domain.kind == DomainKind::box2;
  for (std::size_t j = 0; j < g.size(); ++j) {
    out += fmt17(g.nodes[j][0]);
    if (two_d) out += " " + fmt17(g.nodes[j][1]);
    out += " " + fmt17(f[j]) + "\n";
  }
  write_text_file(path, out);
}

}  // namespace plap
