#pragma once

#include <string>
#include <vector>

#include "plap/certify.hpp"
#include "plap/eigensolve.hpp"
#include "plap/experiments.hpp"
#include "plap/limits.hpp"

namespace plap {

/// 17 significant digits, enough to round-trip a double exactly.
std::string fmt17(double v);

/// JSON with sorted keys and shortest round-trip number formatting, so equal
/// inputs give byte-identical output.
std::string to_json(const SweepTable& t);
std::string to_json(const ExhaustionReport& r);
std::string to_json(const Certificate& c);
std::string to_json(const ExperimentReport& r);
std::string to_json(const EigenPair& e);

/// CSV: '.' decimal, ',' separator, 17 significant digits.
std::string to_csv(const SweepTable& t);       // alpha,lambda
std::string to_csv(const ExhaustionReport& r); // radius,lambda,diff

void write_text_file(const std::string& path, const std::string& content);

/// Two-column whitespace-separated plot data with a '#' header line.
void write_xy_dat(const std::string& path, const std::vector<double>& x,
                  const std::vector<double>& y, const std::string& header);

/// Nodal profile: (x, value), (r, value) or (x, y, value) rows.
void write_profile_dat(const std::string& path, const Field& f,
                       const std::string& header);

}  // namespace plap
