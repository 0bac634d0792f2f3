#pragma once

// JSON file formats.
//
// Problem:
//   {"dim": n, "Q": [[...], ...], "b": [...],
//    "terms": [{"sign": 1 | -1, "pieces": [{"a": [...], "beta": x}, ...]}]}
//   Q and b are optional (zero). Unknown fields are rejected.
//
// Piecewise-linear univariate:
//   {"breakpoints": [t0, ..., t_{m+1}], "slopes": [g0, ..., gm],
//    "value_at_left": h(t0)}
//
// Certificate:
//   {"delta": d, "eps": e, "anchor": [...], "aggregate": [...],
//    "atoms": [{"weight": w, "point": [...], "direction": [...],
//               "subgrad": [...]}, ...]}

#include <string>
#include <string_view>

#include "goldstein/descent.hpp"
#include "goldstein/objective.hpp"
#include "goldstein/piecewise_linear.hpp"

namespace goldstein {

struct CertificateFile {
  GoldsteinCertificate cert;
  double delta = 0.0;
  double eps = 0.0;
};

// All parsers throw InputError; syntax errors carry line and column.
Objective parse_objective(std::string_view text);
Objective load_objective(const std::string& path);
std::string objective_to_json(const Objective& obj);

PiecewiseLinear1D parse_piecewise_linear(std::string_view text);
PiecewiseLinear1D load_piecewise_linear(const std::string& path);
std::string piecewise_linear_to_json(const PiecewiseLinear1D& h);

CertificateFile parse_certificate(std::string_view text);
CertificateFile load_certificate(const std::string& path);
std::string certificate_to_json(const CertificateFile& file);

void write_text_file(const std::string& path, const std::string& text);

}  // namespace goldstein
