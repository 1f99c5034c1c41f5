#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "excursion/field_model.hpp"
#include "excursion/scalar_gauss.hpp"

namespace excursion::cli {

struct RunConfig {
  std::string command;  // geometry | bound2d | bound3d | compare | quadform | simulate | swiss-cheese
  std::string geometry_path;
  std::optional<double> rho2;
  std::optional<double> c;
  std::string u_spec = "0:5:101";  // min:max:count, inclusive endpoints
  double square_side = 0.0;        // --T: use the square [0,T]^2 as geometry
  long long n = 100000;
  std::uint64_t seed = 1;
  double step = 0.05;
  double tol = 1e-8;
  int levels = 3;
  std::string out_path;
  std::string svg_path;
  bool log_scale = false;
};

UGrid parse_ugrid(const std::string& spec);
FieldModel model_from_config(const RunConfig& cfg);

/// Dispatches cfg.command; on error prints a one-line JSON record
/// {"error": "..."} to stderr and returns a nonzero exit code.
int run(const RunConfig& cfg);

}  // namespace excursion::cli
