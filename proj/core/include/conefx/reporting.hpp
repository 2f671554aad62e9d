#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "conefx/linalg.hpp"

namespace conefx {

using Json = nlohmann::ordered_json;

struct RunConfig {
  int samples_per_curve = 512;
  int theta_grid_size = 64;
  double eq_abs = 1e-9;
  std::vector<double> eps_list{1e-1, 1e-2, 1e-3, 1e-4};
  bool control = false;  // sweep the polyhedral control cone instead

  // Throws InputError: samples_per_curve < 8, theta_grid_size < 1,
  // eq_abs not positive, empty or non-decreasing eps_list.
  void validate() const;
  Json to_json() const;
};

// 16 hex digits, FNV-1a over the canonical config JSON.
std::string config_hash(const RunConfig& config);

// Full verification report ("schema": 1). "overall" is "pass" iff every
// section passes; "failed_sections" names the rest.
Json run_verify(const RunConfig& config);

// Face catalogue with exposing pairs and exposure reports.
Json face_atlas(const RunConfig& config);

// Divergence table: a "# config_hash,<hash>" line, the header
// epsilon,lambda_star,product,achieving_curve,achieving_t, one row per level,
// then a "# verdict,<name>" footer row.
std::string sweep_csv(const RunConfig& config);

// Report of the 3D projection checks on the octant and half-disc examples.
Json nice3d_report();

// Shortest round-trip decimal form of x.
std::string format_number(double x);

// Finite values as numbers; non-finite ones as "inf", "-inf" or "nan".
Json number_json(double x);

}  // namespace conefx
