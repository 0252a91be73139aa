#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "hullfacets/rng.hpp"
#include "hullfacets/tails.hpp"

namespace hullfacets {

// Spherically symmetric law in R^d described by its radial survival
// F(x) = P(|X| >= x). survival(0) = 1, nonincreasing, -> 0 at support_upper.
struct RadialModel {
  std::function<double(double)> survival;
  std::function<double(double)> density;  // -dF/dx
  double support_upper;                   // +inf unless compactly supported
  TailFamily tail;
  int dim;
  std::string label;
};

// Inverse-CDF draw: returns x with survival(x) = u, relative tolerance 1e-12.
double sample_radius(const RadialModel& model, double u);

// Radius times a uniform direction (normalized Gaussian vector).
std::vector<double> sample_point(const RadialModel& model, RngStream& rng);

RadialModel gaussian_model(int d);
RadialModel t_model(double k, int d);
RadialModel uniform_ball_model(int d);
RadialModel beta_type_model(double q, int d);
RadialModel custom_model(std::function<double(double)> survival,
                         std::function<double(double)> density,
                         double support_upper, TailFamily tail, int d,
                         std::string label = "custom");

struct BuiltinModelInfo {
  std::string family;
  bool needs_k;
  bool needs_q;
  std::function<RadialModel(int d, double k, double q)> make;
};

const std::vector<BuiltinModelInfo>& builtin_models();

// Model spec JSON: {"family": "...", "d": int, "k": float?, "q": float?}.
// Custom models are registered programmatically only, never via file.
RadialModel model_from_spec(const std::string& json_text);
RadialModel model_from_spec_file(const std::string& path);

// Stable content hash of a parsed spec, for run manifests.
uint64_t model_spec_hash(const RadialModel& model);

}  // namespace hullfacets
