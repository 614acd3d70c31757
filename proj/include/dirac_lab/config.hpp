#pragma once
#include <cstdint>
#include <string>

#include <nlohmann/json.hpp>

#include "dirac_lab/gagliardo.hpp"

namespace dlab {

// Tolerances and knobs shared by the CLI reports. Every report embeds the
// instance it was produced with.
struct Config {
  double quad_tol = 1e-11;   // sector quadrature (Green pairings)
  double weyl_tol = 1e-9;    // 2D recomputation of Weyl quotients
  double gagliardo_tol = 1e-3;
  double inner_rel_tol = 1e-3;
  double t_rel_tol = 1e-4;
  int gagliardo_depth = 8;
  int max_theta_level = 6;
  double rho = 1.0;
  double mass = 1.0;
  int k_max = 20;
  std::uint64_t seed = 20261014;
  long segment_samples = 100000;
  double member_tol = 1e-12;
  double green_tol = 1e-8;

  GagliardoOptions gagliardo_options() const;
  nlohmann::json to_json() const;
  // Unknown keys are an input error; missing keys keep their defaults.
  static Config from_json(const nlohmann::json& j);
  static Config load(const std::string& path);
};

}  // namespace dlab
