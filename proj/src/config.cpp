#include "dirac_lab/config.hpp"

#include <fstream>

#include "dirac_lab/errors.hpp"

namespace dlab {

GagliardoOptions Config::gagliardo_options() const {
  GagliardoOptions o;
  o.rel_tol = gagliardo_tol;
  o.inner_rel_tol = inner_rel_tol;
  o.t_rel_tol = t_rel_tol;
  o.max_theta_level = max_theta_level;
  return o;
}

nlohmann::json Config::to_json() const {
  return nlohmann::json{{"quad_tol", quad_tol},
                        {"weyl_tol", weyl_tol},
                        {"gagliardo_tol", gagliardo_tol},
                        {"inner_rel_tol", inner_rel_tol},
                        {"t_rel_tol", t_rel_tol},
                        {"gagliardo_depth", gagliardo_depth},
                        {"max_theta_level", max_theta_level},
                        {"rho", rho},
                        {"mass", mass},
                        {"k_max", k_max},
                        {"seed", seed},
                        {"segment_samples", segment_samples},
                        {"member_tol", member_tol},
                        {"green_tol", green_tol}};
}

Config Config::from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw InputError("config: top level must be a JSON object");
  Config c;
  const nlohmann::json known = c.to_json();
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!known.contains(it.key())) throw InputError("config: unknown key '" + it.key() + "'");
  try {
    auto get = [&](const char* k, auto& v) {
      if (j.contains(k)) j.at(k).get_to(v);
    };
    get("quad_tol", c.quad_tol);
    get("weyl_tol", c.weyl_tol);
    get("gagliardo_tol", c.gagliardo_tol);
    get("inner_rel_tol", c.inner_rel_tol);
    get("t_rel_tol", c.t_rel_tol);
    get("gagliardo_depth", c.gagliardo_depth);
    get("max_theta_level", c.max_theta_level);
    get("rho", c.rho);
    get("mass", c.mass);
    get("k_max", c.k_max);
    get("seed", c.seed);
    get("segment_samples", c.segment_samples);
    get("member_tol", c.member_tol);
    get("green_tol", c.green_tol);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("config: ") + e.what());
  }
  if (!(c.rho > 0)) throw InputError("config: rho must be positive");
  if (c.gagliardo_depth < 3) throw InputError("config: gagliardo_depth must be >= 3");
  return c;
}

Config Config::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open config file " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InputError("config " + path + ": " + e.what());
  }
  return from_json(j);
}

}  // namespace dlab
