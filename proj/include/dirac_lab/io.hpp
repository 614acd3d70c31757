#pragma once
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "dirac_lab/coefficients.hpp"
#include "dirac_lab/geometry.hpp"

namespace dlab {

nlohmann::json read_json_file(const std::string& path);

// {"vertices": [[x,y],...], "rho": r, "window_start": j0,
//  "periodic": {"period": [px,py], "copies": n}}   (periodic optional:
// vertices are then one motif)
PolygonSpec domain_from_json(const nlohmann::json& j);

// {"window": [...], "omegas": [...], "c_plus": [[re,im],...], "c_minus": [...]}
// window defaults to 0..n-1; omegas may be omitted when default_omega is set.
ModeCoefficients coeffs_from_json(const nlohmann::json& j, std::optional<double> default_omega = {});
nlohmann::json to_json(const ModeCoefficients& c);

// {"U": [[[re,im],...],...]} or the bare row array
Eigen::MatrixXcd unitary_from_json(const nlohmann::json& j);

cplx complex_from_json(const nlohmann::json& j);  // [re, im] or a real number
nlohmann::json to_json(cplx z);
nlohmann::json to_json(const Eigen::VectorXcd& v);

// "0.5,1,2" -> {0.5, 1, 2}
std::vector<double> parse_list(const std::string& s);

// Shortest round-trip representation, deterministic text.
std::string fmt(double v);

}  // namespace dlab
