#include "dirac_lab/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "dirac_lab/errors.hpp"

namespace dlab {

using nlohmann::json;

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw InputError(path + ": " + e.what());
  }
}

namespace {

Vec2 vec_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw InputError("expected a point [x, y]");
  return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

PolygonSpec domain_from_json(const json& j) {
  if (!j.is_object() || !j.contains("vertices") || !j.contains("rho"))
    throw InputError("domain: needs 'vertices' and 'rho'");
  if (!j["vertices"].is_array()) throw InputError("domain: 'vertices' must be an array");
  std::vector<Vec2> v;
  for (const auto& p : j["vertices"]) v.push_back(vec_from_json(p));
  if (!j["rho"].is_number()) throw InputError("domain: 'rho' must be a number");
  const double rho = j["rho"].get<double>();
  long j0 = 0;
  if (j.contains("window_start")) {
    if (!j["window_start"].is_number_integer()) throw InputError("domain: 'window_start' must be an integer");
    j0 = j["window_start"].get<long>();
  }
  if (j.contains("periodic")) {
    const json& p = j["periodic"];
    if (!p.is_object() || !p.contains("period")) throw InputError("domain: 'periodic' needs 'period'");
    int copies = 3;
    if (p.contains("copies")) {
      if (!p["copies"].is_number_integer()) throw InputError("domain: 'copies' must be an integer");
      copies = p["copies"].get<int>();
    }
    if (copies < 1) throw InputError("domain: 'copies' must be >= 1");
    return PolygonSpec::from_motif(v, vec_from_json(p["period"]), rho, copies, j0);
  }
  PolygonSpec s;
  s.vertices = v;
  s.rho = rho;
  s.j_min = j0;
  return s;
}

cplx complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw InputError("expected a complex number [re, im]");
}

json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

json to_json(const Eigen::VectorXcd& v) {
  json a = json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) a.push_back(to_json(v(k)));
  return a;
}

ModeCoefficients coeffs_from_json(const json& j, std::optional<double> default_omega) {
  if (!j.is_object() || !j.contains("c_plus") || !j.contains("c_minus"))
    throw InputError("coefficients: needs 'c_plus' and 'c_minus'");
  ModeCoefficients c;
  for (const auto& z : j["c_plus"]) c.c_plus.push_back(complex_from_json(z));
  for (const auto& z : j["c_minus"]) c.c_minus.push_back(complex_from_json(z));
  const size_t n = c.c_plus.size();
  if (j.contains("window")) {
    for (const auto& w : j["window"]) {
      if (!w.is_number_integer()) throw InputError("coefficients: window entries must be integers");
      c.window.push_back(w.get<long>());
    }
  } else {
    for (size_t k = 0; k < n; ++k) c.window.push_back(static_cast<long>(k));
  }
  if (j.contains("omegas")) {
    for (const auto& w : j["omegas"]) {
      if (!w.is_number()) throw InputError("coefficients: omegas must be numbers");
      c.omegas.push_back(w.get<double>());
    }
  } else if (default_omega) {
    c.omegas.assign(n, *default_omega);
  } else {
    throw InputError("coefficients: 'omegas' missing");
  }
  c.check();
  return c;
}

json to_json(const ModeCoefficients& c) {
  json a = json::array(), b = json::array();
  for (cplx z : c.c_plus) a.push_back(to_json(z));
  for (cplx z : c.c_minus) b.push_back(to_json(z));
  return json{{"window", c.window}, {"omegas", c.omegas}, {"c_plus", a}, {"c_minus", b}};
}

Eigen::MatrixXcd unitary_from_json(const json& j) {
  const json& rows = j.is_object() ? j.at("U") : j;
  if (!rows.is_array() || rows.empty()) throw InputError("unitary: expected a non-empty array of rows");
  const Eigen::Index n = static_cast<Eigen::Index>(rows.size());
  Eigen::MatrixXcd U(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    if (!rows[r].is_array() || static_cast<Eigen::Index>(rows[r].size()) != n)
      throw InputError("unitary: matrix must be square");
    for (Eigen::Index c = 0; c < n; ++c) U(r, c) = complex_from_json(rows[r][c]);
  }
  return U;
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    size_t pos = 0;
    double v;
    try {
      v = std::stod(tok, &pos);
    } catch (const std::exception&) {
      throw InputError("cannot parse number '" + tok + "'");
    }
    while (pos < tok.size() && std::isspace(static_cast<unsigned char>(tok[pos]))) ++pos;
    if (pos != tok.size()) throw InputError("cannot parse number '" + tok + "'");
    out.push_back(v);
  }
  if (out.empty()) throw InputError("empty list");
  return out;
}

std::string fmt(double v) {
  char buf[40];
  for (int p = 15; p <= 17; ++p) {
    std::snprintf(buf, sizeof buf, "%.*g", p, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

}  // namespace dlab
