#include "dirac_lab/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "dirac_lab/config.hpp"
#include "dirac_lab/errors.hpp"
#include "dirac_lab/extensions.hpp"
#include "dirac_lab/geometry.hpp"
#include "dirac_lab/io.hpp"
#include "dirac_lab/sobolev.hpp"
#include "dirac_lab/spectrum.hpp"
#include "dirac_lab/verify.hpp"

namespace dlab {

using nlohmann::json;

namespace {

struct Overrides {
  std::string config_path;
  std::string out_path;
  std::optional<double> rho, mass, quad_tol, weyl_tol, gagliardo_tol;
  std::optional<int> depth, k_max;
  std::optional<std::uint64_t> seed;
};

Config resolve(const Overrides& o) {
  Config c = o.config_path.empty() ? Config{} : Config::load(o.config_path);
  if (o.rho) c.rho = *o.rho;
  if (o.mass) c.mass = *o.mass;
  if (o.quad_tol) c.quad_tol = *o.quad_tol;
  if (o.weyl_tol) c.weyl_tol = *o.weyl_tol;
  if (o.gagliardo_tol) c.gagliardo_tol = *o.gagliardo_tol;
  if (o.depth) c.gagliardo_depth = *o.depth;
  if (o.k_max) c.k_max = *o.k_max;
  if (o.seed) c.seed = *o.seed;
  if (!(c.rho > 0)) throw InputError("rho must be positive");
  if (c.gagliardo_depth < 3) throw InputError("depth must be >= 3");
  return c;
}

std::string csv_config_line(const Config& c) { return "# config " + c.to_json().dump() + "\n"; }

std::string bool_str(bool b) { return b ? "true" : "false"; }

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerics for Dirac operators with infinite-mass boundary conditions on polygonal domains"};
  app.require_subcommand(1);
  Overrides ov;
  app.add_option("--config", ov.config_path, "JSON tolerance configuration")->check(CLI::ExistingFile);
  app.add_option("--out", ov.out_path, "write the report to this file instead of stdout");
  app.add_option("--rho", ov.rho, "corner radius rho");
  app.add_option("--m", ov.mass, "mass m");
  app.add_option("--quad-tol", ov.quad_tol, "sector quadrature tolerance");
  app.add_option("--weyl-tol", ov.weyl_tol, "Weyl recomputation tolerance");
  app.add_option("--gagliardo-tol", ov.gagliardo_tol, "relative tolerance of the Gagliardo shells");
  app.add_option("--depth", ov.depth, "dyadic depth of the Gagliardo scans");
  app.add_option("--k-max", ov.k_max, "angular modes in the lower bound");
  app.add_option("--seed", ov.seed, "random seed");

  std::string domain_path, coeffs_path, unitary_path, m_grid, n_grid, s_grid, kind = "plane", suite = "all",
                                                                          sign = "+";
  double omega = 0, mu = 0;
  std::optional<double> center_x;

  auto* validate = app.add_subcommand("validate", "polygon validation report (JSON)");
  validate->add_option("--domain", domain_path)->required()->check(CLI::ExistingFile);
  auto* corners = app.add_subcommand("corners", "per-corner CSV (j, omega, concave, lambda, S, threshold)");
  corners->add_option("--domain", domain_path)->required()->check(CLI::ExistingFile);
  auto* gap = app.add_subcommand("gap", "transverse gap table (CSV)");
  gap->add_option("--m-grid", m_grid)->required();
  auto* weyl = app.add_subcommand("weyl", "Weyl-sequence Rayleigh quotients (CSV)");
  weyl->add_option("--kind", kind)->check(CLI::IsMember({"plane", "strip"}));
  weyl->add_option("--mu", mu)->required();
  weyl->add_option("--n-grid", n_grid)->required();
  weyl->add_option("--domain", domain_path, "plane case: check the ball support lies in the domain")
      ->check(CLI::ExistingFile);
  weyl->add_option("--center-x", center_x, "plane case: x1 of the ball centres (default: window middle)");
  auto* scan = app.add_subcommand("sobolev-scan", "H^s verdicts of a singular mode (CSV)");
  scan->add_option("--omega", omega)->required();
  scan->add_option("--s-grid", s_grid, "comma separated s values (default 21 points in [0.5, 0.99])");
  scan->add_option("--sign", sign)->check(CLI::IsMember({"+", "-"}));
  auto* greens = app.add_subcommand("greens", "Green identity lhs/rhs comparison (JSON)");
  greens->add_option("--omega", omega, "opening used when the file carries no omegas");
  greens->add_option("--coeffs", coeffs_path)->required()->check(CLI::ExistingFile);
  auto* ext = app.add_subcommand("extension", "T_U membership residual and verdict (JSON)");
  ext->add_option("--unitary", unitary_path)->required()->check(CLI::ExistingFile);
  ext->add_option("--coeffs", coeffs_path)->required()->check(CLI::ExistingFile);
  auto* verify = app.add_subcommand("verify", "run invariant suites");
  verify->add_option("--suite", suite)->check(CLI::IsMember({"identities", "bessel", "bounds", "all"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  std::ostringstream rep;
  int code = 0;
  try {
    const Config cfg = resolve(ov);
    if (*validate) {
      const PolygonSpec spec = domain_from_json(read_json_file(domain_path));
      const auto v = validate_polygon(spec);
      json vs = json::array();
      for (const auto& x : v) vs.push_back({{"condition", x.condition}, {"indices", x.indices}, {"detail", x.detail}});
      json r{{"config", cfg.to_json()},
             {"domain", domain_path},
             {"vertices", spec.vertices.size()},
             {"valid", v.empty()},
             {"violations", vs}};
      rep << r.dump(2) << "\n";
      if (!v.empty()) code = 1;
    } else if (*corners) {
      const PolygonSpec spec = domain_from_json(read_json_file(domain_path));
      const auto v = validate_polygon(spec);
      if (!v.empty()) throw InputError("domain fails validation (condition " + v.front().condition + "): " + v.front().detail);
      rep << csv_config_line(cfg) << "j,omega,concave,lambda,S,threshold\n";
      for (const auto& c : corner_reports(spec))
        rep << c.j << "," << fmt(c.omega) << "," << bool_str(c.concave) << "," << (c.lambda ? fmt(*c.lambda) : "")
            << "," << (c.s_const ? fmt(*c.s_const) : "") << "," << fmt(c.sobolev_threshold) << "\n";
    } else if (*gap) {
      rep << csv_config_line(cfg) << "m,E1,threshold,residual\n";
      for (double m : parse_list(m_grid)) {
        const GapResult g = transverse_gap(m);
        rep << fmt(m) << "," << fmt(g.E1) << "," << fmt(g.threshold) << "," << fmt(g.residual) << "\n";
      }
    } else if (*weyl) {
      const WeylKind k = parse_weyl_kind(kind);
      std::optional<PolygonSpec> spec;
      if (!domain_path.empty()) {
        if (k != WeylKind::Plane) throw InputError("--domain applies to the plane case only");
        spec = domain_from_json(read_json_file(domain_path));
        const auto v = validate_polygon(*spec);
        if (!v.empty()) throw InputError("domain fails validation: " + v.front().detail);
      }
      rep << csv_config_line(cfg) << "n,quotient,quotient_n2,recomputed,rel_diff\n";
      for (double n : parse_list(n_grid)) {
        if (spec) {
          const double x0 = spec->vertices.front().x, x1 = spec->vertices.back().x;
          const double cx = center_x ? *center_x : 0.5 * (x0 + x1);
          if (cx - n < x0 || cx + n > x1)
            throw DomainError("ball of radius n=" + fmt(n) + " does not fit in the domain window");
          double top = -INFINITY;
          for (const Vec2& p : spec->vertices)
            if (p.x >= cx - n && p.x <= cx + n) top = std::max(top, p.y);
          top = std::max({top, boundary_height(*spec, cx - n), boundary_height(*spec, cx + n)});
          const Vec2 c{cx, top + 1.01 * n};
          if (!ball_inside(*spec, c, n)) throw DomainError("ball {|x - x_n| < n} is not contained in the domain");
        }
        const WeylQuotient w = weyl_quotient(k, mu, n, cfg.mass, cfg.weyl_tol);
        if (!w.converged) code = std::max(code, 3);
        rep << fmt(n) << "," << fmt(w.analytic) << "," << fmt(w.analytic * n * n) << "," << fmt(w.recomputed) << ","
            << fmt(w.rel_diff) << "\n";
      }
    } else if (*scan) {
      const SingularMode mode = singular_mode(sign == "+" ? Sign::Plus : Sign::Minus, omega, cfg.rho);
      ScanOptions so;
      so.max_depth = cfg.gagliardo_depth;
      so.tol = cfg.gagliardo_tol;
      so.gagliardo = cfg.gagliardo_options();
      const auto pts = regularity_scan(mode, s_grid.empty() ? default_s_grid() : parse_list(s_grid), so);
      rep << csv_config_line(cfg) << "omega,s,verdict,value_or_growth,depth\n";
      for (const auto& p : pts)
        rep << fmt(p.omega) << "," << fmt(p.s) << "," << to_string(p.verdict) << "," << fmt(p.value_or_growth) << ","
            << p.depth << "\n";
    } else if (*greens) {
      const json j = read_json_file(coeffs_path);
      std::optional<double> om;
      if (omega != 0) om = omega;
      ModeCoefficients a, b;
      if (j.contains("a")) {
        a = coeffs_from_json(j.at("a"), om);
        b = j.contains("b") ? coeffs_from_json(j.at("b"), om) : a;
      } else {
        a = b = coeffs_from_json(j, om);
      }
      const GreenPairing g = green_pairing(a, b, cfg.rho, cfg.quad_tol);
      const bool closed_ok = g.lhs_closed_diff <= cfg.green_tol;
      json r{{"config", cfg.to_json()},
             {"lhs", to_json(g.lhs)},
             {"lhs_error_estimate", g.lhs_error},
             {"rhs", to_json(g.rhs)},
             {"lhs_closed_form", to_json(g.lhs_closed)},
             {"lhs_minus_rhs", g.lhs_rhs_diff},
             {"lhs_minus_closed_form", g.lhs_closed_diff},
             {"agree_rhs", g.lhs_rhs_diff <= cfg.green_tol},
             {"agree_closed_form", closed_ok},
             {"converged", g.converged}};
      rep << r.dump(2) << "\n";
      if (!g.converged) code = 3;
      else if (!closed_ok) code = 2;
    } else if (*ext) {
      const ModeCoefficients c = coeffs_from_json(read_json_file(coeffs_path));
      const ExtensionParameter p = make_extension_parameter(unitary_from_json(read_json_file(unitary_path)), c.omegas);
      const GammaData g = gamma_maps(c);
      const double res = tu_membership_residual(g, p);
      json r{{"config", cfg.to_json()},
             {"residual", res},
             {"member", res <= cfg.member_tol},
             {"unitarity_error", p.unitarity_error},
             {"g_tilde_gain", p.g_tilde_gain},
             {"min_omega_minus_pi", p.min_gap_to_pi},
             {"gamma_plus", to_json(g.plus)},
             {"gamma_minus", to_json(g.minus)}};
      rep << r.dump(2) << "\n";
    } else if (*verify) {
      const auto checks = run_verify(suite, cfg);
      bool all = true;
      rep << "# config " << cfg.to_json().dump() << "\n";
      for (const auto& c : checks) {
        all = all && c.pass;
        rep << (c.pass ? "PASS" : "FAIL") << " [" << c.suite << "] " << c.name << "  measured=" << fmt(c.measured)
            << " tol=" << fmt(c.tolerance);
        if (!c.note.empty()) rep << "  (" << c.note << ")";
        rep << "\n";
      }
      if (!all) code = 2;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  if (ov.out_path.empty()) {
    out << rep.str();
  } else {
    std::ofstream f(ov.out_path);
    if (!f) {
      err << "error: cannot write " << ov.out_path << "\n";
      return 1;
    }
    f << rep.str();
  }
  return code;
}

}  // namespace dlab
