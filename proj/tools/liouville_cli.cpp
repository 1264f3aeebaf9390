// Command-line front end. Exit codes: 0 all checks passed, 1 a verification
// tolerance was breached (named on stderr), 2 usage error.

#include "liouville/embedding.hpp"
#include "liouville/invariants.hpp"
#include "liouville/onofri.hpp"
#include "liouville/pde.hpp"
#include "liouville/quadform.hpp"
#include "liouville/region.hpp"
#include "liouville/report.hpp"
#include "liouville/sphere.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

using namespace liouville;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitBreach = 1;
constexpr int kExitUsage = 2;

/// Collects named tolerance breaches; the exit code follows from it.
class Verdict {
 public:
  void check(bool ok, const std::string& name, const std::string& detail) {
    if (ok) return;
    std::cerr << "FAILED " << name << ": " << detail << '\n';
    failed_ = true;
  }
  int code() const { return failed_ ? kExitBreach : kExitOk; }

 private:
  bool failed_ = false;
};

/// Writes to --out when given, else stdout.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw std::invalid_argument("cannot open output file: " + path);
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

std::string g17(double v) { return report::fmt17(v); }

std::string ratio_detail(double value, double tol) {
  return "value " + g17(value) + " exceeds tolerance " + g17(tol);
}

struct Common {
  double kappa = 1.0;
  int nodes = 64;
  int degree = 32;
  double tol = 1e-8;
  std::string out;
};

// ---------------------------------------------------------------- region

struct RegionArgs {
  std::string grid = "400x400";
  std::string out;
  std::string svg;
  double kappa = 1.0;
};

int run_region(const RegionArgs& a) {
  int nx = 0, ny = 0;
  char sep = 0;
  std::istringstream is(a.grid);
  if (!(is >> nx >> sep >> ny) || (sep != 'x' && sep != 'X') || nx < 1 || ny < 1 || !is.eof()) {
    throw std::invalid_argument("--grid must look like 400x400");
  }
  const auto g = report::region_grid(nx, ny, {}, a.kappa);
  Verdict v;
  for (const auto& c : g.cells) {
    const auto tag = region::classify({c.lambda1, c.lambda2, 1.0}).tag;
    if (tag != c.tag) {
      v.check(false, "region.kappa_invariance",
              "class differs from kappa = 1 at (" + g17(c.lambda1) + ", " + g17(c.lambda2) + ")");
      break;
    }
  }
  {
    Output o(a.out);
    report::write_region_csv(o.stream(), g);
  }
  if (!a.svg.empty()) {
    Output o(a.svg);
    report::write_region_svg(o.stream(), g);
  }
  return v.code();
}

// ---------------------------------------------------------------- l1

int run_l1(const std::vector<double>& xs, bool oracle) {
  Verdict v;
  std::cout << "x,L1" << (oracle ? ",oracle,rel_diff" : "") << '\n';
  for (double x : xs) {
    if (!(x >= -2.0 && x <= 2.0)) throw std::invalid_argument("--x must lie in [-2, 2]");
    const double l1 = region::eval_L1(x);
    std::cout << g17(x) << ',' << g17(l1);
    if (oracle) {
      if (x > -2.0 && x < region::x_star()) {
        const double r = region::l1_root_oracle(x, 1e-12);
        const double rel = std::abs(l1 - r) / std::max(1.0, std::abs(l1));
        std::cout << ',' << g17(r) << ',' << g17(rel);
        v.check(rel <= 1e-9, "l1.oracle_agreement", "x = " + g17(x) + ": " + ratio_detail(rel, 1e-9));
      } else {
        std::cout << ",,";
      }
    }
    std::cout << '\n';
  }
  return v.code();
}

// ---------------------------------------------------------------- quadform

struct QuadformArgs {
  double lambda1 = 2.0;
  double lambda2 = 6.0;
  double a2 = 0.0;  // 0 selects 1.5 times the admissibility threshold
  double K = std::nan("");
};

json matrix_json(const quadform::Matrix3& m) {
  auto z = [](double v) { return v == 0.0 ? 0.0 : v; };  // drop the sign of zero
  return json::array({json::array({z(m.a11), z(m.a12), z(m.a13)}),
                      json::array({z(m.a12), z(m.a22), z(m.a23)}),
                      json::array({z(m.a13), z(m.a23), z(m.a33)})});
}

int run_quadform(const QuadformArgs& a) {
  const double threshold = 4.0 * a.lambda2 / (3.0 * (2.0 + a.lambda1));
  const double a2 = a.a2 > 0.0 ? a.a2 : 1.5 * threshold;
  const auto sel = quadform::select_parameters(a.lambda1, a.lambda2, a2);
  Verdict v;
  json j;
  j["lambda1"] = a.lambda1;
  j["lambda2"] = a.lambda2;
  j["a1"] = sel.a1;
  j["a2"] = sel.a2;
  j["a3"] = sel.a3;
  j["a2_threshold"] = threshold;
  j["admissible"] = sel.admissible;
  if (sel.admissible) {
    const double kmin = quadform::min_K_psd(sel.a1, sel.a2, sel.a3, a.lambda1, a.lambda2);
    const double K = std::isnan(a.K) ? kmin : a.K;
    const auto m = quadform::matrix_A_liouville(sel.a1, sel.a2, sel.a3, a.lambda1, a.lambda2, K);
    j["K_min"] = kmin;
    j["K"] = K;
    j["matrix"] = matrix_json(m);
    j["psd"] = quadform::psd_check(m);
    const bool at_min = quadform::psd_check(
        quadform::matrix_A_liouville(sel.a1, sel.a2, sel.a3, a.lambda1, a.lambda2, kmin));
    j["psd_at_K_min"] = at_min;
    v.check(at_min, "quadform.psd_at_K_min", "matrix not PSD at K_min");
  } else {
    const double K = std::isnan(a.K) ? 0.0 : a.K;
    j["K_min"] = nullptr;
    j["K"] = K;
    const auto m = quadform::matrix_A_liouville(sel.a1, sel.a2, sel.a3, a.lambda1, a.lambda2, K);
    j["matrix"] = matrix_json(m);
    j["psd"] = quadform::psd_check(m);
  }
  std::cout << j.dump(2) << '\n';
  return v.code();
}

// ---------------------------------------------------------------- verify-family

struct FamilyArgs {
  std::vector<double> t{0.0, 0.5, 1.0, 2.0};
  double lambda1 = 2.0;
  double lambda2 = 6.0;
  double kappa = 1.0;
  int nodes = 0;  // 0 selects a node count per t
  double residual_tol = 1e-7;
  double norm_tol = 1e-10;
  std::string out;
};

int run_verify_family(const FamilyArgs& a) {
  if (!(a.kappa > 0.0)) throw std::invalid_argument("--kappa must be positive");
  Verdict v;
  Output o(a.out);
  auto& os = o.stream();
  os << "t,kappa,nodes,residual_max,residual_tol,normalization,normalization_err,phi_sup\n";
  for (double t : a.t) {
    const int n = a.nodes > 0 ? a.nodes : pde::nodes_for_family(t);
    const auto grid = sphere::make_grid<quad>(n);
    const auto u = pde::family<quad>({t, a.kappa}, grid);
    const double res = to_double(pde::max_abs(pde::residual<quad>(u, a.lambda1, a.lambda2)));
    const double norm = to_double(pde::normalization(u));
    const double tol = a.residual_tol * a.kappa * a.kappa;
    std::string phi_sup;
    if (a.lambda1 > -2.0 && a.lambda1 < 6.0 && a.lambda2 > 0.0) {
      phi_sup = g17(to_double(pde::phi_estimate<quad>(u, a.lambda1, a.lambda2).sup));
    }
    os << g17(t) << ',' << g17(a.kappa) << ',' << n << ',' << g17(res) << ',' << g17(tol) << ','
       << g17(norm) << ',' << g17(std::abs(norm - 1.0)) << ',' << phi_sup << '\n';
    v.check(res <= tol, "verify-family.residual", "t = " + g17(t) + ": " + ratio_detail(res, tol));
    v.check(std::abs(norm - 1.0) <= a.norm_tol, "verify-family.normalization",
            "t = " + g17(t) + ": " + ratio_detail(std::abs(norm - 1.0), a.norm_tol));
  }
  return v.code();
}

// ---------------------------------------------------------------- identity-check

struct IdentityArgs {
  std::vector<double> t{0.0, 0.5, 1.0, 2.0};
  std::vector<double> c{0.0, 1.0, 5.0 / 3.0};
  double lambda1 = 2.0;
  double lambda2 = 6.0;
  double kappa = 1.0;
  int nodes = 0;
  int random = 0;
  int random_degree = 8;
  std::uint64_t seed = 1;
  double div_tol = 1e-8;
  double identity_tol = 1e-6;
};

int run_identity_check(const IdentityArgs& a) {
  if (!(a.kappa > 0.0)) throw std::invalid_argument("--kappa must be positive");
  Verdict v;
  // Residuals carry the kappa scaling of the terms they compare.
  const double k = std::max(1.0, a.kappa);
  const double div_tol = a.div_tol * k * k;
  const double grad_tol = a.identity_tol * std::pow(k, 2.5);
  const double main_tol = a.identity_tol * k * k * k;
  json out;
  out["lambda1"] = a.lambda1;
  out["lambda2"] = a.lambda2;
  out["kappa"] = a.kappa;
  out["family"] = json::array();
  const quad l1 = a.lambda1, l2 = a.lambda2;
  for (double t : a.t) {
    const int n = a.nodes > 0 ? a.nodes : pde::nodes_for_family(t);
    const auto grid = sphere::make_grid<quad>(n);
    const auto u = pde::family<quad>({t, a.kappa}, grid);
    json row;
    row["t"] = t;
    row["nodes"] = n;
    const double divE = to_double(invariants::check_divE(u));
    const double divF = to_double(invariants::check_divF(u));
    const double gradG = to_double(invariants::check_gradG(u, l1, l2));
    row["divE"] = divE;
    row["divF"] = divF;
    row["gradG"] = gradG;
    row["cs_gap"] = to_double(invariants::gradient_cs_gap(u));
    const std::string at = "t = " + g17(t);
    v.check(divE <= div_tol, "identity-check.divE", at + ": " + ratio_detail(divE, div_tol));
    v.check(divF <= div_tol, "identity-check.divF", at + ": " + ratio_detail(divF, div_tol));
    v.check(gradG <= grad_tol, "identity-check.gradG", at + ": " + ratio_detail(gradG, grad_tol));
    json mains = json::array();
    for (double c : a.c) {
      const double r = to_double(invariants::check_main_identity(u, l1, l2, quad(c)));
      mains.push_back({{"c", c}, {"residual", r}});
      v.check(r <= main_tol, "identity-check.main",
              at + ", c = " + g17(c) + ": " + ratio_detail(r, main_tol));
    }
    row["main"] = mains;
    out["family"].push_back(row);
  }
  if (a.random > 0) {
    const auto grid = sphere::make_grid<quad>(std::max(a.nodes, 64));
    double worstE = 0.0, worstF = 0.0;
    for (int i = 0; i < a.random; ++i) {
      const auto f = sphere::random_field<quad>(grid, quad(a.kappa), a.random_degree, 0.3,
                                                a.seed + static_cast<std::uint64_t>(i));
      worstE = std::max(worstE, to_double(invariants::check_divE(f)));
      worstF = std::max(worstF, to_double(invariants::check_divF(f)));
    }
    out["random"] = {{"count", a.random}, {"degree", a.random_degree}, {"seed", a.seed},
                     {"max_divE", worstE}, {"max_divF", worstF}};
    v.check(worstE <= div_tol, "identity-check.random_divE", ratio_detail(worstE, div_tol));
    v.check(worstF <= div_tol, "identity-check.random_divF", ratio_detail(worstF, div_tol));
  }
  out["passed"] = v.code() == kExitOk;
  std::cout << out.dump(2) << '\n';
  return v.code();
}

// ---------------------------------------------------------------- solve

struct SolveArgs {
  Common common;
  double lambda1 = 1.0;
  double lambda2 = 3.0;
  std::uint64_t seed = 1;
  double amplitude = 0.3;
  std::string init = "random";
  double t = 1.0;
  std::string continuation = "auto";
  int max_iter = 50;
  bool coeffs = false;
};

int run_solve(const SolveArgs& a) {
  const auto& c = a.common;
  if (!(c.kappa > 0.0)) throw std::invalid_argument("--kappa must be positive");
  if (c.degree < 1) throw std::invalid_argument("--degree must be at least 1");
  // Collocation needs room for the nonlinearity.
  const int nodes = std::max(c.nodes, 2 * c.degree + 8);
  const auto grid = sphere::make_grid<double>(nodes);
  sphere::AxiField<double> init;
  if (a.init == "random") {
    init = sphere::random_field<double>(grid, c.kappa, c.degree, a.amplitude, a.seed);
  } else if (a.init == "zero") {
    init = sphere::AxiField<double>::constant(grid, c.kappa, 0.0);
  } else if (a.init == "family") {
    init = pde::family<double>({a.t, c.kappa}, grid);
  } else {
    throw std::invalid_argument("--init must be random, zero or family");
  }
  pde::SolveOptions opt;
  opt.tol = c.tol;
  opt.max_iter = a.max_iter;
  if (a.continuation == "auto") opt.continuation = pde::Continuation::Auto;
  else if (a.continuation == "always") opt.continuation = pde::Continuation::Always;
  else if (a.continuation == "never") opt.continuation = pde::Continuation::Never;
  else throw std::invalid_argument("--continuation must be auto, always or never");

  const auto res = pde::newton_solve(init, a.lambda1, a.lambda2, c.degree, opt);
  const auto fit = pde::fit_family(res.solution);
  const auto cls = region::classify({a.lambda1, a.lambda2, c.kappa});
  json j;
  j["lambda1"] = a.lambda1;
  j["lambda2"] = a.lambda2;
  j["kappa"] = c.kappa;
  j["degree"] = c.degree;
  j["nodes"] = nodes;
  j["seed"] = a.seed;
  j["region"] = std::string(region::to_string(cls.tag));
  j["converged"] = res.converged;
  j["iterations"] = res.iterations;
  j["residual_norm"] = res.residual_norm;
  j["history"] = res.history;
  j["singular_jacobian"] = res.singular_jacobian;
  j["used_continuation"] = res.used_continuation;
  j["message"] = res.message;
  j["max_abs_u"] = pde::max_abs(res.solution);
  j["normalization"] = pde::normalization(res.solution);
  j["fit_family"] = {{"t", fit.t}, {"err", fit.err}};
  if (a.coeffs) j["solution"] = report::field_json(res.solution);
  Output o(c.out);
  o.stream() << j.dump(2) << '\n';
  Verdict v;
  v.check(res.converged, "solve.convergence",
          res.message + ", " + ratio_detail(res.residual_norm, c.tol));
  return v.code();
}

// ---------------------------------------------------------------- onofri

struct OnofriArgs {
  double lambda = 1.0 / 48.0;
  std::vector<double> family;
  int random = 0;
  std::uint64_t seed = 1;
  double amplitude = 2.0;
  int degree = 8;
  int nodes = 64;
  double kappa = 1.0;
  double tol = 1e-9;
};

json onofri_json(const std::string& label, const onofri::OnofriReport<quad>& r) {
  return {{"field", label},
          {"lambda", to_double(r.lambda)},
          {"lambda1", to_double(r.lambda1)},
          {"J", to_double(r.J)},
          {"direct_gap", to_double(r.direct_gap)},
          {"jensen_gap", to_double(r.jensen_gap)},
          {"h1_gap", to_double(r.h1_gap)},
          {"h2_gap", to_double(r.h2_gap)},
          {"passed_direct", r.passed_direct},
          {"passed_J", r.passed_J},
          {"passed_h1", r.passed_h1},
          {"passed_h2", r.passed_h2},
          {"verdicts_agree", r.verdicts_agree}};
}

int run_onofri(const OnofriArgs& a) {
  if (!(a.kappa > 0.0)) throw std::invalid_argument("--kappa must be positive");
  if (!(a.lambda >= 1.0 / 48.0)) throw std::invalid_argument("--lambda must be at least 1/48");
  Verdict v;
  onofri::OnofriTolerances tol;
  tol.inequality = a.tol;
  auto emit = [&](const std::string& label, const sphere::AxiField<quad>& f) {
    const auto r = onofri::onofri_check<quad>(f, quad(a.lambda), tol);
    std::cout << onofri_json(label, r).dump() << '\n';
    v.check(r.passed_direct, "onofri.inequality", label + ": gap " + g17(to_double(r.direct_gap)));
    v.check(r.passed_h1, "onofri.h1_poincare", label + ": gap " + g17(to_double(r.h1_gap)));
    v.check(r.passed_h2, "onofri.h2_poincare", label + ": gap " + g17(to_double(r.h2_gap)));
    v.check(r.verdicts_agree, "onofri.verdict_agreement", label);
  };
  for (double t : a.family) {
    const auto grid = sphere::make_grid<quad>(std::max(a.nodes, pde::nodes_for_family(t)));
    const auto u = pde::family<quad>({t, a.kappa}, grid);
    emit("family t=" + g17(t), u * quad(4));
  }
  if (a.random > 0) {
    const auto grid = sphere::make_grid<quad>(std::max(a.nodes, 2 * a.degree + 8));
    for (int i = 0; i < a.random; ++i) {
      const std::uint64_t s = a.seed + static_cast<std::uint64_t>(i);
      emit("random seed=" + std::to_string(s),
           sphere::random_field<quad>(grid, quad(a.kappa), a.degree, a.amplitude, s));
    }
  }
  return v.code();
}

// ---------------------------------------------------------------- spectrum

int run_spectrum(int lmax, double lambda1, double lambda2, double kappa) {
  if (lmax < 1) throw std::invalid_argument("--lmax must be at least 1");
  if (!(kappa > 0.0)) throw std::invalid_argument("--kappa must be positive");
  std::cout << "l,laplace_eigenvalue,mu,kernel\n";
  for (int l = 0; l <= lmax; ++l) {
    const double eig = 0.0 - static_cast<double>(l) * (l + 3) * kappa;
    const double mu = pde::linearized_mu(l, lambda1, lambda2, kappa);
    const bool kernel = std::abs(mu) <= 1e-12 * kappa * kappa * std::max(1.0, std::abs(eig * eig));
    std::cout << l << ',' << g17(eig) << ',' << g17(mu) << ',' << (kernel ? 1 : 0) << '\n';
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verification tools for the fourth-order Liouville equation on S^4"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Help for every subcommand");

  RegionArgs region_args;
  auto* region_cmd = app.add_subcommand("region", "Classify a (lambda1, lambda2) grid; CSV and SVG");
  region_cmd->add_option("--grid", region_args.grid, "Cells as NXxNY")->capture_default_str();
  region_cmd->add_option("--out", region_args.out, "CSV path (stdout if omitted)");
  region_cmd->add_option("--svg", region_args.svg, "SVG path");
  region_cmd->add_option("--kappa", region_args.kappa, "Curvature scale")->capture_default_str();

  std::vector<double> l1_x;
  bool l1_oracle = false;
  auto* l1_cmd = app.add_subcommand("l1", "Evaluate the boundary curve L1");
  l1_cmd->add_option("--x", l1_x, "Comma-separated arguments in [-2, 2]")->required()->delimiter(',');
  l1_cmd->add_flag("--oracle", l1_oracle, "Compare with the bisection root");

  QuadformArgs qf;
  auto* qf_cmd = app.add_subcommand("quadform", "Quadratic-form matrix, parameter choice and K_min");
  qf_cmd->add_option("--lambda1", qf.lambda1)->capture_default_str();
  qf_cmd->add_option("--lambda2", qf.lambda2)->capture_default_str();
  qf_cmd->add_option("--a2", qf.a2, "a2 (default 1.5 x admissibility threshold)");
  qf_cmd->add_option("--K", qf.K, "K (default K_min)");

  FamilyArgs fam;
  auto* fam_cmd = app.add_subcommand("verify-family", "Residual and normalization of the explicit family");
  fam_cmd->add_option("--t", fam.t, "Comma-separated boost parameters")->delimiter(',')->capture_default_str();
  fam_cmd->add_option("--lambda1", fam.lambda1)->capture_default_str();
  fam_cmd->add_option("--lambda2", fam.lambda2)->capture_default_str();
  fam_cmd->add_option("--kappa", fam.kappa)->capture_default_str();
  fam_cmd->add_option("--nodes", fam.nodes, "Quadrature nodes (0 = automatic per t)")->capture_default_str();
  fam_cmd->add_option("--tol", fam.residual_tol, "Residual tolerance in units of kappa^2")->capture_default_str();
  fam_cmd->add_option("--norm-tol", fam.norm_tol)->capture_default_str();
  fam_cmd->add_option("--out", fam.out, "CSV path (stdout if omitted)");

  IdentityArgs id;
  auto* id_cmd = app.add_subcommand("identity-check", "Divergence relations and the master identity");
  id_cmd->add_option("--t", id.t)->delimiter(',')->capture_default_str();
  id_cmd->add_option("--c", id.c)->delimiter(',')->capture_default_str();
  id_cmd->add_option("--lambda1", id.lambda1)->capture_default_str();
  id_cmd->add_option("--lambda2", id.lambda2)->capture_default_str();
  id_cmd->add_option("--kappa", id.kappa)->capture_default_str();
  id_cmd->add_option("--nodes", id.nodes, "Quadrature nodes (0 = automatic per t)")->capture_default_str();
  id_cmd->add_option("--random", id.random, "Random fields for the divergence checks")->capture_default_str();
  id_cmd->add_option("--random-degree", id.random_degree)->capture_default_str();
  id_cmd->add_option("--seed", id.seed)->envname("LIOUVILLE_SEED")->capture_default_str();
  id_cmd->add_option("--div-tol", id.div_tol)->capture_default_str();
  id_cmd->add_option("--tol", id.identity_tol, "Tolerance for the gradient and master identities")->capture_default_str();

  SolveArgs sv;
  auto* sv_cmd = app.add_subcommand("solve", "Galerkin Newton solve");
  sv_cmd->add_option("--lambda1", sv.lambda1)->capture_default_str();
  sv_cmd->add_option("--lambda2", sv.lambda2)->capture_default_str();
  sv_cmd->add_option("--kappa", sv.common.kappa)->capture_default_str();
  sv_cmd->add_option("--nodes", sv.common.nodes, "Raised to 2*degree+8 if smaller")->capture_default_str();
  sv_cmd->add_option("--degree", sv.common.degree)->capture_default_str();
  sv_cmd->add_option("--tol", sv.common.tol)->capture_default_str();
  sv_cmd->add_option("--seed", sv.seed)->envname("LIOUVILLE_SEED")->capture_default_str();
  sv_cmd->add_option("--amplitude", sv.amplitude)->capture_default_str();
  sv_cmd->add_option("--init", sv.init, "random, zero or family")->capture_default_str();
  sv_cmd->add_option("--t", sv.t, "Family parameter for --init family")->capture_default_str();
  sv_cmd->add_option("--continuation", sv.continuation, "auto, always or never")->capture_default_str();
  sv_cmd->add_option("--max-iter", sv.max_iter)->capture_default_str();
  sv_cmd->add_flag("--coeffs", sv.coeffs, "Include solution coefficients");
  sv_cmd->add_option("--out", sv.common.out, "JSON path (stdout if omitted)");

  OnofriArgs on;
  auto* on_cmd = app.add_subcommand("onofri", "Onofri-type inequality checks, one JSON row per field");
  on_cmd->add_option("--lambda", on.lambda)->capture_default_str();
  on_cmd->add_option("--family", on.family, "Comma-separated t values; checks f = 4 u_t")->delimiter(',');
  on_cmd->add_option("--random", on.random, "Number of random fields")->capture_default_str();
  on_cmd->add_option("--seed", on.seed)->envname("LIOUVILLE_SEED")->capture_default_str();
  on_cmd->add_option("--amplitude", on.amplitude)->capture_default_str();
  on_cmd->add_option("--degree", on.degree)->capture_default_str();
  on_cmd->add_option("--nodes", on.nodes)->capture_default_str();
  on_cmd->add_option("--kappa", on.kappa)->capture_default_str();
  on_cmd->add_option("--tol", on.tol)->capture_default_str();

  int lmax = 6;
  double sp_l1 = 2.0, sp_l2 = 6.0, sp_k = 1.0;
  auto* sp_cmd = app.add_subcommand("spectrum", "Linearized spectrum at u = 0");
  sp_cmd->add_option("--lmax", lmax)->capture_default_str();
  sp_cmd->add_option("--lambda1", sp_l1)->capture_default_str();
  sp_cmd->add_option("--lambda2", sp_l2)->capture_default_str();
  sp_cmd->add_option("--kappa", sp_k)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*region_cmd) return run_region(region_args);
    if (*l1_cmd) return run_l1(l1_x, l1_oracle);
    if (*qf_cmd) return run_quadform(qf);
    if (*fam_cmd) return run_verify_family(fam);
    if (*id_cmd) return run_identity_check(id);
    if (*sv_cmd) return run_solve(sv);
    if (*on_cmd) return run_onofri(on);
    if (*sp_cmd) return run_spectrum(lmax, sp_l1, sp_l2, sp_k);
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBreach;
  }
  return kExitUsage;
}
