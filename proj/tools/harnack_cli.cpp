// Command line front end. Every verb prints a single JSON document to
// stdout and a one-line human summary to stderr. Exit codes: 0 when the
// requested check passed (or the verb only computes a value), 1 when a
// check failed or a certificate is infeasible, 2 for usage and input
// errors.

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "harnack/harnack.hpp"

namespace {

using harnack::Json;

harnack::Complex parse_pair(const std::string& s, const char* flag) {
  const auto comma = s.find(',');
  try {
    if (comma == std::string::npos) throw std::invalid_argument("no comma");
    size_t p1 = 0;
    size_t p2 = 0;
    const std::string left = s.substr(0, comma);
    const std::string right = s.substr(comma + 1);
    const double re = std::stod(left, &p1);
    const double im = std::stod(right, &p2);
    if (p1 != left.size() || p2 != right.size()) throw std::invalid_argument("trailing");
    return {re, im};
  } catch (const std::exception&) {
    throw harnack::InputError(std::string(flag) + ": could not parse \"" + s +
                              "\" as re,im");
  }
}

std::vector<double> parse_csv(const std::string& s, const char* flag) {
  std::vector<double> out;
  size_t pos = 0;
  try {
    while (pos <= s.size()) {
      const size_t comma = s.find(',', pos);
      const std::string tok =
          s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
      size_t used = 0;
      out.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw std::invalid_argument("trailing");
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
  } catch (const std::exception&) {
    throw harnack::InputError(std::string(flag) + ": could not parse \"" + s +
                              "\" as a comma separated list of numbers");
  }
  return out;
}

harnack::CMatrix load_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw harnack::InputError("cannot open " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw harnack::InputError(path + ": " + e.what());
  }
  return harnack::matrix_from_json(j);
}

std::optional<double> env_default_tol() {
  const char* e = std::getenv("HARNACK_DEFAULT_TOL");
  if (e == nullptr || *e == '\0') return std::nullopt;
  try {
    size_t used = 0;
    const double v = std::stod(e, &used);
    if (used != std::strlen(e) || !(v > 0.0)) throw std::invalid_argument("range");
    return v;
  } catch (const std::exception&) {
    throw harnack::InputError(std::string("HARNACK_DEFAULT_TOL: invalid value \"") + e +
                              "\"");
  }
}

struct GridFlags {
  std::string radii_csv;
  int angles = -1;
  int boundary_angles = -1;

  void attach(CLI::App* cmd) {
    cmd->add_option("--radii", radii_csv,
                    "Comma separated interior radii in (0,1), overriding the default");
    cmd->add_option("--angles", angles, "Samples per interior circle");
    cmd->add_option("--boundary-angles", boundary_angles, "Samples on the unit circle");
  }

  harnack::GridSpec resolve(harnack::GridSpec g) const {
    if (!radii_csv.empty()) g.radii = parse_csv(radii_csv, "--radii");
    if (angles >= 0) g.angles = angles;
    if (boundary_angles >= 0) g.boundary_angles = boundary_angles;
    harnack::validate_grid(g);
    return g;
  }
};

void emit(const Json& doc) { std::cout << doc.dump(2) << "\n"; }

double pick_tol(const std::optional<double>& flag, const std::optional<double>& env,
                double fallback) {
  if (flag) return *flag;
  if (env) return *env;
  return fallback;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kernel calculus toolkit for rho-contractions and the parts of the "
               "normalized truncated shift"};
  app.require_subcommand(1);

  // shift
  auto* cmd_shift = app.add_subcommand("shift", "Print a truncated shift matrix");
  int shift_dim = 5;
  bool shift_normalized = false;
  cmd_shift->add_option("--dim", shift_dim, "Dimension (at least 2)")->required();
  cmd_shift->add_flag("--normalized", shift_normalized,
                      "Use the weight 1/cos(pi/(dim+1)) instead of 1");

  // radius
  auto* cmd_radius = app.add_subcommand("radius", "Compute an operator radius");
  std::string radius_file;
  std::string radius_method;
  std::optional<double> radius_rho;
  int radius_angle_samples = 64;
  std::optional<double> radius_tol;
  GridFlags radius_grid;
  cmd_radius->add_option("matrix", radius_file, "Matrix JSON file")->required();
  cmd_radius->add_option("--method", radius_method,
                         "norm | spectral | numerical | rho (default: norm, or rho when "
                         "--rho is given)");
  cmd_radius->add_option("--rho", radius_rho, "Parameter rho for the rho-radius");
  cmd_radius->add_option("--angle-samples", radius_angle_samples,
                         "Angle samples for the numerical radius scan");
  cmd_radius->add_option("--tol", radius_tol, "Bisection tolerance for the rho-radius");
  radius_grid.attach(cmd_radius);

  // kernel
  auto* cmd_kernel = app.add_subcommand("kernel", "Evaluate the rho-kernel at one point");
  std::string kernel_file;
  std::string kernel_z;
  double kernel_rho = 2.0;
  cmd_kernel->add_option("matrix", kernel_file, "Matrix JSON file")->required();
  cmd_kernel->add_option("--z", kernel_z, "Evaluation point re,im in the closed disk")
      ->required();
  cmd_kernel->add_option("--rho", kernel_rho, "Parameter rho (default 2)");

  // dominate
  auto* cmd_dom = app.add_subcommand("dominate", "Certify Harnack domination T1 <= c^2 T0");
  std::string dom_file1, dom_file0;
  double dom_rho = 2.0;
  std::optional<double> dom_tol;
  double dom_cap = 1e6;
  GridFlags dom_grid;
  cmd_dom->add_option("dominated", dom_file1, "Matrix JSON file for T1")->required();
  cmd_dom->add_option("dominating", dom_file0, "Matrix JSON file for T0")->required();
  cmd_dom->add_option("--rho", dom_rho, "Parameter rho (default 2)");
  cmd_dom->add_option("--tol", dom_tol, "Null-space leak tolerance (default 1e-8)");
  cmd_dom->add_option("--cap", dom_cap, "Largest admissible c^2 (default 1e6)");
  dom_grid.attach(cmd_dom);

  // equiv
  auto* cmd_equiv = app.add_subcommand("equiv", "Certify mutual Harnack domination");
  std::string eq_file1, eq_file0;
  double eq_rho = 2.0;
  std::optional<double> eq_tol;
  double eq_cap = 1e6;
  GridFlags eq_grid;
  cmd_equiv->add_option("first", eq_file1, "Matrix JSON file")->required();
  cmd_equiv->add_option("second", eq_file0, "Matrix JSON file")->required();
  cmd_equiv->add_option("--rho", eq_rho, "Parameter rho (default 2)");
  cmd_equiv->add_option("--tol", eq_tol, "Null-space leak tolerance (default 1e-8)");
  cmd_equiv->add_option("--cap", eq_cap, "Largest admissible c^2 (default 1e6)");
  eq_grid.attach(cmd_equiv);

  // classify
  auto* cmd_classify =
      app.add_subcommand("classify", "Match a 5x5 matrix against the part catalogue");
  std::string cls_file;
  std::optional<double> cls_tol;
  cmd_classify->add_option("matrix", cls_file, "Matrix JSON file")->required();
  cmd_classify->add_option("--tol", cls_tol, "Pattern matching tolerance (default 1e-6)");

  // verify-theorem
  auto* cmd_verify =
      app.add_subcommand("verify-theorem", "Sweep the reference members of a part");
  int ver_dim = 5;
  int ver_samples = 8;
  std::optional<double> ver_tol;
  GridFlags ver_grid;
  cmd_verify->add_option("--dim", ver_dim, "Dimension between 2 and 5")->required();
  cmd_verify->add_option("--theta-samples", ver_samples,
                         "Equispaced angles to sweep (default 8)");
  cmd_verify->add_option("--tol", ver_tol, "Condition tolerance (default 1e-8)");
  ver_grid.attach(cmd_verify);

  // oracle
  auto* cmd_oracle = app.add_subcommand(
      "oracle", "Check the polynomial identities behind the boundary kernel relation");
  std::string ora_file;
  std::string ora_lambda;
  std::string ora_v0, ora_v1;
  cmd_oracle->add_option("matrix", ora_file, "Matrix JSON file (5x5)")->required();
  cmd_oracle->add_option("--lambda", ora_lambda,
                         "Eigenvalue re,im with R^3 = lambda R^2 (default: tr R)");
  cmd_oracle->add_option("--v0", ora_v0, "Null vector weight v0 as re,im");
  cmd_oracle->add_option("--v1", ora_v1, "Null vector weight v1 as re,im");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    const std::optional<double> env_tol = env_default_tol();

    if (app.got_subcommand(cmd_shift)) {
      const harnack::CMatrix S = harnack::build_shift(shift_dim, shift_normalized);
      emit(harnack::matrix_to_json(S));
      std::cerr << "shift dim=" << shift_dim << " weight="
                << (shift_dim > 1 ? std::abs(S(0, 1)) : 0.0) << "\n";
      return 0;
    }

    if (app.got_subcommand(cmd_radius)) {
      const harnack::CMatrix T = load_matrix(radius_file);
      std::string method = radius_method;
      if (method.empty()) method = radius_rho ? "rho" : "norm";
      harnack::RadiusResult r;
      if (method == "norm") {
        r = harnack::operator_norm(T);
      } else if (method == "spectral") {
        r = harnack::spectral_radius(T);
      } else if (method == "numerical") {
        r = harnack::numerical_radius(T, radius_angle_samples);
      } else if (method == "rho") {
        if (!radius_rho) throw harnack::InputError("radius: --method rho needs --rho");
        const harnack::GridSpec g = radius_grid.resolve(harnack::default_disk_grid());
        r = harnack::rho_radius(T, *radius_rho, g,
                                pick_tol(radius_tol, env_tol, 1e-7));
      } else {
        throw harnack::InputError("radius: unknown method \"" + method + "\"");
      }
      Json j = harnack::radius_to_json(r);
      if (radius_rho) j["rho"] = *radius_rho;
      emit(j);
      std::cerr << "radius method=" << harnack::radius_method_name(r.method)
                << " value=" << r.value << "\n";
      return 0;
    }

    if (app.got_subcommand(cmd_kernel)) {
      const harnack::CMatrix T = load_matrix(kernel_file);
      const harnack::Complex z = parse_pair(kernel_z, "--z");
      const harnack::KernelEvaluation eval = harnack::rho_kernel(T, z, kernel_rho);
      emit(harnack::kernel_to_json(eval));
      const bool psd =
          eval.min_eigenvalue >= -1e-8 * (1.0 + eval.K.operator_norm());
      std::cerr << "kernel rho=" << kernel_rho << " min_eig=" << eval.min_eigenvalue
                << (psd ? " (psd)" : " (not psd)") << "\n";
      return psd ? 0 : 1;
    }

    if (app.got_subcommand(cmd_dom)) {
      const harnack::CMatrix T1 = load_matrix(dom_file1);
      const harnack::CMatrix T0 = load_matrix(dom_file0);
      const harnack::GridSpec g = dom_grid.resolve(harnack::default_harnack_grid());
      const harnack::DominationCertificate cert = harnack::domination_constant(
          T1, T0, dom_rho, g, pick_tol(dom_tol, env_tol, 1e-8), dom_cap);
      emit(harnack::certificate_to_json(cert));
      if (cert.feasible)
        std::cerr << "dominate: feasible c=" << *cert.c << "\n";
      else
        std::cerr << "dominate: infeasible\n";
      return cert.feasible ? 0 : 1;
    }

    if (app.got_subcommand(cmd_equiv)) {
      const harnack::CMatrix T1 = load_matrix(eq_file1);
      const harnack::CMatrix T0 = load_matrix(eq_file0);
      const harnack::GridSpec g = eq_grid.resolve(harnack::default_harnack_grid());
      const harnack::EquivalenceResult r = harnack::is_equivalent(
          T1, T0, eq_rho, g, pick_tol(eq_tol, env_tol, 1e-8), eq_cap);
      emit(harnack::equivalence_to_json(r, true));
      if (r.equivalent)
        std::cerr << "equiv: equivalent c=" << *r.c << "\n";
      else
        std::cerr << "equiv: not equivalent\n";
      return r.equivalent ? 0 : 1;
    }

    if (app.got_subcommand(cmd_classify)) {
      const harnack::CMatrix T = load_matrix(cls_file);
      const auto [tag, rep] = harnack::classify(T, pick_tol(cls_tol, env_tol, 1e-6));
      Json j = harnack::family_to_json(tag);
      j["conditions"] = harnack::report_to_json(rep);
      emit(j);
      std::cerr << "classify: " << harnack::family_name(tag.family);
      if (tag.theta) std::cerr << " theta=" << *tag.theta;
      std::cerr << "\n";
      return tag.family != harnack::Family::none ? 0 : 1;
    }

    if (app.got_subcommand(cmd_verify)) {
      const harnack::GridSpec g = ver_grid.resolve(harnack::default_harnack_grid());
      const harnack::VerifyReport rep = harnack::verify_theorem(
          ver_dim, ver_samples, g, pick_tol(ver_tol, env_tol, 1e-8));
      emit(harnack::verify_to_json(rep));
      std::cerr << "verify-theorem dim=" << rep.dim << ": " << rep.pass_count << "/"
                << (rep.pass_count + rep.fail_count) << " checks passed\n";
      return rep.all_pass ? 0 : 1;
    }

    if (app.got_subcommand(cmd_oracle)) {
      const harnack::CMatrix T = load_matrix(ora_file);
      const harnack::BlockForm bf = harnack::block_decompose(T);
      harnack::NullVectorParams params;
      if (!ora_v0.empty()) params.v0 = parse_pair(ora_v0, "--v0");
      if (!ora_v1.empty()) params.v1 = parse_pair(ora_v1, "--v1");
      const harnack::Complex lambda =
          ora_lambda.empty() ? harnack::Complex(bf.R.trace()) : parse_pair(ora_lambda, "--lambda");

      Json identities = Json::array();
      bool verdict = true;
      double worst = 0.0;
      for (harnack::PolyIdentity id :
           {harnack::PolyIdentity::eq1, harnack::PolyIdentity::eq2,
            harnack::PolyIdentity::eq3, harnack::PolyIdentity::eq4}) {
        const harnack::PolyIdentityCheck chk =
            harnack::check_polynomial_identity(bf, params, lambda, id);
        identities.push_back(harnack::identity_to_json(chk));
        verdict = verdict && chk.pass;
        worst = std::max(worst, chk.max_residual);
      }
      const harnack::ScalarRelationReport scal =
          harnack::check_scalar_relations(bf, params);
      verdict = verdict && scal.all_pass;

      // sigma pair from the spectrum of R: the two largest eigenvalues.
      Eigen::ComplexEigenSolver<harnack::CMatrix> es(harnack::CMatrix(bf.R), false);
      std::vector<harnack::Complex> eigs = {es.eigenvalues()(0), es.eigenvalues()(1),
                                            es.eigenvalues()(2)};
      std::sort(eigs.begin(), eigs.end(), [](harnack::Complex a, harnack::Complex b) {
        return std::abs(a) > std::abs(b);
      });
      const harnack::TraceCheckReport trace =
          harnack::trace_cross_check(bf.R, eigs[0] + eigs[1], eigs[0] * eigs[1]);
      verdict = verdict && trace.pass;

      Json j;
      j["identities"] = identities;
      j["scalar_relations"] = harnack::relations_to_json(scal);
      j["trace"] = harnack::trace_to_json(trace);
      j["verdict"] = verdict;
      emit(j);
      std::cerr << "oracle: " << (verdict ? "pass" : "fail") << " worst_identity_residual="
                << worst << "\n";
      return verdict ? 0 : 1;
    }

    std::cerr << "error: no verb given\n";
    return 2;
  } catch (const harnack::SingularityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
