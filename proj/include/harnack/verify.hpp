#pragma once

#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "harnack/core.hpp"
#include "harnack/domination.hpp"
#include "harnack/oracle.hpp"
#include "harnack/shift5.hpp"

namespace harnack {

struct TheoremCheck {
  std::string name;
  bool pass = false;
  double residual = 0.0;
};

struct VerifyReport {
  int dim = 5;
  int theta_samples = 8;
  std::vector<TheoremCheck> checks;
  int pass_count = 0;
  int fail_count = 0;
  bool all_pass = false;
  std::map<std::string, double> worst_residuals;
  double max_equivalence_constant = 0.0;
};

namespace detail {

inline std::string theta_label(const char* prefix, double theta) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%s theta=%.6f", prefix, theta);
  return buf;
}

inline void add_check(VerifyReport& rep, const std::string& name, bool pass,
                      double residual, const char* category) {
  rep.checks.push_back({name, pass, residual});
  auto [it, inserted] = rep.worst_residuals.try_emplace(category, residual);
  if (!inserted) it->second = std::max(it->second, residual);
}

inline double worst_entry_residual(const ConditionReport& rep) {
  double r = 0.0;
  for (const auto& [name, entry] : rep.entries) r = std::max(r, entry.residual);
  return r;
}

}  // namespace detail

/*
 * Sweeps the reference members of the part of the normalized shift in the
 * given dimension over theta_samples equispaced angles and records, per
 * member: the condition report, mutual Harnack domination with the shift,
 * classification round-trip and the polynomial oracle (the latter two in
 * dimension five only, where the catalogue lives).
 */
inline VerifyReport verify_theorem(int dim, int theta_samples = 8,
                                   const GridSpec& grid = default_harnack_grid(),
                                   double tol = 1e-8) {
  if (dim < 2 || dim > 5) throw InputError("verify_theorem: dim must be between 2 and 5");
  if (theta_samples < 1) throw InputError("verify_theorem: theta_samples must be at least 1");
  if (!(tol > 0.0)) throw InputError("verify_theorem: tol must be positive");
  validate_grid(grid);

  VerifyReport rep;
  rep.dim = dim;
  rep.theta_samples = theta_samples;
  const CMatrix S = build_shift(dim);
  const double two_pi = 2.0 * std::numbers::pi;

  const int sweep = (dim == 3 || dim == 5) ? theta_samples : 1;
  for (int j = 0; j < sweep; ++j) {
    const double theta = two_pi * j / theta_samples;
    const std::vector<CMatrix> members = reference_family(dim, theta);
    for (size_t m = 0; m < members.size(); ++m) {
      const CMatrix& T = members[m];
      std::string label;
      if (dim == 5)
        label = detail::theta_label(m == 0 ? "family1" : "family2", theta);
      else if (dim == 4)
        label = (m == 0) ? "shift4" : "second_form4";
      else if (dim == 3)
        label = detail::theta_label("orbit3", theta);
      else
        label = "shift2";

      if (dim == 5) {
        const ConditionReport cond = check_corollary_conditions(T, {}, grid, tol);
        detail::add_check(rep, label + " conditions", cond.verdict,
                          detail::worst_entry_residual(cond), "conditions");

        const auto [tag, cond2] = classify(T);
        bool class_ok = false;
        double class_res = 1.0;
        const Family expected = (m == 0) ? Family::family1 : Family::family2;
        if (tag.family == expected && tag.theta) {
          double d = std::fmod(std::abs(*tag.theta - theta), two_pi);
          d = std::min(d, two_pi - d);
          class_ok = d <= 1e-9;
          class_res = d;
        } else if (m == 0 && tag.family == Family::shift_itself) {
          double d = std::fmod(theta, two_pi);
          d = std::min(d, two_pi - d);
          class_ok = d <= 1e-6;
          class_res = d;
        }
        detail::add_check(rep, label + " classify", class_ok, class_res, "classify");

        const BlockForm bf = block_decompose(T);
        double oracle_res = 0.0;
        bool oracle_ok = true;
        for (PolyIdentity id : {PolyIdentity::eq1, PolyIdentity::eq2, PolyIdentity::eq3,
                                PolyIdentity::eq4}) {
          const PolyIdentityCheck chk =
              check_polynomial_identity(bf, {}, bf.R.trace(), id);
          oracle_ok = oracle_ok && chk.pass;
          oracle_res = std::max(oracle_res, chk.max_residual);
        }
        const ScalarRelationReport scal = check_scalar_relations(bf);
        oracle_ok = oracle_ok && scal.all_pass;
        for (const auto& [name, entry] : scal.entries)
          oracle_res = std::max(oracle_res, entry.residual);
        detail::add_check(rep, label + " oracle", oracle_ok, oracle_res, "oracle");
      }

      const EquivalenceResult eq = is_equivalent(T, S, 2.0, grid, tol);
      const double eq_res =
          std::max(eq.forward.worst_null_residual, eq.backward.worst_null_residual);
      detail::add_check(rep, label + " equivalent_to_shift", eq.equivalent, eq_res,
                        "equivalence");
      if (eq.c) rep.max_equivalence_constant = std::max(rep.max_equivalence_constant, *eq.c);
    }
  }

  for (const TheoremCheck& c : rep.checks) (c.pass ? rep.pass_count : rep.fail_count)++;
  rep.all_pass = rep.fail_count == 0;
  return rep;
}

}  // namespace harnack
