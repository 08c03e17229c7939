#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "harnack/core.hpp"
#include "harnack/domination.hpp"
#include "harnack/grid.hpp"
#include "harnack/kernels.hpp"
#include "harnack/oracle.hpp"
#include "harnack/radii.hpp"
#include "harnack/shift5.hpp"
#include "harnack/verify.hpp"

namespace harnack {

using Json = nlohmann::ordered_json;

/// {"rows": n, "cols": n, "data": [[re, im], ...]} row-major.
inline Json matrix_to_json(const CMatrix& T) {
  Json j;
  j["rows"] = T.rows();
  j["cols"] = T.cols();
  Json data = Json::array();
  for (Eigen::Index i = 0; i < T.rows(); ++i)
    for (Eigen::Index k = 0; k < T.cols(); ++k)
      data.push_back(Json::array({T(i, k).real(), T(i, k).imag()}));
  j["data"] = data;
  return j;
}

inline CMatrix matrix_from_json(const Json& j) {
  if (!j.is_object()) throw InputError("matrix: expected a JSON object");
  for (const char* field : {"rows", "cols", "data"})
    if (!j.contains(field))
      throw InputError(std::string("matrix: missing field \"") + field + "\"");
  if (!j["rows"].is_number_integer() || !j["cols"].is_number_integer())
    throw InputError("matrix: \"rows\" and \"cols\" must be integers");
  const long rows = j["rows"].get<long>();
  const long cols = j["cols"].get<long>();
  if (rows < 1 || cols < 1) throw InputError("matrix: \"rows\" and \"cols\" must be positive");
  if (rows != cols) throw InputError("matrix: \"rows\" and \"cols\" must agree");
  if (!j["data"].is_array())
    throw InputError("matrix: \"data\" must be an array of [re, im] pairs");
  const auto& data = j["data"];
  if (static_cast<long>(data.size()) != rows * cols)
    throw InputError("matrix: \"data\" has " + std::to_string(data.size()) +
                     " entries, expected " + std::to_string(rows * cols));
  CMatrix T(rows, cols);
  for (long k = 0; k < rows * cols; ++k) {
    const auto& cell = data[static_cast<size_t>(k)];
    if (!cell.is_array() || cell.size() != 2 || !cell[0].is_number() || !cell[1].is_number())
      throw InputError("matrix: \"data\"[" + std::to_string(k) + "] must be [re, im]");
    T(k / cols, k % cols) = Complex(cell[0].get<double>(), cell[1].get<double>());
  }
  require_finite(T, "matrix");
  return T;
}

inline Json grid_to_json(const GridSpec& g) {
  Json j;
  j["radii"] = g.radii;
  j["angles"] = g.angles;
  j["boundary_angles"] = g.boundary_angles;
  return j;
}

inline GridSpec grid_from_json(const Json& j) {
  if (!j.is_object()) throw InputError("grid: expected a JSON object");
  GridSpec g;
  if (j.contains("radii")) {
    if (!j["radii"].is_array()) throw InputError("grid: \"radii\" must be an array");
    for (const auto& r : j["radii"]) {
      if (!r.is_number()) throw InputError("grid: \"radii\" entries must be numbers");
      g.radii.push_back(r.get<double>());
    }
  }
  if (j.contains("angles")) g.angles = j["angles"].get<int>();
  if (j.contains("boundary_angles")) g.boundary_angles = j["boundary_angles"].get<int>();
  validate_grid(g);
  return g;
}

inline Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

inline Json entry_to_json(const ConditionEntry& e) {
  Json j;
  j["pass"] = e.pass;
  j["residual"] = e.residual;
  if (e.margin) j["margin"] = *e.margin;
  return j;
}

inline Json report_to_json(const ConditionReport& rep) {
  Json j;
  Json entries;
  for (const auto& [name, entry] : rep.entries) entries[name] = entry_to_json(entry);
  j["entries"] = entries;
  j["verdict"] = rep.verdict;
  return j;
}

inline Json radius_to_json(const RadiusResult& r) {
  Json j;
  j["method"] = radius_method_name(r.method);
  j["value"] = r.value;
  j["iterations"] = r.iterations;
  j["residual"] = r.residual;
  return j;
}

inline Json kernel_to_json(const KernelEvaluation& e) {
  Json j = matrix_to_json(e.K.matrix());
  j["z"] = complex_to_json(e.z);
  j["rho"] = e.rho;
  j["min_eig"] = e.min_eigenvalue;
  j["symmetrization_defect"] = e.symmetrization_defect;
  return j;
}

inline Json sample_to_json(const DominationSample& s) {
  Json j;
  j["z"] = complex_to_json(s.z);
  j["feasible"] = s.feasible;
  j["c2_min"] = s.c2_min;
  j["null_residual"] = s.null_residual;
  return j;
}

inline Json certificate_to_json(const DominationCertificate& c, bool with_samples = true) {
  Json j;
  j["feasible"] = c.feasible;
  j["c"] = c.c ? Json(*c.c) : Json(nullptr);
  j["rho"] = c.rho;
  j["tol"] = c.tol;
  j["cap"] = c.cap;
  j["max_c2_min"] = c.max_c2_min;
  j["worst_null_residual"] = c.worst_null_residual;
  j["grid"] = grid_to_json(c.grid);
  if (with_samples) {
    Json samples = Json::array();
    for (const DominationSample& s : c.samples) samples.push_back(sample_to_json(s));
    j["samples"] = samples;
  }
  return j;
}

inline Json equivalence_to_json(const EquivalenceResult& r, bool with_samples = false) {
  Json j;
  j["equivalent"] = r.equivalent;
  j["c"] = r.c ? Json(*r.c) : Json(nullptr);
  j["forward"] = certificate_to_json(r.forward, with_samples);
  j["backward"] = certificate_to_json(r.backward, with_samples);
  return j;
}

inline Json family_to_json(const FamilyTag& tag) {
  Json j;
  j["family"] = family_name(tag.family);
  j["theta"] = tag.theta ? Json(*tag.theta) : Json(nullptr);
  return j;
}

inline Json identity_to_json(const PolyIdentityCheck& c) {
  Json j;
  j["id"] = poly_identity_name(c.id);
  j["max_degree"] = c.max_degree;
  j["pass"] = c.pass;
  j["max_residual"] = c.max_residual;
  j["scale"] = c.scale;
  Json samples = Json::array();
  for (const Complex& v : c.sample_values) samples.push_back(complex_to_json(v));
  j["sample_values"] = samples;
  return j;
}

inline Json relations_to_json(const ScalarRelationReport& rep) {
  Json j;
  Json entries;
  for (const auto& [name, entry] : rep.entries) entries[name] = entry_to_json(entry);
  j["entries"] = entries;
  j["all_pass"] = rep.all_pass;
  return j;
}

inline Json trace_to_json(const TraceCheckReport& rep) {
  Json j;
  j["trace1"] = complex_to_json(rep.trace1);
  j["trace2"] = complex_to_json(rep.trace2);
  j["residual1"] = rep.residual1;
  j["residual2"] = rep.residual2;
  j["contradiction_gap"] = rep.contradiction_gap;
  j["pass"] = rep.pass;
  return j;
}

inline Json verify_to_json(const VerifyReport& rep) {
  Json j;
  j["dim"] = rep.dim;
  j["theta_samples"] = rep.theta_samples;
  Json checks = Json::array();
  for (const TheoremCheck& c : rep.checks) {
    Json cj;
    cj["name"] = c.name;
    cj["pass"] = c.pass;
    cj["residual"] = c.residual;
    checks.push_back(cj);
  }
  j["checks"] = checks;
  j["pass_count"] = rep.pass_count;
  j["fail_count"] = rep.fail_count;
  j["worst_residuals"] = rep.worst_residuals;
  j["max_equivalence_constant"] = rep.max_equivalence_constant;
  j["all_pass"] = rep.all_pass;
  return j;
}

}  // namespace harnack
