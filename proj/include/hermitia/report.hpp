#pragma once

#include <charconv>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hermitia/analysis.hpp"
#include "hermitia/connection.hpp"
#include "hermitia/core.hpp"
#include "hermitia/curvature.hpp"
#include "hermitia/models.hpp"
#include "hermitia/structure.hpp"

// JSON conversions for the result structs plus CSV projections.  nlohmann's
// object type keeps keys sorted and prints doubles in shortest round-trip
// form, so serialized reports are byte-identical across runs.

namespace hermitia {

inline std::string fmt_double(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

inline void to_json(nlohmann::json& j, const ConnectionParams& p) {
  j = nlohmann::json{{"r", p.r}, {"s", p.s}, {"t", p.t()}};
}

inline void to_json(nlohmann::json& j, const ValidationReport& v) {
  j = nlohmann::json{{"antisymmetry_ok", v.antisymmetry_ok},
                     {"jacobi_residuals", v.jacobi_residual},
                     {"tol", v.tol},
                     {"ok", v.ok}};
}

inline void to_json(nlohmann::json& j, const BalancedReport& b) {
  auto eta = nlohmann::json::array();
  for (const auto& e : b.eta)
    eta.push_back(nlohmann::json{{"re", e.real()}, {"im", e.imag()}});
  j = nlohmann::json{{"balanced", b.balanced},
                     {"eta", eta},
                     {"max_abs_eta", b.max_abs_eta}};
}

inline void to_json(nlohmann::json& j, const HSCVerdict& v) {
  j = nlohmann::json{{"constant", v.constant},
                     {"c", v.c},
                     {"max_residual", v.max_residual},
                     {"witness", v.witness}};
}

inline void to_json(nlohmann::json& j, const FlatCheck& f) {
  j = nlohmann::json{{"flat", f.flat}, {"max_abs", f.max_abs}};
}

inline void to_json(nlohmann::json& j, const IdentityCheck& c) {
  j = nlohmann::json{{"name", c.name}, {"max_residual", c.max_residual}, {"ok", c.ok}};
}

inline void to_json(nlohmann::json& j, const IdentityReport& r) {
  j = nlohmann::json{{"checks", r.checks}, {"tol", r.tol}, {"all_ok", r.all_ok}};
}

inline void to_json(nlohmann::json& j, const ScanRow& row) {
  j = nlohmann::json{{"r", row.r},
                     {"s", row.s},
                     {"t", row.t},
                     {"on_chen_nie", row.on_chen_nie},
                     {"verdict", row.verdict},
                     {"flat", row.flat},
                     {"flat_residual", row.flat_residual}};
}

inline void to_json(nlohmann::json& j, const HopfHscReport& r) {
  j = nlohmann::json{{"params", r.params},
                     {"t", r.t},
                     {"on_chen_nie", r.on_chen_nie},
                     {"verdict", r.verdict},
                     {"witness_value", r.witness_value}};
}

inline void to_json(nlohmann::json& j, const Btp3Verdict& v) {
  j = nlohmann::json{{"case", btp3_case_name(v.which)},
                     {"params", v.params},
                     {"t", v.t},
                     {"lambda", v.lambda},
                     {"feasible", v.feasible},
                     {"c", v.c},
                     {"equation_lhs", v.equation_lhs},
                     {"equation_rhs", v.equation_rhs},
                     {"equation_residual", v.equation_residual},
                     {"full_residual", v.full_residual}};
}

// Sparse view of a curvature tensor: only nonzero entries, fixed i,j,k,l order.
inline void to_json(nlohmann::json& j, const CurvatureTensor& R) {
  auto entries = nlohmann::json::array();
  for (int i = 0; i < R.n; ++i)
    for (int jj = 0; jj < R.n; ++jj)
      for (int k = 0; k < R.n; ++k)
        for (int l = 0; l < R.n; ++l) {
          cplx v = R(i, jj, k, l);
          if (v == cplx{}) continue;
          entries.push_back(nlohmann::json{{"i", i + 1},
                                           {"j", jj + 1},
                                           {"k", k + 1},
                                           {"l", l + 1},
                                           {"re", v.real()},
                                           {"im", v.imag()}});
        }
  j = nlohmann::json{{"n", R.n},
                     {"kind", kind_name(R.kind)},
                     {"entries", entries},
                     {"max_abs", R.max_abs()},
                     {"hermitian_symmetry_residual", R.hermitian_symmetry_residual()}};
}

// Standard envelope around every machine-readable result.
inline nlohmann::json report_envelope(const std::string& command,
                                      nlohmann::json inputs, std::uint64_t seed,
                                      nlohmann::json results) {
  return nlohmann::json{{"schema_version", "1"},
                        {"tool_version", kToolVersion},
                        {"command", command},
                        {"inputs", std::move(inputs)},
                        {"seed", seed},
                        {"results", std::move(results)}};
}

// CSV projections.  Every value is printed in shortest round-trip form.

inline void curvature_to_csv(const CurvatureTensor& R, std::ostream& out) {
  out << "i,j,k,l,re,im\n";
  for (int i = 0; i < R.n; ++i)
    for (int j = 0; j < R.n; ++j)
      for (int k = 0; k < R.n; ++k)
        for (int l = 0; l < R.n; ++l) {
          cplx v = R(i, j, k, l);
          out << i + 1 << ',' << j + 1 << ',' << k + 1 << ',' << l + 1 << ','
              << fmt_double(v.real()) << ',' << fmt_double(v.imag()) << '\n';
        }
}

inline void scan_to_csv(const std::vector<ScanRow>& rows, std::ostream& out) {
  out << "r,s,t,on_chen_nie,constant,c,max_residual,flat,flat_residual\n";
  for (const auto& row : rows) {
    out << fmt_double(row.r) << ',' << fmt_double(row.s) << ','
        << fmt_double(row.t) << ',' << (row.on_chen_nie ? 1 : 0) << ','
        << (row.verdict.constant ? 1 : 0) << ',' << fmt_double(row.verdict.c)
        << ',' << fmt_double(row.verdict.max_residual) << ','
        << (row.flat ? 1 : 0) << ',' << fmt_double(row.flat_residual) << '\n';
  }
}

}  // namespace hermitia
