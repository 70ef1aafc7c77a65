#pragma once

#include <array>
#include <cmath>
#include <vector>

#include "hermitia/connection.hpp"
#include "hermitia/core.hpp"
#include "hermitia/curvature.hpp"
#include "hermitia/structure.hpp"

namespace hermitia {

// Holomorphic sectional curvature of Rt in direction X (not necessarily
// unit): R(X, Xbar, X, Xbar) / |X|^4.
inline double hsc(const CurvatureTensor& Rt, const std::vector<cplx>& X) {
  int n = Rt.n;
  if (X.size() != static_cast<std::size_t>(n))
    throw std::invalid_argument("hsc: direction has wrong dimension");
  double norm2 = 0;
  for (const auto& x : X) norm2 += std::norm(x);
  if (norm2 < 1e-30) throw std::invalid_argument("hsc: zero direction");
  cplx acc{};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          acc += Rt(i, j, k, l) * X[i] * std::conj(X[j]) * X[k] * std::conj(X[l]);
  return acc.real() / (norm2 * norm2);
}

// Outcome of the constant-curvature test.  The tensor has pointwise constant
// holomorphic sectional curvature c exactly when its symmetrization equals
// (c/2)(delta_ij delta_kl + delta_il delta_kj); max_residual is the largest
// deviation from that shape and witness the index tuple attaining it.
struct HSCVerdict {
  bool constant = false;
  double c = 0;
  double max_residual = 0;
  std::array<int, 4> witness{0, 0, 0, 0};
};

inline HSCVerdict constancy_test(const CurvatureTensor& Rt,
                                 double tol = kDefaultTol) {
  const CurvatureTensor Rhat = Rt.symmetrized ? Rt : symmetrize(Rt);
  int n = Rhat.n;
  HSCVerdict v;
  double diag = 0;
  for (int i = 0; i < n; ++i) diag += Rhat(i, i, i, i).real();
  v.c = diag / n;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double target =
              0.5 * v.c * ((i == j && k == l ? 1.0 : 0.0) +
                           (i == l && k == j ? 1.0 : 0.0));
          double dev = std::abs(Rhat(i, j, k, l) - target);
          if (dev > v.max_residual) {
            v.max_residual = dev;
            v.witness = {i, j, k, l};
          }
        }
  v.constant = v.max_residual <= tol;
  return v;
}

// The curve (1 - r + r s)^2 + s^2 = 4 in the parameter plane, equivalently
// t^2 + s^2/4 = 1, singled out by the torsion-parallel classification.
inline bool chen_nie_membership(double r, double s, double tol = kDefaultTol) {
  double g = 1.0 - r + r * s;
  return std::abs(g * g + s * s - 4.0) <= tol;
}

inline bool chen_nie_membership(ConnectionParams p, double tol = kDefaultTol) {
  return chen_nie_membership(p.r, p.s, tol);
}

// ---------------------------------------------------------------------------
// Parameter scan

struct ScanOptions {
  double r_min = -4.0, r_max = 4.0;
  double s_min = -3.0, s_max = 3.0;
  double step = 0.1;
  double tol = kDefaultTol;
  bool inject_named = true;
};

struct ScanRow {
  double r = 0, s = 0, t = 0;
  bool on_chen_nie = false;
  HSCVerdict verdict;
  bool flat = false;
  double flat_residual = 0;
};

// Evaluates the curvature family over a rectangular (r, s) grid.  The line
// s = 1 is excluded from the admissible set except for (0, 1), so grid rows
// there are skipped.  The named connection points are injected even when
// they fall off-grid; rows come out sorted r-major.
inline std::vector<ScanRow> scan_parameters(const StructureConstants& S,
                                            const ScanOptions& opt = {}) {
  if (opt.step <= 0) throw std::invalid_argument("scan_parameters: step must be positive");
  CurvatureFamily fam = curvature_family(S);

  std::vector<ConnectionParams> pts;
  int nr = static_cast<int>(std::round((opt.r_max - opt.r_min) / opt.step));
  int ns = static_cast<int>(std::round((opt.s_max - opt.s_min) / opt.step));
  for (int a = 0; a <= nr; ++a)
    for (int b = 0; b <= ns; ++b) {
      ConnectionParams p{opt.r_min + a * opt.step, opt.s_min + b * opt.step};
      if (!p.in_domain()) continue;
      pts.push_back(p);
    }
  if (opt.inject_named)
    for (const auto& np : named_connection_params()) {
      const ConnectionParams& p = np.params;
      if (p.r < opt.r_min - 1e-12 || p.r > opt.r_max + 1e-12 ||
          p.s < opt.s_min - 1e-12 || p.s > opt.s_max + 1e-12)
        continue;
      bool present = false;
      for (const auto& q : pts)
        if (std::abs(q.r - p.r) <= 1e-12 && std::abs(q.s - p.s) <= 1e-12) {
          present = true;
          break;
        }
      if (!present) pts.push_back(p);
    }
  std::sort(pts.begin(), pts.end(), [](const ConnectionParams& a, const ConnectionParams& b) {
    if (a.r != b.r) return a.r < b.r;
    return a.s < b.s;
  });

  std::vector<ScanRow> rows;
  rows.reserve(pts.size());
  for (const auto& p : pts) {
    CurvatureTensor R = fam.at(p);
    ScanRow row;
    row.r = p.r;
    row.s = p.s;
    row.t = p.t();
    row.on_chen_nie = chen_nie_membership(p, 1e-9);
    row.verdict = constancy_test(R, opt.tol);
    FlatCheck fc = check_flat(R, opt.tol);
    row.flat = fc.flat;
    row.flat_residual = fc.max_abs;
    rows.push_back(row);
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Predicted Bismut curvature under torsion-parallelism and constancy

// When the Bismut connection makes the Chern torsion parallel and the
// family member at (r, s) has constant holomorphic sectional curvature c,
// the full Bismut curvature is forced to be
//   R^b_{i jbar k lbar} = (c/2)(delta_ij delta_kl + delta_il delta_kj)
//     - w/2 + (1/4)(t^2 + s^2/4 - 3)(v_j_i + v_l_k)
//     + (1/4)(t^2 + s^2/4 + 1)(v_l_i + v_j_k).
inline cplx predict_rb_under_constancy(const TorsionTensor& T, ConnectionParams p,
                                       double c, int i, int j, int k, int l) {
  VWTerms v = vw_terms(T, i, j, k, l);
  double t = p.t();
  double q = t * t + p.s * p.s / 4.0;
  double dpair = (i == j && k == l ? 1.0 : 0.0) + (i == l && k == j ? 1.0 : 0.0);
  return 0.5 * c * dpair - 0.5 * v.w + 0.25 * (q - 3.0) * (v.v_j_i + v.v_l_k) +
         0.25 * (q + 1.0) * (v.v_l_i + v.v_j_k);
}

// Specialization of the prediction to the diagonal pairs (i, ibar, k, kbar):
//   R^b_{i ibar k kbar} = (c/2)(1 + delta_ik) - (1/2) sum_r |T^r_{ik}|^2
//     + (1/2)(t^2 + s^2/4 - 3) Re sum_r T^i_{ir} conj(T^k_{kr})
//     + (1/4)(t^2 + s^2/4 + 1) sum_r (|T^i_{kr}|^2 + |T^k_{ir}|^2)
inline double predict_rb_diag(const TorsionTensor& T, ConnectionParams p,
                              double c, int i, int k) {
  double t = p.t();
  double q = t * t + p.s * p.s / 4.0;
  double w = 0, cross = 0, sq = 0;
  for (int r = 0; r < T.n(); ++r) {
    w += std::norm(T(r, i, k));
    cross += (T(i, i, r) * std::conj(T(k, k, r))).real();
    sq += std::norm(T(i, k, r)) + std::norm(T(k, i, r));
  }
  return 0.5 * c * (1.0 + (i == k ? 1.0 : 0.0)) - 0.5 * w +
         0.5 * (q - 3.0) * cross + 0.25 * (q + 1.0) * sq;
}

// ---------------------------------------------------------------------------
// Non-balanced torsion-parallel constraint

// For a non-balanced torsion-parallel instance there is an admissible frame
// in which the torsion is T^n_{ij} = 0, T^j_{in} = delta_ij a_i, and the
// Bismut curvature annihilates every component carrying the last index.
// Demanding constant holomorphic sectional curvature c on the family member
// then forces, for each i,
//   0 = (c/2)(1 + delta_in) + (t^2 + s^2/4 - 1) * vhat(i, i, n, n)
// with vhat(i, i, n, n) = |a_i|^2 / 4.  The i = n equation pins c = 0, and
// any a_i != 0 pins t^2 + s^2/4 = 1, i.e. membership in the curve.
struct FeasibleSet {
  bool balanced = false;       // all a_i vanish; no constraint derived
  double c = 0;                // forced curvature constant
  bool requires_curve = false; // params must satisfy t^2 + s^2/4 = 1
  cplx a_sum{};                // sum of the frame constants a_i
  bool lambda_consistent = true;

  bool contains(ConnectionParams p, double tol = kDefaultTol) const {
    if (balanced) return true;
    return !requires_curve || chen_nie_membership(p, tol);
  }
};

inline FeasibleSet nonbalanced_btp_feasible_params(const std::vector<cplx>& a,
                                                   double lambda_check,
                                                   double tol = kDefaultTol) {
  int n = static_cast<int>(a.size()) + 1;
  TorsionTensor T(n);
  for (int i = 0; i + 1 < n; ++i) T.set(i, i, n - 1, a[static_cast<std::size_t>(i)]);

  FeasibleSet fs;
  for (const auto& ai : a) fs.a_sum += ai;
  fs.lambda_consistent = std::abs(fs.a_sum - lambda_check) <= tol;

  bool any = false;
  for (int i = 0; i < n; ++i) {
    cplx vhat = vw_terms(T, i, i, n - 1, n - 1).vhat();
    if (std::abs(vhat) > tol * tol) any = true;
  }
  if (!any) {
    fs.balanced = true;
    return fs;
  }
  fs.c = 0;                  // from the i = n equation, where vhat vanishes
  fs.requires_curve = true;  // from any i with a_i != 0
  return fs;
}

}  // namespace hermitia
