#pragma once

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "hermitia/connection.hpp"
#include "hermitia/core.hpp"
#include "hermitia/form.hpp"
#include "hermitia/structure.hpp"

namespace hermitia {

// Components R_{i jbar k lbar} of a curvature tensor.  The first pair
// (i, jbar) indexes the 2-form slot (coefficient of phi_i ^ phibar_j in the
// curvature matrix), the second pair (k, lbar) the endomorphism slot (entry
// (k, l) of the matrix).  Metric connections satisfy
// R_{i jbar k lbar} = conj(R_{j ibar l kbar}).
struct CurvatureTensor {
  int n = 0;
  ConnectionKind kind = ConnectionKind::Chern;
  ConnectionParams params;
  bool symmetrized = false;
  std::vector<cplx> R;

  explicit CurvatureTensor(int dim = 0, ConnectionKind k = ConnectionKind::Chern)
      : n(dim), kind(k), R(static_cast<std::size_t>(dim) * dim * dim * dim) {}

  std::size_t idx(int i, int j, int k, int l) const {
    return ((static_cast<std::size_t>(i) * n + j) * n + k) * n + l;
  }
  cplx operator()(int i, int j, int k, int l) const { return R[idx(i, j, k, l)]; }
  cplx& at(int i, int j, int k, int l) { return R[idx(i, j, k, l)]; }

  double max_abs() const {
    double m = 0;
    for (const auto& v : R) m = std::max(m, std::abs(v));
    return m;
  }

  double hermitian_symmetry_residual() const {
    double m = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l)
            m = std::max(m, std::abs((*this)(i, j, k, l) -
                                     std::conj((*this)(j, i, l, k))));
    return m;
  }
};

inline double max_abs_diff(const CurvatureTensor& a, const CurvatureTensor& b) {
  if (a.n != b.n) throw std::invalid_argument("max_abs_diff: dimension mismatch");
  double m = 0;
  for (std::size_t e = 0; e < a.R.size(); ++e)
    m = std::max(m, std::abs(a.R[e] - b.R[e]));
  return m;
}

namespace detail {

// (A ^ B)_{ij} = sum_k A_{ik} ^ B_{kj}
inline std::vector<Form> wedge_matrix(const std::vector<Form>& A,
                                      const std::vector<Form>& B, int n) {
  auto out = form_matrix(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Form& f = out[static_cast<std::size_t>(i) * n + j];
      for (int k = 0; k < n; ++k)
        f += wedge(A[static_cast<std::size_t>(i) * n + k],
                   B[static_cast<std::size_t>(k) * n + j]);
    }
  return out;
}

inline std::vector<Form> d_matrix(const std::vector<Form>& A,
                                  const StructureConstants& S) {
  std::vector<Form> out;
  out.reserve(A.size());
  for (const auto& f : A) out.push_back(differential(f, S));
  return out;
}

inline std::vector<Form> conj_matrix(const std::vector<Form>& A) {
  std::vector<Form> out;
  out.reserve(A.size());
  for (const auto& f : A) out.push_back(conj(f));
  return out;
}

inline std::vector<Form> sub_matrix(std::vector<Form> A, const std::vector<Form>& B) {
  for (std::size_t e = 0; e < A.size(); ++e) A[e] -= B[e];
  return A;
}

// Reads off R_{i jbar k lbar} as the phi_i ^ phibar_j coefficient of entry
// (k, l) of the curvature matrix.
inline CurvatureTensor tensor_from_blocks(const std::vector<Form>& Theta, int n,
                                          ConnectionKind kind) {
  CurvatureTensor R(n, kind);
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l) {
      const Form& f = Theta[static_cast<std::size_t>(k) * n + l];
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          R.at(i, j, k, l) = f.coeff_phi_phibar(i, j);
    }
  return R;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Structure-equation routes

// Theta = d theta - theta ^ theta, as a full matrix of 2-forms.
inline std::vector<Form> curvature_blocks(const std::vector<Form>& theta,
                                          const StructureConstants& S) {
  return detail::sub_matrix(detail::d_matrix(theta, S),
                            detail::wedge_matrix(theta, theta, S.n()));
}

inline CurvatureTensor chern_curvature(const StructureConstants& S) {
  return detail::tensor_from_blocks(curvature_blocks(chern_theta(S), S), S.n(),
                                    ConnectionKind::Chern);
}

// The Chern curvature matrix has pure (1,1) entries; this returns the
// largest stray coefficient outside that bidegree, a convention check.
inline double chern_offtype_residual(const StructureConstants& S) {
  auto blocks = curvature_blocks(chern_theta(S), S);
  double m = 0;
  for (const auto& f : blocks) {
    m = std::max(m, bidegree_part(f, 2, 0).max_abs());
    m = std::max(m, bidegree_part(f, 0, 2).max_abs());
  }
  return m;
}

inline std::vector<Form> bismut_curvature_blocks(const StructureConstants& S) {
  return curvature_blocks(bismut_theta(S), S);
}

inline CurvatureTensor bismut_curvature(const StructureConstants& S) {
  return detail::tensor_from_blocks(bismut_curvature_blocks(S), S.n(),
                                    ConnectionKind::Bismut);
}

struct LeviCivitaCurvature {
  CurvatureTensor r11;        // R_{i jbar k lbar} components
  std::vector<Form> Theta1;   // complex-linear block, all bidegrees
  std::vector<Form> Theta2;   // conjugate-linear block
};

// Theta_1 = d theta_1 - theta_1 ^ theta_1 - conj(beta) ^ beta
// Theta_2 = d beta - beta ^ theta_1 - conj(theta_1) ^ beta
inline LeviCivitaCurvature levi_civita_curvature(const StructureConstants& S) {
  int n = S.n();
  TorsionTensor T = chern_torsion(S);
  auto theta1 = chern_theta(S);
  auto g = gamma_matrix(T);
  for (std::size_t e = 0; e < theta1.size(); ++e) theta1[e] += g[e] * cplx(0.5);
  auto beta = beta_matrix(T);

  auto Theta1 = detail::sub_matrix(
      detail::sub_matrix(detail::d_matrix(theta1, S),
                         detail::wedge_matrix(theta1, theta1, n)),
      detail::wedge_matrix(detail::conj_matrix(beta), beta, n));
  auto Theta2 = detail::sub_matrix(
      detail::sub_matrix(detail::d_matrix(beta, S),
                         detail::wedge_matrix(beta, theta1, n)),
      detail::wedge_matrix(detail::conj_matrix(theta1), beta, n));

  LeviCivitaCurvature out;
  out.r11 = detail::tensor_from_blocks(Theta1, n, ConnectionKind::LeviCivita);
  out.r11.params = ConnectionParams::levi_civita();
  out.Theta1 = std::move(Theta1);
  out.Theta2 = std::move(Theta2);
  return out;
}

// Theta_1 = d theta^D - theta^D ^ theta^D - s^2 conj(beta) ^ beta
inline CurvatureTensor curvature_D(const StructureConstants& S, ConnectionParams p) {
  if (!p.in_domain())
    throw OutsideDomainError("curvature_D: (r,s) outside admissible set");
  int n = S.n();
  TorsionTensor T = chern_torsion(S);
  auto thetaD = chern_theta(S);
  auto g = gamma_matrix(T);
  for (std::size_t e = 0; e < thetaD.size(); ++e) thetaD[e] += g[e] * cplx(p.t());
  auto beta = beta_matrix(T);

  auto Theta1 = detail::sub_matrix(detail::d_matrix(thetaD, S),
                                   detail::wedge_matrix(thetaD, thetaD, n));
  auto bb = detail::wedge_matrix(detail::conj_matrix(beta), beta, n);
  for (std::size_t e = 0; e < Theta1.size(); ++e)
    Theta1[e] -= bb[e] * cplx(p.s * p.s);

  CurvatureTensor R = detail::tensor_from_blocks(Theta1, n, ConnectionKind::General);
  R.params = p;
  return R;
}

// Coefficient tensors of the curvature family as a polynomial in (t, s):
// R^D(t, s) = base + t * lin - t^2 * quad - s^2 * mixed.  Lets a parameter
// scan reuse the exterior computations across the whole grid.
struct CurvatureFamily {
  int n = 0;
  CurvatureTensor base, lin, quad, mixed;

  CurvatureTensor at(ConnectionParams p) const {
    double t = p.t();
    CurvatureTensor R(n, ConnectionKind::General);
    R.params = p;
    for (std::size_t e = 0; e < R.R.size(); ++e)
      R.R[e] = base.R[e] + t * lin.R[e] - t * t * quad.R[e] - p.s * p.s * mixed.R[e];
    return R;
  }
};

inline CurvatureFamily curvature_family(const StructureConstants& S) {
  int n = S.n();
  TorsionTensor T = chern_torsion(S);
  auto theta = chern_theta(S);
  auto g = gamma_matrix(T);
  auto beta = beta_matrix(T);

  CurvatureFamily fam;
  fam.n = n;
  fam.base = detail::tensor_from_blocks(
      detail::sub_matrix(detail::d_matrix(theta, S),
                         detail::wedge_matrix(theta, theta, n)),
      n, ConnectionKind::General);
  fam.lin = detail::tensor_from_blocks(
      detail::sub_matrix(detail::sub_matrix(detail::d_matrix(g, S),
                                            detail::wedge_matrix(theta, g, n)),
                         detail::wedge_matrix(g, theta, n)),
      n, ConnectionKind::General);
  fam.quad = detail::tensor_from_blocks(detail::wedge_matrix(g, g, n), n,
                                        ConnectionKind::General);
  fam.mixed = detail::tensor_from_blocks(
      detail::wedge_matrix(detail::conj_matrix(beta), beta, n), n,
      ConnectionKind::General);
  return fam;
}

// ---------------------------------------------------------------------------
// Closed form for the Bismut curvature

// R^b_{k lbar i jbar} written directly in the structure constants (r summed):
//
//     C^r_{ik} conj(C^r_{jl}) - C^j_{rk} conj(C^i_{rl})
//   - C^r_{ik} conj(D^r_{lj}) - conj(C^r_{jl}) D^r_{ki}
//   + C^j_{ir} conj(D^k_{rl}) - C^j_{kr} conj(D^i_{lr})
//   + conj(C^i_{jr}) D^l_{rk} - conj(C^i_{lr}) D^j_{kr}
//   - D^j_{ri} conj(D^k_{rl}) - D^l_{rk} conj(D^i_{rj})
//   + D^r_{ki} conj(D^r_{lj}) - D^j_{kr} conj(D^i_{lr})
inline CurvatureTensor bismut_curvature_closed_form(const StructureConstants& S) {
  int n = S.n();
  CurvatureTensor R(n, ConnectionKind::Bismut);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          cplx acc{};
          for (int r = 0; r < n; ++r) {
            acc += S.C(r, i, k) * std::conj(S.C(r, j, l)) -
                   S.C(j, r, k) * std::conj(S.C(i, r, l));
            acc += -S.C(r, i, k) * std::conj(S.D(r, l, j)) -
                   std::conj(S.C(r, j, l)) * S.D(r, k, i);
            acc += S.C(j, i, r) * std::conj(S.D(k, r, l)) -
                   S.C(j, k, r) * std::conj(S.D(i, l, r));
            acc += std::conj(S.C(i, j, r)) * S.D(l, r, k) -
                   std::conj(S.C(i, l, r)) * S.D(j, k, r);
            acc += -S.D(j, r, i) * std::conj(S.D(k, r, l)) -
                   S.D(l, r, k) * std::conj(S.D(i, r, j));
            acc += S.D(r, k, i) * std::conj(S.D(r, l, j)) -
                   S.D(j, k, r) * std::conj(S.D(i, l, r));
          }
          R.at(k, l, i, j) = acc;
        }
  return R;
}

// ---------------------------------------------------------------------------
// Torsion quadratics and covariant derivatives

// The five quadratic torsion sums attached to a fixed index tuple
// (i, jbar, k, lbar), plus their average vhat.  Superscript/subscript in the
// names follow the pattern v[upper]_[lower]:
//   w     = sum_r T^r_{ik} conj(T^r_{jl})
//   v_j_i = sum_r T^j_{ir} conj(T^k_{lr})
//   v_l_i = sum_r T^l_{ir} conj(T^k_{jr})
//   v_j_k = sum_r T^j_{kr} conj(T^i_{lr})
//   v_l_k = sum_r T^l_{kr} conj(T^i_{jr})
struct VWTerms {
  cplx w{}, v_j_i{}, v_l_i{}, v_j_k{}, v_l_k{};
  cplx vhat() const { return 0.25 * (v_j_i + v_j_k + v_l_i + v_l_k); }
};

inline VWTerms vw_terms(const TorsionTensor& T, int i, int j, int k, int l) {
  VWTerms v;
  for (int r = 0; r < T.n(); ++r) {
    v.w += T(r, i, k) * std::conj(T(r, j, l));
    v.v_j_i += T(j, i, r) * std::conj(T(k, l, r));
    v.v_l_i += T(l, i, r) * std::conj(T(k, j, r));
    v.v_j_k += T(j, k, r) * std::conj(T(i, l, r));
    v.v_l_k += T(l, k, r) * std::conj(T(i, j, r));
  }
  return v;
}

// Covariant derivatives of the Chern torsion in a left-invariant unitary
// frame, with respect to either the Chern or the Bismut connection.  Since
// the components are constant, only the connection terms contribute:
//   T^j_{ik | X} = - sum_r theta_{ir}(X) T^j_{rk}
//                  - sum_r theta_{kr}(X) T^j_{ir}
//                  + sum_r theta_{rj}(X) T^r_{ik}
// d holds the e_l directions, dbar the ebar_l directions.
struct TorsionDerivatives {
  int n = 0;
  ConnectionKind kind = ConnectionKind::Chern;
  std::vector<cplx> d, dbar;  // [((j*n+i)*n+k)*n+l]

  std::size_t idx(int j, int i, int k, int l) const {
    return ((static_cast<std::size_t>(j) * n + i) * n + k) * n + l;
  }
  cplx deriv(int j, int i, int k, int l) const { return d[idx(j, i, k, l)]; }
  cplx deriv_bar(int j, int i, int k, int l) const { return dbar[idx(j, i, k, l)]; }

  double max_abs() const {
    double m = 0;
    for (const auto& v : d) m = std::max(m, std::abs(v));
    for (const auto& v : dbar) m = std::max(m, std::abs(v));
    return m;
  }
};

inline TorsionDerivatives torsion_cov_derivatives(const StructureConstants& S,
                                                  ConnectionKind which) {
  if (which != ConnectionKind::Chern && which != ConnectionKind::Bismut)
    throw std::invalid_argument(
        "torsion_cov_derivatives: only the Chern and Bismut connections act "
        "diagonally here");
  int n = S.n();
  TorsionTensor T = chern_torsion(S);
  auto theta = (which == ConnectionKind::Chern) ? chern_theta(S) : bismut_theta(S);
  auto ev = [&](int a, int b, int l, bool barred) {
    const Form& f = theta[static_cast<std::size_t>(a) * n + b];
    return barred ? f.coeff_phibar(l) : f.coeff_phi(l);
  };

  TorsionDerivatives out;
  out.n = n;
  out.kind = which;
  out.d.assign(static_cast<std::size_t>(n) * n * n * n, cplx{});
  out.dbar.assign(out.d.size(), cplx{});
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          for (int pass = 0; pass < 2; ++pass) {
            bool barred = pass == 1;
            cplx acc{};
            for (int r = 0; r < n; ++r) {
              acc -= ev(i, r, l, barred) * T(j, r, k);
              acc -= ev(k, r, l, barred) * T(j, i, r);
              acc += ev(r, j, l, barred) * T(r, i, k);
            }
            (barred ? out.dbar : out.d)[out.idx(j, i, k, l)] = acc;
          }
  return out;
}

// ---------------------------------------------------------------------------
// Symmetrization

// Rhat_{i jbar k lbar} = (1/4)(R_{i jbar k lbar} + R_{k jbar i lbar}
//                              + R_{i lbar k jbar} + R_{k lbar i jbar})
inline CurvatureTensor symmetrize(const CurvatureTensor& Rt) {
  CurvatureTensor out(Rt.n, Rt.kind);
  out.params = Rt.params;
  out.symmetrized = true;
  for (int i = 0; i < Rt.n; ++i)
    for (int j = 0; j < Rt.n; ++j)
      for (int k = 0; k < Rt.n; ++k)
        for (int l = 0; l < Rt.n; ++l)
          out.at(i, j, k, l) = 0.25 * (Rt(i, j, k, l) + Rt(k, j, i, l) +
                                       Rt(i, l, k, j) + Rt(k, l, i, j));
  return out;
}

// ---------------------------------------------------------------------------
// Flatness and torsion-parallelism

struct FlatCheck {
  bool flat = false;
  double max_abs = 0;
};

inline FlatCheck check_flat(const CurvatureTensor& Rt, double tol = kDefaultTol) {
  FlatCheck out;
  out.max_abs = Rt.max_abs();
  out.flat = out.max_abs <= tol;
  return out;
}

struct BtpCheck {
  bool parallel = false;  // Bismut connection annihilates the Chern torsion
  double max_abs = 0;
};

inline BtpCheck check_btp(const StructureConstants& S, double tol = kDefaultTol) {
  BtpCheck out;
  out.max_abs = torsion_cov_derivatives(S, ConnectionKind::Bismut).max_abs();
  out.parallel = out.max_abs <= tol;
  return out;
}

// ---------------------------------------------------------------------------
// Identity suite

struct IdentityCheck {
  std::string name;
  double max_residual = 0;
  bool ok = false;
};

struct IdentityReport {
  std::vector<IdentityCheck> checks;
  double tol = kDefaultTol;
  bool all_ok = false;

  const IdentityCheck* find(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }
};

// Cross-checks every curvature relation the library knows, each side by an
// independent route.  params_list feeds the family identities; the rest are
// parameter-free.
inline IdentityReport verify_identities(const StructureConstants& S,
                                        const std::vector<ConnectionParams>& params_list,
                                        double tol = kDefaultTol) {
  int n = S.n();
  TorsionTensor T = chern_torsion(S);
  CurvatureTensor Rc = chern_curvature(S);
  CurvatureTensor Rb = bismut_curvature(S);
  CurvatureTensor Rb_closed = bismut_curvature_closed_form(S);
  CurvatureTensor Rlc = levi_civita_curvature(S).r11;
  TorsionDerivatives Dc = torsion_cov_derivatives(S, ConnectionKind::Chern);
  TorsionDerivatives Db = torsion_cov_derivatives(S, ConnectionKind::Bismut);
  CurvatureTensor Rc_hat = symmetrize(Rc);
  CurvatureTensor Rb_hat = symmetrize(Rb_closed);

  IdentityReport rep;
  rep.tol = tol;
  auto push = [&](const std::string& name, double res) {
    rep.checks.push_back({name, res, res <= tol});
  };

  // gamma really is the gap between the Bismut and Chern matrices
  {
    auto th = chern_theta(S);
    auto g = gamma_matrix(T);
    auto tb = bismut_theta(S);
    double res = 0;
    for (std::size_t e = 0; e < th.size(); ++e)
      res = std::max(res, max_abs_diff(th[e] + g[e], tb[e]));
    push("bismut_theta_is_chern_plus_gamma", res);
  }

  push("bismut_closed_form_vs_structure", max_abs_diff(Rb, Rb_closed));
  push("chern_offtype_vanishing", chern_offtype_residual(S));

  // difference of torsion derivatives under the two connections is the
  // expected torsion quadratic, separately along e_l and ebar_l
  {
    double res_u = 0, res_b = 0;
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l) {
            cplx qu{}, qb{};
            for (int r = 0; r < n; ++r) {
              qu += T(j, r, k) * T(r, i, l) + T(j, i, r) * T(r, k, l) -
                    T(r, i, k) * T(j, r, l);
              qb += -T(j, r, k) * std::conj(T(i, r, l)) -
                    T(j, i, r) * std::conj(T(k, r, l)) +
                    T(r, i, k) * std::conj(T(r, j, l));
            }
            res_u = std::max(res_u, std::abs(Dc.deriv(j, i, k, l) -
                                             Db.deriv(j, i, k, l) - qu));
            res_b = std::max(res_b, std::abs(Dc.deriv_bar(j, i, k, l) -
                                             Db.deriv_bar(j, i, k, l) - qb));
          }
    push("torsion_deriv_gap_unbarred", res_u);
    push("torsion_deriv_gap_barred", res_b);
  }

  // Levi-Civita and Bismut minus Chern, expanded in Chern derivatives of
  // the torsion; component orientation R_{k lbar i jbar}
  {
    double res_lc = 0, res_b = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l) {
            VWTerms v = vw_terms(T, i, j, k, l);
            cplx dterm = Dc.deriv_bar(j, i, k, l) +
                         std::conj(Dc.deriv_bar(i, j, l, k));
            cplx lhs_lc = Rlc(k, l, i, j) - Rc(k, l, i, j);
            cplx rhs_lc = -0.5 * dterm + 0.25 * (v.w - v.v_j_k - v.v_l_i);
            res_lc = std::max(res_lc, std::abs(lhs_lc - rhs_lc));

            cplx lhs_b = Rb(k, l, i, j) - Rc(k, l, i, j);
            cplx rhs_b = -dterm + (v.w - v.v_j_k);
            res_b = std::max(res_b, std::abs(lhs_b - rhs_b));
          }
    push("rlc_vs_chern_via_chern_derivs", res_lc);
    push("rb_vs_chern_via_chern_derivs", res_b);
  }

  // Bismut minus Chern, expanded in Bismut derivatives; orientation
  // R_{i jbar k lbar}
  {
    double res = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l) {
            VWTerms v = vw_terms(T, i, j, k, l);
            cplx dterm = Db.deriv_bar(l, i, k, j) +
                         std::conj(Db.deriv_bar(k, j, l, i));
            cplx lhs = Rb(i, j, k, l) - Rc(i, j, k, l);
            cplx rhs = dterm + v.v_l_i - v.v_j_i - v.v_l_k - v.w;
            res = std::max(res, std::abs(lhs - rhs));
          }
    push("rb_vs_chern_via_bismut_derivs", res);
  }

  // whole family versus Chern, and the symmetrized interpolation
  {
    double res_d = 0, res_hat_c = 0, res_hat_b = 0;
    for (const auto& p : params_list) {
      if (!p.in_domain()) continue;
      double t = p.t();
      double q = t * t + p.s * p.s / 4.0;
      CurvatureTensor Rd = curvature_D(S, p);
      CurvatureTensor Rd_hat = symmetrize(Rd);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          for (int k = 0; k < n; ++k)
            for (int l = 0; l < n; ++l) {
              VWTerms v = vw_terms(T, i, j, k, l);
              cplx dterm = Db.deriv_bar(l, i, k, j) +
                           std::conj(Db.deriv_bar(k, j, l, i));
              cplx rhs = Rc(i, j, k, l) + t * dterm +
                         (t * t - 2.0 * t) * (v.w - v.v_l_i) -
                         t * (v.v_j_i + v.v_l_k) -
                         (p.s * p.s / 4.0) * v.v_j_k;
              res_d = std::max(res_d, std::abs(Rd(i, j, k, l) - rhs));

              cplx vh = v.vhat();
              res_hat_c = std::max(res_hat_c, std::abs(Rd_hat(i, j, k, l) -
                                                       (Rc_hat(i, j, k, l) - q * vh)));
              res_hat_b = std::max(res_hat_b, std::abs(Rd_hat(i, j, k, l) -
                                                       (Rb_hat(i, j, k, l) + (1.0 - q) * vh)));
            }
    }
    push("rd_vs_chern_via_bismut_derivs", res_d);
    push("rdhat_vs_rchat_minus_vhat", res_hat_c);
    push("rdhat_vs_rbhat_plus_vhat", res_hat_b);
  }

  // symmetrized Bismut diagonal blocks straight from the structure constants
  {
    double res_pair = 0, res_diag = 0;
    for (int i = 0; i < n; ++i) {
      for (int k = 0; k < n; ++k) {
        cplx cc1{}, cc2{}, mixed{}, dd1{}, dd2{}, dd3{}, dd4{}, dd5{}, dd6{};
        for (int r = 0; r < n; ++r) {
          cc1 += std::norm(S.C(i, r, k)) + std::norm(S.C(k, r, i));
          cc2 += S.C(i, r, i) * std::conj(S.C(k, r, k));
          mixed += std::conj(S.C(i, i, r)) * (S.D(k, r, k) - S.D(k, k, r)) +
                   std::conj(S.C(k, k, r)) * (S.D(i, r, i) - S.D(i, i, r)) +
                   std::conj(S.C(i, k, r)) * (S.D(i, r, k) - S.D(i, k, r)) +
                   std::conj(S.C(k, i, r)) * (S.D(k, r, i) - S.D(k, i, r));
          dd1 += std::norm(S.D(i, r, k)) + std::norm(S.D(k, r, i));
          dd2 += S.D(i, r, i) * std::conj(S.D(k, r, k));
          dd3 += std::norm(S.D(r, k, i)) + std::norm(S.D(r, i, k));
          dd4 += S.D(r, i, k) * std::conj(S.D(r, k, i));
          dd5 += std::norm(S.D(i, k, r)) + std::norm(S.D(k, i, r));
          dd6 += S.D(i, i, r) * std::conj(S.D(k, k, r));
        }
        cplx rhs = -(cc1 + 2.0 * cc2.real()) + 2.0 * mixed.real() -
                   2.0 * (dd1 + 2.0 * dd2.real()) + (dd3 + 2.0 * dd4.real()) -
                   (dd5 + 2.0 * dd6.real());
        res_pair = std::max(res_pair,
                            std::abs(4.0 * Rb_hat(k, k, i, i) - rhs));
      }
      cplx diag{};
      for (int r = 0; r < n; ++r)
        diag += -std::norm(S.C(i, r, i)) +
                2.0 * (std::conj(S.C(i, i, r)) * (S.D(i, r, i) - S.D(i, i, r))).real() -
                2.0 * std::norm(S.D(i, r, i)) + std::norm(S.D(r, i, i)) -
                std::norm(S.D(i, i, r));
      res_diag = std::max(res_diag, std::abs(Rb_hat(i, i, i, i) - diag));
    }
    push("rbhat_pair_from_structure_constants", res_pair);
    push("rbhat_diag_from_structure_constants", res_diag);
  }

  rep.all_ok = true;
  for (const auto& c : rep.checks) rep.all_ok = rep.all_ok && c.ok;
  return rep;
}

}  // namespace hermitia
