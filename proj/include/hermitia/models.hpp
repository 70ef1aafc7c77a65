#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "hermitia/analysis.hpp"
#include "hermitia/connection.hpp"
#include "hermitia/core.hpp"
#include "hermitia/curvature.hpp"
#include "hermitia/form.hpp"
#include "hermitia/structure.hpp"

namespace hermitia {

// ---------------------------------------------------------------------------
// Hopf manifolds, standard metric, in a natural unitary frame at the point
// with coordinates z.  All tensors below are pointwise closed forms; no
// structure constants are involved, which makes them an independent oracle
// for the exterior-engine routes.

struct HopfPoint {
  int n = 2;
  std::vector<cplx> z;

  HopfPoint(int dim, std::vector<cplx> coords) : n(dim), z(std::move(coords)) {
    if (n < 2) throw OutsideDomainError("HopfPoint: need n >= 2");
    if (z.size() != static_cast<std::size_t>(n))
      throw std::invalid_argument("HopfPoint: coordinate count mismatch");
    if (norm2() < 1e-30) throw OutsideDomainError("HopfPoint: z must be nonzero");
  }

  double norm2() const {
    double s = 0;
    for (const auto& v : z) s += std::norm(v);
    return s;
  }
};

// T^j_{ik} = (conj(z_k) delta_ij - conj(z_i) delta_kj) / |z|
inline TorsionTensor hopf_torsion(const HopfPoint& pt) {
  int n = pt.n;
  double r = std::sqrt(pt.norm2());
  TorsionTensor T(n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      for (int k = i + 1; k < n; ++k)
        T.set(j, i, k,
              (std::conj(pt.z[k]) * (i == j ? 1.0 : 0.0) -
               std::conj(pt.z[i]) * (k == j ? 1.0 : 0.0)) /
                  r);
  return T;
}

// R^c_{i jbar k lbar} = delta_ij delta_kl - conj(z_i) z_j delta_kl / |z|^2
inline CurvatureTensor hopf_chern_curvature(const HopfPoint& pt) {
  int n = pt.n;
  double n2 = pt.norm2();
  CurvatureTensor R(n, ConnectionKind::Chern);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          R.at(i, j, k, l) = (k == l ? 1.0 : 0.0) *
                             ((i == j ? 1.0 : 0.0) - std::conj(pt.z[i]) * pt.z[j] / n2);
  return R;
}

// Whole family at once:
// R^D_{i jbar k lbar} = (1 - 2t) delta_ij delta_kl
//                     + (2t - t^2 - s^2/4) delta_il delta_kj
//                     + (2t - 1) b_ij + (t^2 - s^2/4) b_kl
//                     + (s^2/4 - t)(b_il + b_kj)
// with b_xy the rank-one projector factors conj(z_x) z_y / |z|^2 paired with
// the complementary Kronecker delta.
inline CurvatureTensor hopf_curvature_D(const HopfPoint& pt, ConnectionParams p) {
  if (!p.in_domain())
    throw OutsideDomainError("hopf_curvature_D: (r,s) outside admissible set");
  int n = pt.n;
  double n2 = pt.norm2();
  double t = p.t();
  double s4 = p.s * p.s / 4.0;
  CurvatureTensor R(n, ConnectionKind::General);
  R.params = p;
  auto zz = [&](int x, int y) { return std::conj(pt.z[x]) * pt.z[y] / n2; };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double dij_kl = (i == j && k == l) ? 1.0 : 0.0;
          double dil_kj = (i == l && k == j) ? 1.0 : 0.0;
          cplx b_ij = (k == l) ? zz(i, j) : cplx{};
          cplx b_kl = (i == j) ? zz(k, l) : cplx{};
          cplx b_il = (k == j) ? zz(i, l) : cplx{};
          cplx b_kj = (i == l) ? zz(k, j) : cplx{};
          R.at(i, j, k, l) = (1.0 - 2.0 * t) * dij_kl +
                             (2.0 * t - t * t - s4) * dil_kj +
                             (2.0 * t - 1.0) * b_ij + (t * t - s4) * b_kl +
                             (s4 - t) * (b_il + b_kj);
        }
  return R;
}

struct HopfHscReport {
  ConnectionParams params;
  double t = 0;
  bool on_chen_nie = false;
  HSCVerdict verdict;
  // closed-form value of Rhat^D_{1 1bar 1 1bar} - c at c = 0, namely
  // (1 - t^2 - s^2/4)(1 - |z_1|^2 / |z|^2); nonzero off the curve whenever
  // z_1 is not the whole of z
  double witness_value = 0;
};

inline HopfHscReport hopf_hsc_report(const HopfPoint& pt, ConnectionParams p,
                                     double tol = kDefaultTol) {
  HopfHscReport rep;
  rep.params = p;
  rep.t = p.t();
  rep.on_chen_nie = chen_nie_membership(p, tol);
  rep.verdict = constancy_test(hopf_curvature_D(pt, p), tol);
  double q = rep.t * rep.t + p.s * p.s / 4.0;
  rep.witness_value = (1.0 - q) * (1.0 - std::norm(pt.z[0]) / pt.norm2());
  return rep;
}

// Parameters at which the family member is flat on the Hopf manifold.
// Flatness demands each coefficient pattern in the closed form to vanish:
// for n = 2 the delta and projector patterns overlap and the system reduces
// to t - t^2 = 0 with t^2 - s^2/4 - 2t + 1 = 0, giving (t, s) = (1, 0),
// (0, 2), (0, -2); for n >= 3 the patterns are independent, forcing the
// inconsistent pair 1 - 2t = 0, t^2 = t, so there are no solutions.
inline std::vector<ConnectionParams> hopf_flat_params(int n) {
  if (n < 2) throw OutsideDomainError("hopf_flat_params: need n >= 2");
  std::vector<ConnectionParams> out;
  if (n > 2) return out;
  for (double t : {1.0, 0.0}) {
    // remaining equation t^2 - s^2/4 - 2t + 1 = 0 determines s^2
    double s2 = 4.0 * (t * t - 2.0 * t + 1.0);
    if (s2 < 0) continue;
    std::vector<double> svals = s2 == 0 ? std::vector<double>{0.0}
                                        : std::vector<double>{std::sqrt(s2), -std::sqrt(s2)};
    for (double s : svals) {
      if (std::abs(t - t * t) > 0) continue;  // t in {0, 1} by construction
      if (std::abs(s - 1.0) < 1e-12) continue;
      double r = (1.0 - 2.0 * t) / (1.0 - s);
      out.push_back({r, s});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Torsion-parallel threefolds: fixed special-frame torsion profiles and the
// corresponding Bismut curvature patterns, assembled as curvature matrices
// of (1,1)-forms and read off through the same component extraction as the
// structure-equation routes.

// Profile with all three torsion slots filled: T^1_{23} = T^2_{31} = T^3_{12} = lambda.
inline TorsionTensor rank3_torsion(double lambda) {
  TorsionTensor T(3);
  T.set(0, 1, 2, lambda);
  T.set(1, 2, 0, lambda);
  T.set(2, 0, 1, lambda);
  return T;
}

// The rank-3 profile comes from a complex Lie group: C^j_{ik} = -T^j_{ik},
// D = 0.  This realizes the profile as honest structure constants, so its
// Bismut curvature pattern follows from the exterior engine.
inline StructureConstants rank3_structure(double lambda) {
  StructureConstants S(3);
  S.set_C(0, 1, 2, -lambda);
  S.set_C(1, 2, 0, -lambda);
  S.set_C(2, 0, 1, -lambda);
  return S;
}

// Profile with one slot: T^1_{23} = lambda.
inline TorsionTensor wallach_torsion(double lambda) {
  TorsionTensor T(3);
  T.set(0, 1, 2, lambda);
  return T;
}

// Profile with two slots: T^1_{23} = T^2_{31} = lambda.
inline TorsionTensor middle_type_torsion(double lambda) {
  TorsionTensor T(3);
  T.set(0, 1, 2, lambda);
  T.set(1, 2, 0, lambda);
  return T;
}

// Bismut curvature pattern of the flag-type threefold, in the normalization
// where the diagonal blocks read
//   alpha = p11 + (1-b) p22 + b p33 + p p23 + conj(p) p32
//   beta  = p11 + b p22 + (1-b) p33 - p p23 - conj(p) p32
//   sigma = p p22 - p p33 + q p23 + (1+b) p32
// (p_xy short for phi_x ^ phibar_y) and the curvature matrix is
//   [ alpha+beta   0      0     ]
//   [ 0            alpha  sigma ]
//   [ 0          -conj(sigma) beta ]
struct WallachPattern {
  double b = 0;
  cplx p{};
  cplx q{};
};

inline CurvatureTensor wallach_rb(const WallachPattern& w) {
  int n = 3;
  auto pp = [&](int x, int y) { return wedge(Form::phi(n, x), Form::phibar(n, y)); };
  Form alpha = pp(0, 0) + pp(1, 1) * cplx(1.0 - w.b) + pp(2, 2) * cplx(w.b) +
               pp(1, 2) * w.p + pp(2, 1) * std::conj(w.p);
  Form beta = pp(0, 0) + pp(1, 1) * cplx(w.b) + pp(2, 2) * cplx(1.0 - w.b) -
              pp(1, 2) * w.p - pp(2, 1) * std::conj(w.p);
  Form sigma = pp(1, 1) * w.p - pp(2, 2) * w.p + pp(1, 2) * w.q +
               pp(2, 1) * cplx(1.0 + w.b);

  auto blocks = detail::form_matrix(n);
  blocks[0 * 3 + 0] = alpha + beta;
  blocks[1 * 3 + 1] = alpha;
  blocks[1 * 3 + 2] = sigma;
  blocks[2 * 3 + 1] = -conj(sigma);
  blocks[2 * 3 + 2] = beta;
  return detail::tensor_from_blocks(blocks, n, ConnectionKind::Bismut);
}

// Bismut curvature pattern of the middle threefold type: an inert third
// direction and a 2x2 block built from
//   diag  = x (p11 + p22) + i y (p21 - p12)
//   skew  = -i y (p11 + p22) + (x - 2)(p21 - p12)
// as [ diag skew 0 ; -skew diag 0 ; 0 0 0 ].
struct MiddleTypePattern {
  double x = 0;
  double y = 0;
};

inline CurvatureTensor middle_type_rb(const MiddleTypePattern& m) {
  int n = 3;
  auto pp = [&](int x, int y) { return wedge(Form::phi(n, x), Form::phibar(n, y)); };
  Form diag = (pp(0, 0) + pp(1, 1)) * cplx(m.x) +
              (pp(1, 0) - pp(0, 1)) * cplx(0, m.y);
  Form skew = (pp(0, 0) + pp(1, 1)) * cplx(0, -m.y) +
              (pp(1, 0) - pp(0, 1)) * cplx(m.x - 2.0);

  auto blocks = detail::form_matrix(n);
  blocks[0 * 3 + 0] = diag;
  blocks[0 * 3 + 1] = skew;
  blocks[1 * 3 + 0] = -skew;
  blocks[1 * 3 + 1] = diag;
  return detail::tensor_from_blocks(blocks, n, ConnectionKind::Bismut);
}

// ---------------------------------------------------------------------------
// Constancy analysis for the three torsion-parallel threefold cases

enum class Btp3Case { Rank3, Wallach, Middle };

inline const char* btp3_case_name(Btp3Case c) {
  switch (c) {
    case Btp3Case::Rank3: return "rank3";
    case Btp3Case::Wallach: return "wallach";
    case Btp3Case::Middle: return "middle";
  }
  return "?";
}

struct Btp3Verdict {
  Btp3Case which = Btp3Case::Rank3;
  ConnectionParams params;
  double t = 0;
  double lambda = 1.0;
  bool feasible = false;
  double c = 0;              // curvature constant forced by the diagonal
  // the decisive diagonal-pair component (1, 1bar, 2, 2bar): pattern value
  // against the value the constancy hypothesis predicts
  double equation_lhs = 0;
  double equation_rhs = 0;
  double equation_residual = 0;
  double full_residual = 0;  // worst deviation over all index tuples
};

// Tests whether the fixed Bismut curvature pattern of each case can agree
// with the curvature that torsion-parallelism plus constant holomorphic
// sectional curvature at (r, s) would force.  The constant c and the free
// diagonal parameter of the pattern are read off numerically from the
// pattern's own diagonal, never hard-coded.
inline Btp3Verdict btp3_constancy_analysis(Btp3Case which, ConnectionParams p,
                                           double lambda = 1.0,
                                           double tol = kDefaultTol) {
  if (!p.in_domain())
    throw OutsideDomainError("btp3_constancy_analysis: (r,s) outside admissible set");
  if (lambda <= 0)
    throw OutsideDomainError("btp3_constancy_analysis: lambda must be positive");

  Btp3Verdict v;
  v.which = which;
  v.params = p;
  v.t = p.t();
  v.lambda = lambda;

  TorsionTensor T(3);
  CurvatureTensor pattern(3, ConnectionKind::Bismut);
  switch (which) {
    case Btp3Case::Rank3: {
      T = rank3_torsion(lambda);
      pattern = bismut_curvature(rank3_structure(lambda));
      double diag = 0;
      for (int i = 0; i < 3; ++i) diag += pattern(i, i, i, i).real();
      v.c = diag / 3.0;
      break;
    }
    case Btp3Case::Wallach: {
      T = wallach_torsion(lambda);
      // the (1,1) entry of the pattern is parameter-free; it pins c, and the
      // remaining diagonal entries 1 - b force b
      v.c = wallach_rb(WallachPattern{0.0, 0.0, 0.0})(0, 0, 0, 0).real();
      pattern = wallach_rb(WallachPattern{1.0 - v.c, 0.0, 0.0});
      break;
    }
    case Btp3Case::Middle: {
      T = middle_type_torsion(lambda);
      // the inert direction pins c = R^b_{3 3bar 3 3bar}, and the diagonal
      // blocks force x = c
      v.c = middle_type_rb(MiddleTypePattern{0.0, 0.0})(2, 2, 2, 2).real();
      pattern = middle_type_rb(MiddleTypePattern{v.c, 0.0});
      break;
    }
  }

  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) {
          cplx pred = predict_rb_under_constancy(T, p, v.c, i, j, k, l);
          v.full_residual =
              std::max(v.full_residual, std::abs(pattern(i, j, k, l) - pred));
        }

  v.equation_lhs = pattern(0, 0, 1, 1).real();
  v.equation_rhs = predict_rb_diag(T, p, v.c, 0, 1);
  v.equation_residual = std::abs(v.equation_lhs - v.equation_rhs);
  v.feasible = v.full_residual <= tol;
  return v;
}

}  // namespace hermitia
