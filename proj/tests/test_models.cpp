#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "hermitia/hermitia.hpp"
#include "test_support.hpp"

using namespace hermitia;

TEST_CASE("Hopf point validation") {
  REQUIRE_THROWS_AS(HopfPoint(1, {cplx(1.0)}), OutsideDomainError);
  REQUIRE_THROWS_AS(HopfPoint(2, {cplx{}, cplx{}}), OutsideDomainError);
  REQUIRE_THROWS_AS(HopfPoint(3, {cplx(1.0)}), std::invalid_argument);
  REQUIRE_NOTHROW(HopfPoint(2, {cplx(1.0), cplx{}}));
}

TEST_CASE("Hopf torsion and Chern curvature closed forms") {
  HopfPoint p3(3, {cplx{}, cplx{}, cplx(1.0)});
  TorsionTensor T = hopf_torsion(p3);
  REQUIRE(std::abs(T(0, 0, 2) - cplx(1.0)) < 1e-14);
  REQUIRE(std::abs(T(1, 1, 2) - cplx(1.0)) < 1e-14);
  REQUIRE(std::abs(T(2, 0, 1)) < 1e-14);
  REQUIRE(std::abs(T(0, 0, 1)) < 1e-14);

  HopfPoint p2(2, {cplx(1.0), cplx{}});
  CurvatureTensor Rc = hopf_chern_curvature(p2);
  REQUIRE(std::abs(Rc(0, 0, 0, 0)) < 1e-14);
  REQUIRE(std::abs(Rc(1, 1, 1, 1) - cplx(1.0)) < 1e-14);
  REQUIRE(Rc.hermitian_symmetry_residual() < 1e-14);

  double inv = 1.0 / std::sqrt(3.0);
  HopfPoint pd(3, {inv, inv, inv});
  CurvatureTensor Rd = hopf_chern_curvature(pd);
  REQUIRE(std::abs(Rd(0, 1, 2, 2) - cplx(-1.0 / 3.0)) < 1e-13);
}

TEST_CASE("Hopf family curvature: fixed values at the standard point") {
  std::mt19937_64 rng(53);
  HopfPoint p2(2, {cplx(1.0), cplx{}});
  for (int rep = 0; rep < 8; ++rep) {
    ConnectionParams p = support::random_params(rng);
    CurvatureTensor R = hopf_curvature_D(p2, p);
    double t = p.t();
    double s4 = p.s * p.s / 4.0;
    CAPTURE(p.r, p.s);
    // delta and projector contributions cancel in the (1, 1bar, 2, 2bar) slot
    REQUIRE(std::abs(R(0, 0, 1, 1)) < 1e-13);
    REQUIRE(std::abs(R(0, 1, 1, 0) - cplx((2 * t - t * t - s4) + (s4 - t))) < 1e-13);
    REQUIRE(R.hermitian_symmetry_residual() < 1e-13);
  }
  REQUIRE_THROWS_AS(hopf_curvature_D(p2, ConnectionParams{2.0, 1.0}),
                    OutsideDomainError);
}

TEST_CASE("Hopf symmetrized identities and the torsion expansion") {
  std::mt19937_64 rng(59);
  for (int rep = 0; rep < 12; ++rep) {
    int n = 2 + rep % 3;
    HopfPoint pt(n, support::random_z(n, rng));
    ConnectionParams p = support::random_params(rng);
    double t = p.t();
    double q = t * t + p.s * p.s / 4.0;

    TorsionTensor T = hopf_torsion(pt);
    CurvatureTensor Rc = hopf_chern_curvature(pt);
    CurvatureTensor Rc_hat = symmetrize(Rc);
    CurvatureTensor Rd = hopf_curvature_D(pt, p);
    CurvatureTensor Rd_hat = symmetrize(Rd);

    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l) {
            VWTerms v = vw_terms(T, i, j, k, l);
            CAPTURE(rep, i, j, k, l);

            // the symmetrized torsion quadratic reproduces Rhat^c
            REQUIRE(std::abs(v.vhat() - Rc_hat(i, j, k, l)) < 1e-12);

            // Rhat^D shrinks Rhat^c by 1 - t^2 - s^2/4
            REQUIRE(std::abs(Rd_hat(i, j, k, l) - (1.0 - q) * Rc_hat(i, j, k, l)) < 1e-12);

            // full tensor from the torsion expansion; the covariant
            // derivative terms vanish because the torsion is parallel
            cplx rhs = Rc(i, j, k, l) + (t * t - 2.0 * t) * (v.w - v.v_l_i) -
                       t * (v.v_j_i + v.v_l_k) - (p.s * p.s / 4.0) * v.v_j_k;
            REQUIRE(std::abs(Rd(i, j, k, l) - rhs) < 1e-12);
          }
  }
}

TEST_CASE("flat parameters of the Hopf family") {
  auto flats = hopf_flat_params(2);
  REQUIRE(flats.size() == 3);
  auto has = [&](double r, double s) {
    for (const auto& p : flats)
      if (std::abs(p.r - r) < 1e-12 && std::abs(p.s - s) < 1e-12) return true;
    return false;
  };
  REQUIRE(has(-1.0, 0.0));
  REQUIRE(has(-1.0, 2.0));
  REQUIRE(has(1.0 / 3.0, -2.0));

  std::mt19937_64 rng(61);
  for (const auto& p : flats) {
    HopfPoint pt(2, support::random_z(2, rng));
    REQUIRE(check_flat(hopf_curvature_D(pt, p)).flat);
  }

  // off the three solutions the member is not flat
  HopfPoint pt(2, {cplx(1.0), cplx(1.0)});
  REQUIRE(!check_flat(hopf_curvature_D(pt, ConnectionParams::chern())).flat);
  REQUIRE(!check_flat(hopf_curvature_D(pt, ConnectionParams::lichnerowicz())).flat);

  // no solutions in higher dimension, and the planar solutions stop working
  for (int n = 3; n <= 6; ++n) REQUIRE(hopf_flat_params(n).empty());
  HopfPoint p3(3, {cplx(1.0), cplx{}, cplx(1.0)});
  for (const auto& p : flats) {
    FlatCheck fc = check_flat(hopf_curvature_D(p3, p));
    REQUIRE(!fc.flat);
    REQUIRE(fc.max_abs > 0.1);
  }
  REQUIRE_THROWS_AS(hopf_flat_params(1), OutsideDomainError);
}

TEST_CASE("Hopf constancy reports on and off the curve") {
  std::mt19937_64 rng(67);

  // on the curve t^2 + s^2/4 = 1 the symmetrized curvature vanishes
  for (int rep = 0; rep < 6; ++rep) {
    double psi = 0.3 + 0.25 * rep;
    double t = std::cos(psi);
    double s = 2.0 * std::sin(psi);
    double r = (1.0 - 2.0 * t) / (1.0 - s);
    HopfPoint pt(2 + rep % 3, support::random_z(2 + rep % 3, rng));
    HopfHscReport rep_on = hopf_hsc_report(pt, {r, s});
    CAPTURE(rep, r, s);
    REQUIRE(rep_on.on_chen_nie);
    REQUIRE(rep_on.verdict.constant);
    REQUIRE(std::abs(rep_on.verdict.c) < 1e-9);
  }

  // off the curve with z = (0, 1): explicit nonzero witness
  HopfPoint pt(2, {cplx{}, cplx(1.0)});
  HopfHscReport off = hopf_hsc_report(pt, ConnectionParams::lichnerowicz());
  REQUIRE(!off.on_chen_nie);
  REQUIRE(!off.verdict.constant);
  REQUIRE(off.witness_value == Catch::Approx(0.75));
  REQUIRE(off.verdict.max_residual > 1e-3);

  // Chern point: round sectional curvature values at the standard point
  HopfHscReport chp = hopf_hsc_report(pt, ConnectionParams::chern());
  REQUIRE(chp.witness_value == Catch::Approx(1.0));
  REQUIRE(!chp.verdict.constant);
}

TEST_CASE("threefold patterns reproduce their block read-offs") {
  std::mt19937_64 rng(71);
  std::uniform_real_distribution<double> db(-2.0, 2.0);
  for (int rep = 0; rep < 6; ++rep) {
    WallachPattern w{db(rng), support::random_cplx(rng), support::random_cplx(rng)};
    CurvatureTensor R = wallach_rb(w);
    CAPTURE(w.b);
    REQUIRE(std::abs(R(0, 0, 0, 0) - cplx(2.0)) < 1e-13);
    REQUIRE(std::abs(R(1, 1, 1, 1) - cplx(1.0 - w.b)) < 1e-13);
    REQUIRE(std::abs(R(0, 0, 1, 1) - cplx(1.0)) < 1e-13);
    REQUIRE(std::abs(R(1, 1, 2, 2) - cplx(w.b)) < 1e-13);
    // off-diagonal blocks: sigma's phi_2 ^ phibar_3 coefficient is q
    REQUIRE(std::abs(R(1, 2, 1, 2) - w.q) < 1e-13);
    REQUIRE(R.hermitian_symmetry_residual() < 1e-13);
  }

  for (int rep = 0; rep < 6; ++rep) {
    MiddleTypePattern m{db(rng), db(rng)};
    CurvatureTensor R = middle_type_rb(m);
    REQUIRE(std::abs(R(0, 0, 0, 0) - cplx(m.x)) < 1e-13);
    REQUIRE(std::abs(R(0, 0, 1, 1) - cplx(m.x)) < 1e-13);
    REQUIRE(std::abs(R(2, 2, 2, 2)) < 1e-13);
    REQUIRE(std::abs(R(1, 0, 0, 0) - cplx(0.0, m.y)) < 1e-13);
    REQUIRE(std::abs(R(1, 0, 0, 1) - cplx(m.x - 2.0)) < 1e-13);
    REQUIRE(R.hermitian_symmetry_residual() < 1e-13);
  }
}

TEST_CASE("rank-3 torsion profile comes from a genuine complex Lie group") {
  StructureConstants S = rank3_structure(1.5);
  REQUIRE(validate(S).ok);
  REQUIRE(check_flat(chern_curvature(S)).flat);
  TorsionTensor T = chern_torsion(S);
  REQUIRE(std::abs(T(0, 1, 2) - cplx(1.5)) < 1e-14);
  REQUIRE(std::abs(T(1, 2, 0) - cplx(1.5)) < 1e-14);
  REQUIRE(std::abs(T(2, 0, 1) - cplx(1.5)) < 1e-14);
  // Bismut diagonal vanishes for this profile
  CurvatureTensor Rb = bismut_curvature(S);
  for (int i = 0; i < 3; ++i) REQUIRE(std::abs(Rb(i, i, i, i)) < 1e-13);
}

TEST_CASE("threefold feasibility: rank-3 works exactly at the Chern point") {
  Btp3Verdict at_chern = btp3_constancy_analysis(Btp3Case::Rank3,
                                                 ConnectionParams::chern());
  REQUIRE(at_chern.feasible);
  REQUIRE(std::abs(at_chern.c) < 1e-12);
  REQUIRE(at_chern.full_residual < 1e-12);
  REQUIRE(at_chern.equation_residual < 1e-12);

  // scale invariance of the verdict
  REQUIRE(btp3_constancy_analysis(Btp3Case::Rank3, ConnectionParams::chern(), 2.5)
              .feasible);

  // away from the Chern point the same profile is inconsistent
  for (const auto& p : {ConnectionParams::bismut(), ConnectionParams::lichnerowicz(),
                        ConnectionParams::plus(), ConnectionParams{2.0, 0.5}}) {
    Btp3Verdict v = btp3_constancy_analysis(Btp3Case::Rank3, p);
    CAPTURE(p.r, p.s);
    REQUIRE(!v.feasible);
    // the gap scales with t^2 + s^2/4, smallest for (2, 0.5) where it is 1/16
    REQUIRE(v.full_residual > 0.05);
  }

  // at the Bismut point the diagonal-pair equation misses by exactly 1/2
  Btp3Verdict at_b = btp3_constancy_analysis(Btp3Case::Rank3, ConnectionParams::bismut());
  REQUIRE(at_b.equation_lhs == Catch::Approx(0.0).margin(1e-13));
  REQUIRE(at_b.equation_rhs == Catch::Approx(0.5));
}

TEST_CASE("threefold feasibility: the other two profiles never work") {
  for (const auto& p : {ConnectionParams::chern(), ConnectionParams::bismut(),
                        ConnectionParams::lichnerowicz(), ConnectionParams::minus(),
                        ConnectionParams{1.5, -0.8}}) {
    CAPTURE(p.r, p.s);
    Btp3Verdict w = btp3_constancy_analysis(Btp3Case::Wallach, p);
    REQUIRE(!w.feasible);
    REQUIRE(w.c == Catch::Approx(2.0));
    REQUIRE(w.equation_residual > 0.2);

    Btp3Verdict m = btp3_constancy_analysis(Btp3Case::Middle, p);
    REQUIRE(!m.feasible);
    REQUIRE(m.c == Catch::Approx(0.0).margin(1e-13));
    REQUIRE(m.equation_residual > 0.2);
  }

  // the violated equations have the expected values at the endpoints
  Btp3Verdict w0 = btp3_constancy_analysis(Btp3Case::Wallach, ConnectionParams::chern());
  REQUIRE(w0.equation_lhs == Catch::Approx(1.0));
  REQUIRE(w0.equation_rhs == Catch::Approx(1.25));
  Btp3Verdict wb = btp3_constancy_analysis(Btp3Case::Wallach, ConnectionParams::bismut());
  REQUIRE(wb.equation_rhs == Catch::Approx(1.5));

  Btp3Verdict m0 = btp3_constancy_analysis(Btp3Case::Middle, ConnectionParams::chern());
  REQUIRE(m0.equation_lhs == Catch::Approx(0.0).margin(1e-13));
  REQUIRE(m0.equation_rhs == Catch::Approx(0.5));
  Btp3Verdict mb = btp3_constancy_analysis(Btp3Case::Middle, ConnectionParams::bismut());
  REQUIRE(mb.equation_rhs == Catch::Approx(1.0));

  // scaling lambda rescales the quadratic side
  Btp3Verdict wl = btp3_constancy_analysis(Btp3Case::Wallach,
                                           ConnectionParams::bismut(), 0.5);
  REQUIRE(wl.equation_rhs == Catch::Approx(1.0 + 0.5 * 0.25));
}

TEST_CASE("threefold analysis rejects bad arguments") {
  REQUIRE_THROWS_AS(
      btp3_constancy_analysis(Btp3Case::Rank3, ConnectionParams{2.0, 1.0}),
      OutsideDomainError);
  REQUIRE_THROWS_AS(
      btp3_constancy_analysis(Btp3Case::Rank3, ConnectionParams::chern(), 0.0),
      OutsideDomainError);
  REQUIRE_THROWS_AS(
      btp3_constancy_analysis(Btp3Case::Rank3, ConnectionParams::chern(), -1.0),
      OutsideDomainError);
}
