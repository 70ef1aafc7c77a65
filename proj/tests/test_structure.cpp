#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "hermitia/hermitia.hpp"
#include "test_support.hpp"

using namespace hermitia;

TEST_CASE("structure constant storage enforces antisymmetry") {
  StructureConstants S(3);
  S.set_C(2, 0, 1, cplx(1.0, 2.0));
  REQUIRE(S.C(2, 0, 1) == cplx(1.0, 2.0));
  REQUIRE(S.C(2, 1, 0) == cplx(-1.0, -2.0));
  REQUIRE_THROWS_AS(S.set_C(0, 1, 1, 1.0), std::invalid_argument);
  REQUIRE_NOTHROW(S.set_C(0, 1, 1, 0.0));

  REQUIRE_THROWS_AS(StructureConstants(0), std::invalid_argument);
  REQUIRE_THROWS_AS(StructureConstants(17), std::invalid_argument);

  StructureConstants T(3);
  T.set_C(2, 0, 1, cplx(1.0, 2.0));
  REQUIRE(S == T);
  T.set_D(0, 1, 2, 0.5);
  REQUIRE(!(S == T));
}

TEST_CASE("catalog instances validate") {
  for (const char* name : {"kodaira_thurston", "iwasawa", "heis_product",
                           "hyperbolic_disc", "hyperbolic_product"}) {
    CAPTURE(name);
    StructureConstants S = catalog(name);
    auto rep = validate(S);
    REQUIRE(rep.ok);
    REQUIRE(rep.antisymmetry_ok);
    REQUIRE(d_squared_residual(S) < 1e-13);
  }
  REQUIRE(validate(catalog("abelian", 5)).ok);
  REQUIRE_THROWS_AS(catalog("nope"), std::invalid_argument);
  REQUIRE_THROWS_AS(catalog("abelian"), std::invalid_argument);
}

TEST_CASE("torsion components of the catalog") {
  // abelian: Kaehler flat
  REQUIRE(chern_torsion(catalog("abelian", 3)).max_abs() == 0.0);
  REQUIRE(check_kahler(catalog("abelian", 3)));

  // Kodaira-Thurston: T^1_{12} = -1 and nothing else
  TorsionTensor tkt = chern_torsion(catalog("kodaira_thurston"));
  REQUIRE(tkt(0, 0, 1) == cplx(-1.0));
  REQUIRE(tkt(0, 1, 0) == cplx(1.0));
  REQUIRE(tkt.max_abs() == 1.0);
  REQUIRE(!check_kahler(catalog("kodaira_thurston")));

  // Iwasawa: T^3_{12} = -1
  TorsionTensor tiw = chern_torsion(catalog("iwasawa"));
  REQUIRE(tiw(2, 0, 1) == cplx(-1.0));
  REQUIRE(tiw.max_abs() == 1.0);

  // hyperbolic instances carry symmetric D only, so they are Kaehler
  REQUIRE(check_kahler(catalog("hyperbolic_disc")));
  REQUIRE(check_kahler(catalog("hyperbolic_product")));
}

TEST_CASE("torsion setter keeps the lower pair antisymmetric") {
  TorsionTensor T(3);
  T.set(0, 1, 2, cplx(2.0, -1.0));
  REQUIRE(T(0, 2, 1) == cplx(-2.0, 1.0));
  REQUIRE_THROWS_AS(T.set(0, 1, 1, 1.0), std::invalid_argument);
}

TEST_CASE("balanced check solves the wedge equation and matches the trace") {
  auto trace_eta = [](const StructureConstants& S) {
    TorsionTensor T = chern_torsion(S);
    std::vector<cplx> eta(S.n());
    for (int i = 0; i < S.n(); ++i)
      for (int k = 0; k < S.n(); ++k) eta[i] += T(k, k, i);
    return eta;
  };

  // Iwasawa is balanced, Kodaira-Thurston is not (eta_2 = -1)
  REQUIRE(check_balanced(catalog("iwasawa")).balanced);
  BalancedReport kt = check_balanced(catalog("kodaira_thurston"));
  REQUIRE(!kt.balanced);
  REQUIRE(std::abs(kt.eta[1] - cplx(-1.0)) < 1e-12);
  REQUIRE(std::abs(kt.eta[0]) < 1e-12);

  BalancedReport hp = check_balanced(catalog("heis_product"));
  REQUIRE(!hp.balanced);
  REQUIRE(std::abs(hp.eta[1] - cplx(-1.0)) < 1e-12);

  // independent route: eta equals the torsion trace
  for (int rep = 0; rep < 8; ++rep) {
    StructureConstants S = random_two_step(3 + rep % 2, 1 + rep % 2, 4000 + rep);
    BalancedReport br = check_balanced(S);
    auto tr = trace_eta(S);
    for (int i = 0; i < S.n(); ++i) {
      CAPTURE(rep, i);
      REQUIRE(std::abs(br.eta[i] - tr[i]) < 1e-10);
    }
  }
}

TEST_CASE("triangularity predicates") {
  REQUIRE(check_nilpotent_j(catalog("iwasawa")));
  REQUIRE(check_salamon(catalog("iwasawa")));
  REQUIRE(check_nilpotent_j(catalog("kodaira_thurston")));
  REQUIRE(check_salamon(catalog("kodaira_thurston")));
  REQUIRE(check_nilpotent_j(catalog("abelian", 2)));

  // hyperbolic disc has D^1_{11} != 0: fails both triangularity patterns
  REQUIRE(!check_nilpotent_j(catalog("hyperbolic_disc")));
  REQUIRE(!check_salamon(catalog("hyperbolic_disc")));

  // C^2_{13} has its upper index above only one lower index: passes the
  // weaker pattern, fails the strict one
  StructureConstants S(3);
  S.set_C(1, 0, 2, 1.0);
  REQUIRE(!check_nilpotent_j(S));
  REQUIRE(check_salamon(S));

  // C^1_{23} fails both
  StructureConstants S2(3);
  S2.set_C(0, 1, 2, 1.0);
  REQUIRE(!check_nilpotent_j(S2));
  REQUIRE(!check_salamon(S2));
}

TEST_CASE("two-step generator produces valid nilpotent instances") {
  for (auto [n, m] : {std::pair{2, 1}, {3, 1}, {3, 2}, {4, 2}, {4, 3}}) {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
      CAPTURE(n, m, seed);
      StructureConstants S = random_two_step(n, m, seed);
      auto rep = validate(S);
      REQUIRE(rep.ok);
      REQUIRE(d_squared_residual(S) < 1e-12);
      REQUIRE(check_nilpotent_j(S));
    }
  }

  // deterministic in the seed
  REQUIRE(random_two_step(3, 1, 9) == random_two_step(3, 1, 9));
  REQUIRE(!(random_two_step(3, 1, 9) == random_two_step(3, 1, 10)));

  // the D-part shows up as torsion with the expected sign
  StructureConstants S = random_two_step(3, 2, 5);
  TorsionTensor T = chern_torsion(S);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      REQUIRE(std::abs(T(a, 2, b) + S.D(a, 2, b)) < 1e-14);

  REQUIRE_THROWS_AS(random_two_step(2, 2, 1), std::invalid_argument);
}

TEST_CASE("fuzzed structure constants violate both Jacobi and d^2") {
  std::mt19937_64 rng(42);
  for (int rep = 0; rep < 5; ++rep) {
    StructureConstants S = support::next_invalid(rng);
    auto v = validate(S);
    double worst = std::max({v.jacobi_residual[0], v.jacobi_residual[1],
                             v.jacobi_residual[2]});
    CAPTURE(rep);
    REQUIRE(!v.ok);
    REQUIRE(worst > 1e-6);
    REQUIRE(d_squared_residual(S) > 1e-6);
  }
}

TEST_CASE("unitary frame changes preserve validity") {
  std::mt19937_64 rng(31);
  StructureConstants iw = catalog("iwasawa");

  // identity fixes everything
  std::vector<cplx> id(9);
  for (int i = 0; i < 3; ++i) id[static_cast<std::size_t>(i) * 3 + i] = 1.0;
  REQUIRE(support::max_struct_diff(change_frame(iw, id), iw) == 0.0);

  for (int rep = 0; rep < 6; ++rep) {
    auto U = support::random_unitary(3, rng);
    StructureConstants S2 = change_frame(iw, U);
    CAPTURE(rep);
    REQUIRE(validate(S2).ok);
    REQUIRE(d_squared_residual(S2) < 1e-10);
  }

  // applying U then V is the same as applying the product VU
  auto U = support::random_unitary(3, rng);
  auto V = support::random_unitary(3, rng);
  std::vector<cplx> VU(9);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        VU[static_cast<std::size_t>(i) * 3 + j] +=
            V[static_cast<std::size_t>(i) * 3 + k] * U[static_cast<std::size_t>(k) * 3 + j];
  REQUIRE(support::max_struct_diff(change_frame(change_frame(iw, U), V),
                                   change_frame(iw, VU)) < 1e-10);

  // non-unitary input is rejected
  std::vector<cplx> bad(9, cplx(0.5, 0.0));
  REQUIRE_THROWS_AS(change_frame(iw, bad), std::invalid_argument);
}
