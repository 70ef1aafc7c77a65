#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "hermitia/hermitia.hpp"
#include "test_support.hpp"

using namespace hermitia;

namespace {

// random form with a handful of monomials of assorted bidegrees
Form random_form(int n, std::mt19937_64& rng, int terms = 5) {
  Form f(n);
  std::uniform_int_distribution<Form::Mask> mask(0, (Form::Mask{1} << (2 * n)) - 1);
  for (int t = 0; t < terms; ++t) f.add_term(mask(rng), support::random_cplx(rng));
  return f;
}

// random single monomial (homogeneous by construction); coefficient kept
// away from zero so the term survives pruning
Form random_monomial(int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<Form::Mask> mask(0, (Form::Mask{1} << (2 * n)) - 1);
  Form f(n);
  f.add_term(mask(rng), support::random_cplx(rng) + cplx(1.5, 0.0));
  return f;
}

int degree(const Form& f) {
  return std::popcount(f.terms().begin()->first);
}

}  // namespace

TEST_CASE("basic covectors and monomial construction") {
  Form p1 = Form::phi(3, 0);
  Form pb2 = Form::phibar(3, 1);
  REQUIRE(p1.coeff_phi(0) == cplx(1.0));
  REQUIRE(pb2.coeff_phibar(1) == cplx(1.0));
  REQUIRE(p1.term_count() == 1);

  // unsorted covector list picks up the permutation sign
  Form m = Form::monomial(2, {1, 0}, 1.0);
  REQUIRE(m.coeff(0b11) == cplx(-1.0));

  // repeated covector collapses to zero
  REQUIRE(Form::monomial(2, {0, 0}, 1.0).is_zero());

  REQUIRE_THROWS_AS(Form::phi(2, 2), std::invalid_argument);
  REQUIRE_THROWS_AS(Form(17), std::invalid_argument);
  REQUIRE_NOTHROW(Form(16));
}

TEST_CASE("wedge is graded-commutative and associative") {
  std::mt19937_64 rng(7);
  for (int rep = 0; rep < 40; ++rep) {
    int n = 2 + static_cast<int>(rng() % 3);
    Form a = random_monomial(n, rng);
    Form b = random_monomial(n, rng);
    int sign = (degree(a) * degree(b)) % 2 ? -1 : 1;
    REQUIRE(max_abs_diff(wedge(a, b), wedge(b, a) * cplx(sign)) < 1e-13);

    Form c = random_monomial(n, rng);
    REQUIRE(max_abs_diff(wedge(wedge(a, b), c), wedge(a, wedge(b, c))) < 1e-13);
  }

  // anticommutativity pins the basic sign
  Form ab = wedge(Form::phi(2, 0), Form::phi(2, 1));
  Form ba = wedge(Form::phi(2, 1), Form::phi(2, 0));
  REQUIRE(max_abs_diff(ab, -ba) == 0.0);
  REQUIRE(wedge(Form::phi(2, 0), Form::phi(2, 0)).is_zero());
}

TEST_CASE("conjugation is an involution compatible with wedge") {
  // phi ^ phibar of the same index is purely imaginary-like: conj flips sign
  Form v = wedge(Form::phi(2, 0), Form::phibar(2, 0));
  REQUIRE(max_abs_diff(conj(v), -v) == 0.0);

  std::mt19937_64 rng(11);
  for (int rep = 0; rep < 30; ++rep) {
    int n = 2 + static_cast<int>(rng() % 3);
    Form a = random_form(n, rng);
    Form b = random_form(n, rng);
    REQUIRE(max_abs_diff(conj(conj(a)), a) < 1e-13);
    REQUIRE(max_abs_diff(conj(wedge(a, b)), wedge(conj(a), conj(b))) < 1e-12);
  }
}

TEST_CASE("bidegree decomposition sums back to the form") {
  std::mt19937_64 rng(13);
  for (int rep = 0; rep < 20; ++rep) {
    int n = 2 + static_cast<int>(rng() % 3);
    Form f = random_form(n, rng, 8);
    Form sum(n);
    for (int p = 0; p <= n; ++p)
      for (int q = 0; q <= n; ++q) sum += bidegree_part(f, p, q);
    REQUIRE(max_abs_diff(sum, f) == 0.0);
  }
}

TEST_CASE("arithmetic prunes cancellations") {
  std::mt19937_64 rng(17);
  Form a = random_form(3, rng);
  Form b = random_form(3, rng);
  REQUIRE(max_abs_diff((a + b) - b, a) < 1e-14);
  REQUIRE((a - a).is_zero());
  REQUIRE((a * cplx(0.0)).is_zero());

  Form tiny(3);
  tiny.add_term(1, 1e-20);
  REQUIRE(tiny.is_zero());
}

TEST_CASE("structure equations of the catalog instances") {
  // d phi_2 = phi_1 ^ phibar_1 on the Kodaira-Thurston surface
  StructureConstants kt = catalog("kodaira_thurston");
  REQUIRE(dphi(kt, 1).coeff_phi_phibar(0, 0) == cplx(1.0));
  REQUIRE(dphi(kt, 1).term_count() == 1);
  REQUIRE(dphi(kt, 0).is_zero());

  // d phi_3 = -phi_1 ^ phi_2 on the Iwasawa threefold
  StructureConstants iw = catalog("iwasawa");
  REQUIRE(dphi(iw, 2).coeff(0b11) == cplx(-1.0));
  REQUIRE(dphi(iw, 2).term_count() == 1);
  REQUIRE(dphi(iw, 0).is_zero());
  REQUIRE(dphi(iw, 1).is_zero());

  // dphibar is the conjugate
  REQUIRE(max_abs_diff(dphibar(iw, 2), conj(dphi(iw, 2))) == 0.0);
}

TEST_CASE("differential satisfies the graded Leibniz rule") {
  std::mt19937_64 rng(19);
  for (int rep = 0; rep < 30; ++rep) {
    StructureConstants S = random_two_step(3, 1 + static_cast<int>(rng() % 2),
                                           1000 + rep);
    Form a = random_monomial(3, rng);
    Form b = random_monomial(3, rng);
    Form lhs = differential(wedge(a, b), S);
    double sign = (degree(a) % 2) ? -1.0 : 1.0;
    Form rhs = wedge(differential(a, S), b) + wedge(a, differential(b, S)) * sign;
    REQUIRE(max_abs_diff(lhs, rhs) < 1e-12);
  }
}

TEST_CASE("d of d vanishes on integrable structures") {
  for (const char* name : {"kodaira_thurston", "iwasawa", "heis_product",
                           "hyperbolic_disc", "hyperbolic_product"}) {
    CAPTURE(name);
    REQUIRE(d_squared_residual(catalog(name)) < 1e-13);
  }
  REQUIRE(d_squared_residual(catalog("abelian", 4)) == 0.0);

  std::mt19937_64 rng(23);
  for (int rep = 0; rep < 10; ++rep) {
    StructureConstants S = random_two_step(4, 2, 2000 + rep);
    Form f = random_form(4, rng, 6);
    REQUIRE(differential(differential(f, S), S).max_abs() < 1e-12);
  }
}

TEST_CASE("d splits into del and delbar by bidegree") {
  std::mt19937_64 rng(29);
  for (int rep = 0; rep < 20; ++rep) {
    StructureConstants S = random_two_step(3, 1, 3000 + rep);
    Form f = random_form(3, rng, 6);
    REQUIRE(max_abs_diff(del(f, S) + delbar(f, S), differential(f, S)) < 1e-12);
  }

  // del raises holomorphic degree by one, delbar the antiholomorphic one
  StructureConstants kt = catalog("kodaira_thurston");
  Form f = Form::phibar(2, 1);  // d phibar_2 = phibar_1 ^ phi_1 pattern
  Form dl = del(f, kt);
  Form db = delbar(f, kt);
  REQUIRE(max_abs_diff(bidegree_part(dl, 1, 1), dl) == 0.0);
  REQUIRE(max_abs_diff(bidegree_part(db, 0, 2), db) == 0.0);
}

TEST_CASE("form diagnostics print monomials in frame order") {
  Form f = wedge(Form::phi(2, 0), Form::phibar(2, 1));
  REQUIRE(f.str().find("phi1^phibar2") != std::string::npos);
  REQUIRE(Form(2).str() == "0");
}
