#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "hermitia/core.hpp"
#include "hermitia/form.hpp"

namespace hermitia {

// Structure constants of a 2n-dimensional real Lie algebra with an
// integrable left-invariant complex structure and compatible metric, in a
// unitary frame e_1..e_n of the (1,0) part:
//
//   [e_i, e_j]    = sum_k C^k_{ij} e_k
//   [e_i, ebar_j] = sum_k ( conj(D^i_{kj}) e_k - D^j_{ki} ebar_k )
//
// C is antisymmetric in its lower pair; D carries no symmetry.  All indices
// in this API are 0-based; the file format uses 1-based indices.
class StructureConstants {
 public:
  explicit StructureConstants(int n = 1) : n_(n) {
    if (n < 1 || n > 16)
      throw std::invalid_argument("StructureConstants: n out of range");
    C_.assign(static_cast<std::size_t>(n) * n * n, cplx{});
    D_.assign(static_cast<std::size_t>(n) * n * n, cplx{});
  }

  int n() const { return n_; }

  // C^k_{ij}
  cplx C(int k, int i, int j) const { return C_[idx(k, i, j)]; }
  // D^j_{ik}
  cplx D(int j, int i, int k) const { return D_[idx(j, i, k)]; }

  // Writes both orientations of the antisymmetric lower pair.
  void set_C(int k, int i, int j, cplx v) {
    if (i == j) {
      if (std::abs(v) > 0) throw std::invalid_argument("set_C: C^k_{ii} must vanish");
      return;
    }
    C_[idx(k, i, j)] = v;
    C_[idx(k, j, i)] = -v;
  }

  void set_D(int j, int i, int k, cplx v) { D_[idx(j, i, k)] = v; }

  double max_abs() const {
    double m = 0;
    for (const auto& c : C_) m = std::max(m, std::abs(c));
    for (const auto& d : D_) m = std::max(m, std::abs(d));
    return m;
  }

  bool operator==(const StructureConstants& o) const {
    return n_ == o.n_ && C_ == o.C_ && D_ == o.D_;
  }

 private:
  std::size_t idx(int a, int b, int c) const {
    if (a < 0 || a >= n_ || b < 0 || b >= n_ || c < 0 || c >= n_)
      throw std::invalid_argument("StructureConstants: index out of range");
    return (static_cast<std::size_t>(a) * n_ + b) * n_ + c;
  }

  int n_;
  std::vector<cplx> C_;
  std::vector<cplx> D_;
};

// ---------------------------------------------------------------------------
// Differential

// d phi_i = - sum_{j<k} C^i_{jk} phi_j^phi_k - sum_{j,k} conj(D^j_{ik}) phi_j^phibar_k
inline Form dphi(const StructureConstants& S, int i) {
  int n = S.n();
  Form f(n);
  for (int j = 0; j < n; ++j) {
    for (int k = j + 1; k < n; ++k)
      f.add_term((Form::Mask{1} << j) | (Form::Mask{1} << k), -S.C(i, j, k));
    for (int k = 0; k < n; ++k)
      f.add_term((Form::Mask{1} << j) | (Form::Mask{1} << (n + k)),
                 -std::conj(S.D(j, i, k)));
  }
  return f;
}

inline Form dphibar(const StructureConstants& S, int i) { return conj(dphi(S, i)); }

// Exterior differential, extended from the coframe by the graded Leibniz
// rule.  Constants are closed.
inline Form differential(const Form& f, const StructureConstants& S) {
  int n = f.n();
  if (n != S.n()) throw std::invalid_argument("differential: dimension mismatch");
  std::vector<Form> dbasis;
  dbasis.reserve(2 * n);
  for (int i = 0; i < n; ++i) dbasis.push_back(dphi(S, i));
  for (int i = 0; i < n; ++i) dbasis.push_back(dphibar(S, i));

  Form out(n);
  for (const auto& [mask, c] : f.terms()) {
    // d(c_1^...^c_k) = sum_p (-1)^(p-1) c_1^...^d(c_p)^...^c_k
    int pos = 0;
    Form::Mask mm = mask;
    while (mm) {
      int bit = std::countr_zero(mm);
      mm &= mm - 1;
      Form::Mask before = mask & ((Form::Mask{1} << bit) - 1);
      Form::Mask after = mask & ~((Form::Mask{1} << (bit + 1)) - 1);
      double outer_sign = (pos & 1) ? -1.0 : 1.0;
      for (const auto& [dm, dc] : dbasis[static_cast<std::size_t>(bit)].terms()) {
        if (dm & (before | after)) continue;
        int sign = detail::merge_sign(before, dm) * detail::merge_sign(before | dm, after);
        out.add_term(before | dm | after, c * dc * outer_sign * static_cast<double>(sign));
      }
      ++pos;
    }
  }
  return out;
}

// (p,q) -> (p+1,q) component of d.
inline Form del(const Form& f, const StructureConstants& S) {
  int n = f.n();
  Form out(n);
  Form::Mask low = (Form::Mask{1} << n) - 1;
  for (const auto& [m, c] : f.terms()) {
    Form piece(n);
    piece.add_term(m, c);
    int p = std::popcount(m & low);
    int q = std::popcount(m >> n);
    out += bidegree_part(differential(piece, S), p + 1, q);
  }
  return out;
}

// (p,q) -> (p,q+1) component of d.
inline Form delbar(const Form& f, const StructureConstants& S) {
  int n = f.n();
  Form out(n);
  Form::Mask low = (Form::Mask{1} << n) - 1;
  for (const auto& [m, c] : f.terms()) {
    Form piece(n);
    piece.add_term(m, c);
    int p = std::popcount(m & low);
    int q = std::popcount(m >> n);
    out += bidegree_part(differential(piece, S), p, q + 1);
  }
  return out;
}

// Largest coefficient of d(d(phi_i)) and d(d(phibar_i)) over all i; zero
// exactly when the bracket satisfies the Jacobi identity.
inline double d_squared_residual(const StructureConstants& S) {
  double m = 0;
  for (int i = 0; i < S.n(); ++i) {
    m = std::max(m, differential(dphi(S, i), S).max_abs());
    m = std::max(m, differential(dphibar(S, i), S).max_abs());
  }
  return m;
}

// ---------------------------------------------------------------------------
// Validation

struct ValidationReport {
  bool antisymmetry_ok = false;
  // residuals of the three quadratic bracket identities:
  //  [0] pure (1,0) part, C*C
  //  [1] mixed part along e,   C*D + D*D
  //  [2] mixed part along ebar, C*D + D*D with conjugations
  std::array<double, 3> jacobi_residual{0, 0, 0};
  double tol = kDefaultTol;
  bool ok = false;
};

inline ValidationReport validate(const StructureConstants& S,
                                 double tol = kDefaultTol) {
  int n = S.n();
  ValidationReport rep;
  rep.tol = tol;

  rep.antisymmetry_ok = true;
  for (int k = 0; k < n && rep.antisymmetry_ok; ++k)
    for (int i = 0; i < n && rep.antisymmetry_ok; ++i)
      for (int j = 0; j < n; ++j)
        if (std::abs(S.C(k, i, j) + S.C(k, j, i)) > tol) {
          rep.antisymmetry_ok = false;
          break;
        }

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          cplx a{}, b{}, c{};
          for (int r = 0; r < n; ++r) {
            a += S.C(r, i, j) * S.C(l, r, k) + S.C(r, j, k) * S.C(l, r, i) +
                 S.C(r, k, i) * S.C(l, r, j);
            b += S.C(r, i, k) * S.D(l, j, r) + S.D(r, j, i) * S.D(l, r, k) -
                 S.D(r, j, k) * S.D(l, r, i);
            c += S.C(r, i, k) * std::conj(S.D(r, j, l)) -
                 S.C(j, r, k) * std::conj(S.D(i, r, l)) +
                 S.C(j, r, i) * std::conj(S.D(k, r, l)) -
                 S.D(l, r, i) * std::conj(S.D(k, j, r)) +
                 S.D(l, r, k) * std::conj(S.D(i, j, r));
          }
          rep.jacobi_residual[0] = std::max(rep.jacobi_residual[0], std::abs(a));
          rep.jacobi_residual[1] = std::max(rep.jacobi_residual[1], std::abs(b));
          rep.jacobi_residual[2] = std::max(rep.jacobi_residual[2], std::abs(c));
        }

  rep.ok = rep.antisymmetry_ok && rep.jacobi_residual[0] <= tol &&
           rep.jacobi_residual[1] <= tol && rep.jacobi_residual[2] <= tol;
  return rep;
}

// ---------------------------------------------------------------------------
// Torsion

// Chern torsion components, T^j_{ik}, antisymmetric in (i,k).
class TorsionTensor {
 public:
  explicit TorsionTensor(int n = 1) : n_(n) {
    T_.assign(static_cast<std::size_t>(n) * n * n, cplx{});
  }

  int n() const { return n_; }
  cplx operator()(int j, int i, int k) const { return T_[idx(j, i, k)]; }

  void set(int j, int i, int k, cplx v) {
    if (i == k) {
      if (std::abs(v) > 0) throw std::invalid_argument("TorsionTensor: T^j_{ii} must vanish");
      return;
    }
    T_[idx(j, i, k)] = v;
    T_[idx(j, k, i)] = -v;
  }

  double max_abs() const {
    double m = 0;
    for (const auto& t : T_) m = std::max(m, std::abs(t));
    return m;
  }

 private:
  std::size_t idx(int a, int b, int c) const {
    if (a < 0 || a >= n_ || b < 0 || b >= n_ || c < 0 || c >= n_)
      throw std::invalid_argument("TorsionTensor: index out of range");
    return (static_cast<std::size_t>(a) * n_ + b) * n_ + c;
  }

  int n_;
  std::vector<cplx> T_;
};

// T^j_{ik} = -C^j_{ik} - D^j_{ik} + D^j_{ki}
inline TorsionTensor chern_torsion(const StructureConstants& S) {
  int n = S.n();
  TorsionTensor T(n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      for (int k = i + 1; k < n; ++k)
        T.set(j, i, k, -S.C(j, i, k) - S.D(j, i, k) + S.D(j, k, i));
  return T;
}

// ---------------------------------------------------------------------------
// Structure predicates

inline bool check_kahler(const StructureConstants& S, double tol = kDefaultTol) {
  return chern_torsion(S).max_abs() <= tol;
}

// Strict triangular pattern of complex nilmanifolds with nilpotent complex
// structure: C^j_{ik} = 0 unless j > i and j > k; D^j_{ik} = 0 unless
// i > j and i > k.
inline bool check_nilpotent_j(const StructureConstants& S, double tol = kDefaultTol) {
  int n = S.n();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        if (!(a > b && a > c) && std::abs(S.C(a, b, c)) > tol) return false;
        if (!(b > a && b > c) && std::abs(S.D(a, b, c)) > tol) return false;
      }
  return true;
}

// Weaker triangular pattern: C^j_{ik} = 0 unless j > i or j > k;
// D^j_{ik} = 0 unless i > j.
inline bool check_salamon(const StructureConstants& S, double tol = kDefaultTol) {
  int n = S.n();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        if (!(a > b || a > c) && std::abs(S.C(a, b, c)) > tol) return false;
        if (!(b > a) && std::abs(S.D(a, b, c)) > tol) return false;
      }
  return true;
}

// ---------------------------------------------------------------------------
// Balanced check

struct BalancedReport {
  bool balanced = false;
  std::vector<cplx> eta;  // the (1,0)-form eta with del(omega^(n-1)) = -eta ^ omega^(n-1)
  double max_abs_eta = 0;
};

namespace detail {

// Solves the square complex system A x = b by Gaussian elimination with
// partial pivoting.  Returns nullopt when A is singular to working
// precision.
inline std::optional<std::vector<cplx>> solve_linear(std::vector<std::vector<cplx>> A,
                                                     std::vector<cplx> b) {
  std::size_t n = A.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(A[r][col]) > std::abs(A[piv][col])) piv = r;
    if (std::abs(A[piv][col]) < 1e-12) return std::nullopt;
    std::swap(A[piv], A[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      cplx f = A[r][col] / A[col][col];
      for (std::size_t c = col; c < n; ++c) A[r][c] -= f * A[col][c];
      b[r] -= f * b[col];
    }
  }
  std::vector<cplx> x(n);
  for (std::size_t r = n; r-- > 0;) {
    cplx acc = b[r];
    for (std::size_t c = r + 1; c < n; ++c) acc -= A[r][c] * x[c];
    x[r] = acc / A[r][r];
  }
  return x;
}

}  // namespace detail

// Solves del(omega^(n-1)) = -eta ^ omega^(n-1) for the left-invariant
// (1,0)-form eta, with omega = sqrt(-1) sum_k phi_k ^ phibar_k.  The metric
// is balanced exactly when eta vanishes.
inline BalancedReport check_balanced(const StructureConstants& S,
                                     double tol = kDefaultTol) {
  int n = S.n();
  Form omega(n);
  for (int k = 0; k < n; ++k)
    omega.add_term((Form::Mask{1} << k) | (Form::Mask{1} << (n + k)), cplx(0, 1));

  Form w = Form::scalar(n, 1.0);
  for (int k = 0; k + 1 < n; ++k) w = wedge(w, omega);

  Form rhs = del(w, S) * cplx(-1.0);

  // (n, n-1) monomials: all of phi_1..phi_n and all phibar's but one.
  Form::Mask full_low = (Form::Mask{1} << n) - 1;
  std::vector<Form::Mask> basis;
  for (int miss = 0; miss < n; ++miss) {
    Form::Mask high = (full_low << n) & ~(Form::Mask{1} << (n + miss));
    basis.push_back(full_low | high);
  }

  std::vector<std::vector<cplx>> A(basis.size(), std::vector<cplx>(n));
  std::vector<cplx> b(basis.size());
  for (std::size_t row = 0; row < basis.size(); ++row) {
    for (int i = 0; i < n; ++i)
      A[row][i] = wedge(Form::phi(n, i), w).coeff(basis[row]);
    b[row] = rhs.coeff(basis[row]);
  }

  auto eta = detail::solve_linear(A, b);
  if (!eta)
    throw InconsistentEquationError("check_balanced: degenerate wedge system");

  Form recon(n);
  for (int i = 0; i < n; ++i) recon += wedge(Form::phi(n, i), w) * (*eta)[i];
  if (max_abs_diff(recon, rhs) > std::max(tol, 1e-9))
    throw InconsistentEquationError("check_balanced: residual after solve");

  BalancedReport rep;
  rep.eta = *eta;
  for (const auto& e : rep.eta) rep.max_abs_eta = std::max(rep.max_abs_eta, std::abs(e));
  rep.balanced = rep.max_abs_eta <= tol;
  return rep;
}

// ---------------------------------------------------------------------------
// Catalog and generators

// Built-in instances.  Names:
//   abelian             C = D = 0, any n
//   kodaira_thurston    n = 2, D^1_{21} = -1 (so d phi_2 = phi_1 ^ phibar_1)
//   iwasawa             n = 3, C^3_{12} = 1  (so d phi_3 = -phi_1 ^ phi_2)
//   heis_product        n = 3, Kodaira-Thurston times a flat factor
//   hyperbolic_disc     n = 1, D^1_{11} = 1 (Kaehler, negative curvature)
//   hyperbolic_product  n = 2, same with a flat factor
inline StructureConstants catalog(const std::string& name, int n = 0) {
  if (name == "abelian") {
    if (n < 1) throw std::invalid_argument("catalog: abelian needs n >= 1");
    return StructureConstants(n);
  }
  if (name == "kodaira_thurston") {
    StructureConstants S(2);
    S.set_D(0, 1, 0, -1.0);
    return S;
  }
  if (name == "iwasawa") {
    StructureConstants S(3);
    S.set_C(2, 0, 1, 1.0);
    return S;
  }
  if (name == "heis_product") {
    StructureConstants S(3);
    S.set_D(0, 1, 0, -1.0);
    return S;
  }
  if (name == "hyperbolic_disc") {
    StructureConstants S(1);
    S.set_D(0, 0, 0, 1.0);
    return S;
  }
  if (name == "hyperbolic_product") {
    StructureConstants S(2);
    S.set_D(0, 0, 0, 1.0);
    return S;
  }
  throw std::invalid_argument("catalog: unknown name '" + name + "'");
}

// Random two-step nilpotent instance: phi_1..phi_m closed, and for i > m
// d phi_i lies in the span of phi_a^phi_b, phi_a^phibar_b with a, b <= m.
// The bracket identities hold for any coefficient draw, so every output
// validates.  Output is a deterministic function of (n, m, seed).
inline StructureConstants random_two_step(int n, int m, std::uint64_t seed) {
  if (!(n >= 2 && m >= 1 && m < n))
    throw std::invalid_argument("random_two_step: need n >= 2, 1 <= m < n");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> mag(0.3, 1.2);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * 3.141592653589793);
  auto draw = [&] {
    double a = angle(rng), r = mag(rng);
    return cplx(r * std::cos(a), r * std::sin(a));
  };
  StructureConstants S(n);
  for (int i = m; i < n; ++i) {
    for (int a = 0; a < m; ++a)
      for (int b = a + 1; b < m; ++b) S.set_C(i, a, b, draw());
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) S.set_D(a, i, b, draw());
  }
  return S;
}

// ---------------------------------------------------------------------------
// Frame change

// Unitary change of the (1,0) frame, e'_i = sum_j U[i][j] e_j.  U is n x n
// row-major.  Throws when U is not unitary to the given tolerance.
inline StructureConstants change_frame(const StructureConstants& S,
                                       const std::vector<cplx>& U,
                                       double tol = kDefaultTol) {
  int n = S.n();
  if (U.size() != static_cast<std::size_t>(n) * n)
    throw std::invalid_argument("change_frame: U has wrong size");
  auto u = [&](int i, int j) { return U[static_cast<std::size_t>(i) * n + j]; };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      cplx acc{};
      for (int k = 0; k < n; ++k) acc += u(i, k) * std::conj(u(j, k));
      if (std::abs(acc - (i == j ? 1.0 : 0.0)) > tol)
        throw std::invalid_argument("change_frame: U is not unitary");
    }

  StructureConstants out(n);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        cplx acc{};
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
              acc += u(i, a) * u(j, b) * std::conj(u(k, c)) * S.C(c, a, b);
        out.set_C(k, i, j, acc);
      }
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) {
        cplx acc{};
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
              acc += std::conj(u(j, a)) * u(k, b) * u(i, c) * S.D(a, c, b);
        out.set_D(j, i, k, acc);
      }
  return out;
}

}  // namespace hermitia
