#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "hermitia/core.hpp"
#include "hermitia/form.hpp"
#include "hermitia/structure.hpp"

namespace hermitia {

// Point (r, s) in the two-parameter plane of canonical metric connections.
// The admissible set is { s != 1 } together with the single point (0, 1),
// which is the Levi-Civita connection.  The combination
// t = (1 - r + r s) / 2 is what the curvature formulas actually depend on,
// besides s itself.
struct ConnectionParams {
  double r = 1.0;
  double s = 0.0;

  double t() const { return 0.5 * (1.0 - r + r * s); }

  bool in_domain(double tol = 1e-12) const {
    if (std::abs(s - 1.0) > tol) return true;
    return std::abs(r) <= tol;  // only (0,1) on the excluded line
  }

  static ConnectionParams chern() { return {1.0, 0.0}; }
  static ConnectionParams bismut() { return {-1.0, 0.0}; }
  static ConnectionParams lichnerowicz() { return {0.0, 0.0}; }
  static ConnectionParams levi_civita() { return {0.0, 1.0}; }
  static ConnectionParams anti_bismut() { return {3.0, 0.0}; }
  static ConnectionParams plus() { return {-1.0, 2.0}; }
  static ConnectionParams minus() { return {1.0 / 3.0, -2.0}; }
  static ConnectionParams minimal_gauduchon() { return {-1.0 / 3.0, 0.0}; }
};

struct NamedParams {
  const char* name;
  ConnectionParams params;
};

inline const std::vector<NamedParams>& named_connection_params() {
  static const std::vector<NamedParams> pts = {
      {"chern", ConnectionParams::chern()},
      {"bismut", ConnectionParams::bismut()},
      {"lichnerowicz", ConnectionParams::lichnerowicz()},
      {"levi_civita", ConnectionParams::levi_civita()},
      {"anti_bismut", ConnectionParams::anti_bismut()},
      {"plus", ConnectionParams::plus()},
      {"minus", ConnectionParams::minus()},
      {"minimal_gauduchon", ConnectionParams::minimal_gauduchon()},
  };
  return pts;
}

enum class ConnectionKind { Chern, Bismut, LeviCivita, General };

inline const char* kind_name(ConnectionKind k) {
  switch (k) {
    case ConnectionKind::Chern: return "chern";
    case ConnectionKind::Bismut: return "bismut";
    case ConnectionKind::LeviCivita: return "levicivita";
    case ConnectionKind::General: return "general";
  }
  return "?";
}

// Connection matrix in the frame e_1..e_n.  theta[i*n+j] is the 1-form
// theta_{ij}, so the structure equation reads d(e_i) = sum_j theta_{ij} e_j
// plus, for connections that do not preserve the splitting, the
// conjugate-linear block conj_block (already scaled by its s factor).
struct ConnectionMatrix {
  int n = 0;
  ConnectionKind kind = ConnectionKind::Chern;
  ConnectionParams params;          // meaningful for General / LeviCivita
  std::vector<Form> theta;          // n*n complex-linear block
  std::vector<Form> conj_block;     // n*n, empty when the block vanishes

  const Form& entry(int i, int j) const {
    return theta[static_cast<std::size_t>(i) * n + j];
  }
};

namespace detail {

inline std::vector<Form> form_matrix(int n) {
  return std::vector<Form>(static_cast<std::size_t>(n) * n, Form(n));
}

}  // namespace detail

// theta_{ij} = sum_k ( D^j_{ik} phi_k - conj(D^i_{jk}) phibar_k )
inline std::vector<Form> chern_theta(const StructureConstants& S) {
  int n = S.n();
  auto th = detail::form_matrix(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Form& f = th[static_cast<std::size_t>(i) * n + j];
      for (int k = 0; k < n; ++k) {
        f.add_term(Form::Mask{1} << k, S.D(j, i, k));
        f.add_term(Form::Mask{1} << (n + k), -std::conj(S.D(i, j, k)));
      }
    }
  return th;
}

// gamma_{ij} = sum_k ( T^j_{ik} phi_k - conj(T^i_{jk}) phibar_k ),
// the difference between the Bismut and Chern matrices.
inline std::vector<Form> gamma_matrix(const TorsionTensor& T) {
  int n = T.n();
  auto g = detail::form_matrix(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Form& f = g[static_cast<std::size_t>(i) * n + j];
      for (int k = 0; k < n; ++k) {
        f.add_term(Form::Mask{1} << k, T(j, i, k));
        f.add_term(Form::Mask{1} << (n + k), -std::conj(T(i, j, k)));
      }
    }
  return g;
}

// beta_{ij} = (1/2) sum_k conj(T^k_{ij}) phi_k, the (1,0) block coupling
// e's to ebar's in the Levi-Civita connection.
inline std::vector<Form> beta_matrix(const TorsionTensor& T) {
  int n = T.n();
  auto b = detail::form_matrix(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Form& f = b[static_cast<std::size_t>(i) * n + j];
      for (int k = 0; k < n; ++k)
        f.add_term(Form::Mask{1} << k, 0.5 * std::conj(T(k, i, j)));
    }
  return b;
}

// theta^b_{ij} = sum_k { (-C^j_{ik} + D^j_{ki}) phi_k
//                        + (conj(C^i_{jk}) - conj(D^i_{kj})) phibar_k }
inline std::vector<Form> bismut_theta(const StructureConstants& S) {
  int n = S.n();
  auto th = detail::form_matrix(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Form& f = th[static_cast<std::size_t>(i) * n + j];
      for (int k = 0; k < n; ++k) {
        f.add_term(Form::Mask{1} << k, -S.C(j, i, k) + S.D(j, k, i));
        f.add_term(Form::Mask{1} << (n + k),
                   std::conj(S.C(i, j, k)) - std::conj(S.D(i, k, j)));
      }
    }
  return th;
}

inline ConnectionMatrix chern_connection_form(const StructureConstants& S) {
  ConnectionMatrix M;
  M.n = S.n();
  M.kind = ConnectionKind::Chern;
  M.params = ConnectionParams::chern();
  M.theta = chern_theta(S);
  return M;
}

inline ConnectionMatrix bismut_connection_form(const StructureConstants& S) {
  ConnectionMatrix M;
  M.n = S.n();
  M.kind = ConnectionKind::Bismut;
  M.params = ConnectionParams::bismut();
  M.theta = bismut_theta(S);
  return M;
}

// theta^D = theta + t gamma with conjugate-linear block s beta.
inline ConnectionMatrix connection_form_D(const StructureConstants& S,
                                          ConnectionParams p) {
  if (!p.in_domain())
    throw OutsideDomainError("connection_form_D: (r,s) outside admissible set");
  int n = S.n();
  TorsionTensor T = chern_torsion(S);
  auto th = chern_theta(S);
  auto g = gamma_matrix(T);
  double t = p.t();
  for (std::size_t e = 0; e < th.size(); ++e) th[e] += g[e] * cplx(t);

  ConnectionMatrix M;
  M.n = n;
  M.kind = ConnectionKind::General;
  M.params = p;
  M.theta = std::move(th);
  if (std::abs(p.s) > 0) {
    auto b = beta_matrix(T);
    for (auto& f : b) f *= cplx(p.s);
    M.conj_block = std::move(b);
  }
  return M;
}

inline ConnectionMatrix levi_civita_connection_form(const StructureConstants& S) {
  ConnectionMatrix M = connection_form_D(S, ConnectionParams::levi_civita());
  M.kind = ConnectionKind::LeviCivita;
  return M;
}

}  // namespace hermitia
