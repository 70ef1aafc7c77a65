#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "hermitia/core.hpp"

namespace hermitia {

// A constant-coefficient complex form on a Lie algebra with complex
// dimension n, written in the coframe phi_1..phi_n, phibar_1..phibar_n.
//
// Monomials are encoded as bitmasks over the 2n covectors: bit i (0-based)
// is phi_{i+1}, bit n+i is phibar_{i+1}.  Ascending bit order realizes the
// fixed total order phi_1 < ... < phi_n < phibar_1 < ... < phibar_n, so a
// mask *is* the sorted monomial.  Unsorted input picks up the sign of the
// sorting permutation at construction time.
class Form {
 public:
  using Mask = std::uint64_t;

  explicit Form(int n = 0) : n_(n) {
    if (n < 0 || n > 16) throw std::invalid_argument("Form: n out of range");
  }

  static Form zero(int n) { return Form(n); }

  static Form scalar(int n, cplx c) {
    Form f(n);
    f.add_term(0, c);
    return f;
  }

  // phi_{i+1} for 0-based i.
  static Form phi(int n, int i) {
    Form f(n);
    f.add_term(Mask{1} << check_index(n, i), 1.0);
    return f;
  }

  // phibar_{i+1} for 0-based i.
  static Form phibar(int n, int i) {
    Form f(n);
    f.add_term(Mask{1} << (n + check_index(n, i)), 1.0);
    return f;
  }

  // Wedge monomial from covector ids in the given (possibly unsorted) order;
  // ids 0..n-1 are phi's, n..2n-1 are phibar's.  A repeated id gives zero.
  static Form monomial(int n, const std::vector<int>& covectors, cplx coeff) {
    Form f(n);
    Mask m = 0;
    int sign = 1;
    for (int c : covectors) {
      if (c < 0 || c >= 2 * n) throw std::invalid_argument("Form: bad covector id");
      Mask bit = Mask{1} << c;
      if (m & bit) return f;  // repeated covector
      // crossings with already-placed covectors that are larger
      int above = std::popcount(m >> (c + 1));
      if (above & 1) sign = -sign;
      m |= bit;
    }
    f.add_term(m, coeff * static_cast<double>(sign));
    return f;
  }

  int n() const { return n_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  const std::map<Mask, cplx>& terms() const { return terms_; }

  cplx coeff(Mask m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? cplx{} : it->second;
  }

  // Coefficient of phi_{k+1} ^ phibar_{l+1} (0-based k, l).
  cplx coeff_phi_phibar(int k, int l) const {
    return coeff((Mask{1} << check_index(n_, k)) |
                 (Mask{1} << (n_ + check_index(n_, l))));
  }

  cplx coeff_phi(int k) const { return coeff(Mask{1} << check_index(n_, k)); }
  cplx coeff_phibar(int l) const {
    return coeff(Mask{1} << (n_ + check_index(n_, l)));
  }

  double max_abs() const {
    double m = 0;
    for (const auto& [mask, c] : terms_) m = std::max(m, std::abs(c));
    return m;
  }

  void add_term(Mask m, cplx c) {
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      if (std::abs(c) > kPruneTol) terms_.emplace(m, c);
      return;
    }
    it->second += c;
    if (std::abs(it->second) <= kPruneTol) terms_.erase(it);
  }

  Form& operator+=(const Form& o) {
    require_same_n(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }

  Form& operator-=(const Form& o) {
    require_same_n(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }

  Form& operator*=(cplx s) {
    if (std::abs(s) <= kPruneTol) {
      terms_.clear();
      return *this;
    }
    std::map<Mask, cplx> out;
    for (const auto& [m, c] : terms_) {
      cplx v = c * s;
      if (std::abs(v) > kPruneTol) out.emplace(m, v);
    }
    terms_ = std::move(out);
    return *this;
  }

  friend Form operator+(Form a, const Form& b) { return a += b; }
  friend Form operator-(Form a, const Form& b) { return a -= b; }
  friend Form operator*(Form a, cplx s) { return a *= s; }
  friend Form operator*(cplx s, Form a) { return a *= s; }
  friend Form operator-(Form a) { return a *= cplx(-1.0); }

  void require_same_n(const Form& o) const {
    if (n_ != o.n_) throw std::invalid_argument("Form: dimension mismatch");
  }

  static int check_index(int n, int i) {
    if (i < 0 || i >= n) throw std::invalid_argument("Form: index out of range");
    return i;
  }

  // For diagnostics: "(1+0i) phi1^phibar2 + ..."
  std::string str() const;

 private:
  int n_;
  std::map<Mask, cplx> terms_;
};

namespace detail {

// Sign of merging two disjoint sorted monomials a, b into one sorted
// monomial: counts the transpositions, i.e. pairs (x in a, y in b) with
// y < x.
inline int merge_sign(Form::Mask a, Form::Mask b) {
  int inversions = 0;
  while (a) {
    int bit = std::countr_zero(a);
    inversions += std::popcount(b & ((Form::Mask{1} << bit) - 1));
    a &= a - 1;
  }
  return (inversions & 1) ? -1 : 1;
}

}  // namespace detail

inline Form wedge(const Form& a, const Form& b) {
  a.require_same_n(b);
  Form out(a.n());
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      if (ma & mb) continue;
      out.add_term(ma | mb, ca * cb * static_cast<double>(detail::merge_sign(ma, mb)));
    }
  }
  return out;
}

// Complex conjugation: swaps phi_i <-> phibar_i on each monomial and
// conjugates the coefficient.  A (p,q) monomial picks up the reordering
// sign (-1)^(pq).
inline Form conj(const Form& f) {
  int n = f.n();
  Form::Mask low = (n == 0) ? 0 : ((Form::Mask{1} << n) - 1);
  Form out(n);
  for (const auto& [m, c] : f.terms()) {
    int p = std::popcount(m & low);
    int q = std::popcount(m >> n);
    Form::Mask swapped = ((m & low) << n) | (m >> n);
    double sign = ((p * q) & 1) ? -1.0 : 1.0;
    out.add_term(swapped, std::conj(c) * sign);
  }
  return out;
}

// Terms of holomorphic degree p and antiholomorphic degree q.
inline Form bidegree_part(const Form& f, int p, int q) {
  int n = f.n();
  Form::Mask low = (n == 0) ? 0 : ((Form::Mask{1} << n) - 1);
  Form out(n);
  for (const auto& [m, c] : f.terms()) {
    if (std::popcount(m & low) == p && std::popcount(m >> n) == q)
      out.add_term(m, c);
  }
  return out;
}

inline double max_abs_diff(const Form& a, const Form& b) {
  return (a - b).max_abs();
}

inline bool approx_equal(const Form& a, const Form& b, double tol) {
  return max_abs_diff(a, b) <= tol;
}

inline std::string Form::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.real() << (c.imag() < 0 ? "" : "+") << c.imag() << "i)";
    Mask mm = m;
    bool leading = true;
    while (mm) {
      int bit = std::countr_zero(mm);
      os << (leading ? " " : "^");
      leading = false;
      if (bit < n_)
        os << "phi" << bit + 1;
      else
        os << "phibar" << bit - n_ + 1;
      mm &= mm - 1;
    }
  }
  return os.str();
}

}  // namespace hermitia
