#pragma once

#include <utility>
#include <vector>

#include "cbop/bimoment.hpp"
#include "cbop/poly.hpp"

namespace cbop::bop {

enum class Side { P, Q };

/// Monic biorthogonal pair p~_n(x), q~_n(y), n = 0..order-1, with
/// <p~_i | q~_j> = delta_ij h_i.
template <class T>
struct PolynomialFamily {
  std::size_t order = 0;
  std::vector<Poly<T>> p, q;
  std::vector<T> h;  // h_n = D_{n+1}/D_n
  std::vector<T> D;  // D_0 = 1, ..., D_order

  const Poly<T>& poly(Side s, std::size_t n) const { return s == Side::P ? p[n] : q[n]; }
};

/// LDU factorization of the leading order x order block of I.
/// Raises ErrorKind::Degenerate if a leading minor vanishes.
template <class T>
PolynomialFamily<T> build_family(const bimoment::BimomentMatrix<T>& I, std::size_t order);

/// pi~_n = int p~_n dalpha, eta~_n = int q~_n dbeta.
template <class T>
struct Averages {
  std::vector<T> pi, eta;
};

/// Exact mode raises ErrorKind::TheoryViolation on a non-positive average.
template <class T>
Averages<T> averages(const PolynomialFamily<T>& f, const std::vector<T>& alpha_moments,
                     const std::vector<T>& beta_moments);

template <class T, class P>
P evaluate_monic(const PolynomialFamily<T>& f, Side side, std::size_t n, const P& point) {
  return horner(f.poly(side, n), point);
}

/// <a|b> = sum a_i b_j I_ij.
template <class T>
T pairing(const bimoment::BimomentMatrix<T>& I, const Poly<T>& a, const Poly<T>& b);

/// max |<p~_i|q~_j> - delta_ij h_i| over the family.
template <class T>
T biorthogonality_residual(const PolynomialFamily<T>& f, const bimoment::BimomentMatrix<T>& I);

/// Float layer: p_n = p~_n / c_n, q_n = q~_n / c_n with c_n = sqrt(h_n).
struct NormalizedFamily {
  std::size_t order = 0;
  std::vector<Poly<Real>> p, q;
  std::vector<Real> c, pi, eta;
};

template <class T>
NormalizedFamily normalize(const PolynomialFamily<T>& f, const Averages<T>& avg);

template <class P>
P evaluate_normalized(const NormalizedFamily& f, Side side, std::size_t n, const P& point) {
  return horner(side == Side::P ? f.p[n] : f.q[n], point);
}

/// Bordered-determinant expressions for p~_n and q~_n divided by D_n.
template <class T>
std::pair<Poly<T>, Poly<T>> determinantal_oracle(const bimoment::BimomentMatrix<T>& I, std::size_t n);

}  // namespace cbop::bop
