#pragma once

#include <vector>

#include "cbop/bundle.hpp"

namespace cbop::zeros {

using bop::Side;

struct ZeroReport {
  Side side = Side::P;
  std::size_t degree = 0;
  std::vector<Real> zeros;      // eigenvalues of the truncated recurrence matrix, ascending
  std::vector<Real> companion;  // companion-matrix roots of the same polynomial, ascending
  Real companion_agreement = 0; // max |zeros - companion|
  Real max_imag = 0;
  Real min_gap = 0;
  bool coincident = false;      // two zeros closer than 1e-12 of the hull span
  bool real = true;
  bool positive = true;
  bool in_hull = true;
  bool certified = false;       // exact sign alternation proves simple real zeros in the hull
};

/// Zeros of p~_n (side P, from X~[n-1]) or q~_n (side Q, from Y~[n-1]).
template <class T>
ZeroReport zeros_of(const Bundle<T>& b, Side side, std::size_t n);

/// Strict interlacing of sorted zeros: lower has one fewer entry than upper.
bool interlacing_check(const std::vector<Real>& upper, const std::vector<Real>& lower);

/// det(t Id - M[n-1]) - poly_n(t), M = X~ or Y~.
template <class T>
T charpoly_identity_residual(const Bundle<T>& b, Side side, std::size_t n, const T& t);

/// Exact sign alternation of the polynomial across the hull endpoints and
/// rational separators placed between consecutive float zeros.
bool exact_sign_certificate(const Poly<Rational>& poly, const std::vector<Real>& zeros, const Rational& lo,
                            const Rational& hi);

}  // namespace cbop::zeros
