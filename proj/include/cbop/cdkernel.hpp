#pragma once

#include <array>

#include "cbop/bundle.hpp"

namespace cbop::cdkernel {

/// Non-zero part of A(s) = [(s - X) Lhat, Pi_n], Pi_n the projection on
/// indices < n. Rows n-1..n+1, columns n-2..n:
///
///   (n-1, n)   =  Ahat_{n-1,n}
///   (n,   n-2) = -Ahat_{n,n-2}
///   (n,   n-1) =  s/eta_n - Ahat_{n,n-1}
///   (n+1, n-1) = -Ahat_{n+1,n-1}
template <class T>
struct CommutatorBlock {
  std::size_t n = 0;
  std::array<std::array<T, 3>, 3> constant{};
  T s_coeff = T(0);  // multiplies s at local (1,1)

  std::size_t row(std::size_t r) const { return n - 1 + r; }
  /// Column index; local column 0 is n-2 and is absent for n = 1.
  long col(std::size_t c) const { return static_cast<long>(n) - 2 + static_cast<long>(c); }

  template <class P>
  P entry(std::size_t r, std::size_t c, const P& s) const {
    P v = Bundle<T>::template lift<P>(constant[r][c]);
    if (r == 1 && c == 1) v += Bundle<T>::template lift<P>(s_coeff) * s;
    return v;
  }
};

/// Requires 1 <= n <= order-2.
template <class T>
CommutatorBlock<T> commutator_block(const recurrence::Recurrence<T>& r, std::size_t n);

/// [(s Id + Y^T) Lhat, Pi_n] as a dense section; independent of X and Ahat.
template <class T>
Matrix<T> dense_commutator(const recurrence::Recurrence<T>& r, std::size_t n, const T& s);

/// max |dense - block| over rows 0..order-1, columns 0..order-2.
template <class T>
T block_vs_dense_residual(const recurrence::Recurrence<T>& r, std::size_t n, const T& s);

/// q^T(w) A(s) phat(z) restricted to the block, with the given vectors.
template <class T, class P>
P block_pairing(const CommutatorBlock<T>& blk, const std::vector<P>& q, const std::vector<P>& phat, const P& s) {
  P acc(0);
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 3; ++c) {
      long j = blk.col(c);
      if (j < 0) continue;
      acc += q[blk.row(r)] * blk.entry(r, c, s) * phat[static_cast<std::size_t>(j)];
    }
  return acc;
}

/// (x+y) sum_{j<n} q_j(y) p_j(x) - q^T(y) A(-y) phat(x).
template <class T>
T cd_residual_plain(const Bundle<T>& b, std::size_t n, const T& x, const T& y);

/// (x+y) sum_{j<n} q^_j(y) p^_j(x) - q^T(y) A(x) phat(x).
template <class T>
T cd_residual_hat(const Bundle<T>& b, std::size_t n, const T& x, const T& y);

}  // namespace cbop::cdkernel
