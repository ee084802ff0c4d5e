#include "cbop/cdkernel.hpp"

namespace cbop::cdkernel {

using recurrence::Recurrence;

template <class T>
CommutatorBlock<T> commutator_block(const Recurrence<T>& r, std::size_t n) {
  if (n < 1 || n + 2 > r.order) fail(ErrorKind::OrderUnderflow, "commutator block needs 1 <= n <= order-2");
  const auto& Ah = r.Ahat;
  CommutatorBlock<T> blk;
  blk.n = n;
  for (auto& row : blk.constant) row.fill(T(0));
  blk.constant[0][2] = Ah(n - 1, n);
  if (n >= 2) blk.constant[1][0] = -Ah(n, n - 2);
  blk.constant[1][1] = -Ah(n, n - 1);
  blk.constant[2][1] = -Ah(n + 1, n - 1);
  blk.s_coeff = T(1) / r.eta[n];
  return blk;
}

template <class T>
Matrix<T> dense_commutator(const Recurrence<T>& r, std::size_t n, const T& s) {
  const std::size_t N = r.order;
  Matrix<T> M = r.Y.transpose();
  for (std::size_t i = 0; i < N; ++i) M(i, i) += s;
  M = M * r.Lhat;
  Matrix<T> C(N, N);
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) {
      int pj = j < n ? 1 : 0, pi = i < n ? 1 : 0;
      C(i, j) = M(i, j) * T(pj - pi);
    }
  return C;
}

template <class T>
T block_vs_dense_residual(const Recurrence<T>& r, std::size_t n, const T& s) {
  CommutatorBlock<T> blk = commutator_block(r, n);
  Matrix<T> C = dense_commutator(r, n, s);
  const std::size_t N = r.order;
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t c = 0; c < 3; ++c) {
      long j = blk.col(c);
      if (j < 0) continue;
      C(blk.row(a), static_cast<std::size_t>(j)) -= blk.entry(a, c, s);
    }
  T worst(0);
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j + 1 < N; ++j) worst = max_abs_entry(worst, C(i, j));
  return worst;
}

template <class T>
T cd_residual_plain(const Bundle<T>& b, std::size_t n, const T& x, const T& y) {
  CommutatorBlock<T> blk = commutator_block(b.rec(), n);
  std::vector<T> q = b.template q_vec<T>(0, y);
  std::vector<T> p = b.template p_vec<T>(0, x);
  std::vector<T> ph = b.template phat_vec<T>(0, x);
  T lhs(0);
  for (std::size_t j = 0; j < n; ++j) lhs += q[j] * p[j];
  lhs *= x + y;
  return lhs - block_pairing(blk, q, ph, T(-y));
}

template <class T>
T cd_residual_hat(const Bundle<T>& b, std::size_t n, const T& x, const T& y) {
  CommutatorBlock<T> blk = commutator_block(b.rec(), n);
  std::vector<T> q = b.template q_vec<T>(0, y);
  std::vector<T> qh = b.template qhat_vec<T>(0, y);
  std::vector<T> ph = b.template phat_vec<T>(0, x);
  T lhs(0);
  for (std::size_t j = 0; j < n; ++j) lhs += qh[j] * ph[j];
  lhs *= x + y;
  return lhs - block_pairing(blk, q, ph, x);
}

#define CBOP_INSTANTIATE(T)                                                              \
  template CommutatorBlock<T> commutator_block(const Recurrence<T>&, std::size_t);      \
  template Matrix<T> dense_commutator(const Recurrence<T>&, std::size_t, const T&);     \
  template T block_vs_dense_residual(const Recurrence<T>&, std::size_t, const T&);      \
  template T cd_residual_plain(const Bundle<T>&, std::size_t, const T&, const T&);      \
  template T cd_residual_hat(const Bundle<T>&, std::size_t, const T&, const T&);

CBOP_INSTANTIATE(Rational)
CBOP_INSTANTIATE(Real)

}  // namespace cbop::cdkernel
