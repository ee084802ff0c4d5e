#include "cbop/recurrence.hpp"

#include <functional>

namespace cbop::recurrence {

using bimoment::BimomentMatrix;
using bop::Averages;
using bop::PolynomialFamily;

template <class T>
T BandOperator<T>::support_violation() const {
  T worst(0);
  for (std::size_t i = 0; i < valid_rows; ++i)
    for (std::size_t j = 0; j < valid_cols; ++j) {
      int d = static_cast<int>(j) - static_cast<int>(i);
      if (d < lo || d > hi) worst = max_abs_entry(worst, m(i, j));
    }
  return worst;
}

namespace {

template <class T>
Poly<T> times_t(const Poly<T>& p) {
  Poly<T> out(p.size() + 1, T(0));
  for (std::size_t k = 0; k < p.size(); ++k) out[k + 1] = p[k];
  return out;
}

template <class T>
T window_max(const Matrix<T>& m, std::size_t rows, std::size_t cols) {
  T worst(0);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) worst = max_abs_entry(worst, m(i, j));
  return worst;
}

}  // namespace

template <class T>
std::pair<Matrix<T>, Matrix<T>> build_XY(const PolynomialFamily<T>& f, const BimomentMatrix<T>& I) {
  const std::size_t n = f.order;
  if (I.rows() < n + 1 || I.cols() < n + 1) fail(ErrorKind::Input, "recurrence needs bimoments up to the order");
  Matrix<T> X(n, n), Y(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    Poly<T> xp = times_t(f.p[i]);
    Poly<T> yq = times_t(f.q[i]);
    for (std::size_t j = 0; j < n; ++j) {
      X(i, j) = bop::pairing(I, xp, f.q[j]) / f.h[j];
      Y(i, j) = bop::pairing(I, f.p[j], yq) / f.h[j];
    }
  }
  return {std::move(X), std::move(Y)};
}

template <class T>
Matrix<T> rank_one_XY_residual(const Matrix<T>& X, const Matrix<T>& Ym, const PolynomialFamily<T>& f,
                               const Averages<T>& avg) {
  const std::size_t n = X.rows();
  Matrix<T> r(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      r(i, j) = X(i, j) + Ym(j, i) * f.h[i] / f.h[j] - avg.pi[i] * avg.eta[j] / f.h[j];
  return r;
}

template <class T>
std::pair<BandOperator<T>, BandOperator<T>> build_A_Ahat(const Recurrence<T>& r) {
  const std::size_t n = r.order;
  BandOperator<T> A{"A", r.L * r.X, -1, 2, n - 1, n};
  BandOperator<T> Ahat{"Ahat", r.X * r.Lhat, -2, 1, n, n - 1};
  return {std::move(A), std::move(Ahat)};
}

template <class T>
Recurrence<T> build_recurrence(const PolynomialFamily<T>& f, const Averages<T>& avg, const BimomentMatrix<T>& I) {
  const std::size_t n = f.order;
  if (n < 2) fail(ErrorKind::OrderUnderflow, "recurrence needs order >= 2");
  Recurrence<T> r;
  r.order = n;
  auto [X, Ym] = build_XY(f, I);
  r.X = std::move(X);
  r.Ymonic = std::move(Ym);
  r.h = f.h;
  r.pi = avg.pi;
  r.Y = Matrix<T>(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    r.eta.push_back(avg.eta[i] / f.h[i]);
    for (std::size_t j = 0; j < n; ++j) r.Y(i, j) = r.Ymonic(i, j) * f.h[j] / f.h[i];
  }

  T hv(0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 2; j < n; ++j) {
      hv = max_abs_entry(hv, r.X(i, j));
      hv = max_abs_entry(hv, r.Y(i, j));
    }
  r.hessenberg_violation = hv;
  if constexpr (is_exact_v<T>)
    if (!is_zero(hv)) fail(ErrorKind::TheoryViolation, "recurrence matrices are not lower Hessenberg");

  r.L = Matrix<T>(n, n);
  r.Lhat = Matrix<T>(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    r.L(i, i) = T(-1) / r.pi[i];
    r.Lhat(i, i) = T(-1) / r.eta[i];
    if (i + 1 < n) {
      r.L(i, i + 1) = T(1) / r.pi[i + 1];
      r.Lhat(i + 1, i) = T(1) / r.eta[i + 1];
    }
  }
  auto [A, Ahat] = build_A_Ahat(r);
  r.A = std::move(A);
  r.Ahat = std::move(Ahat);
  r.B = BandOperator<T>{"B", r.Y * r.L.transpose(), -2, 1, n, n - 1};
  r.Bhat = BandOperator<T>{"Bhat", r.Lhat.transpose() * r.Y, -1, 2, n - 1, n};
  return r;
}

template <class T>
std::pair<T, T> four_term_residual(const PolynomialFamily<T>& f, const Recurrence<T>& r, std::size_t n, const T& x,
                                   const T& y) {
  if (n < 1 || n + 2 > r.order) fail(ErrorKind::OrderUnderflow, "four-term recurrence needs 1 <= n <= order-2");
  T lhs_p = x * (horner(f.p[n], x) / r.pi[n] - horner(f.p[n - 1], x) / r.pi[n - 1]);
  T lhs_q = y * (horner(f.q[n], y) / (f.h[n] * r.eta[n]) - horner(f.q[n - 1], y) / (f.h[n - 1] * r.eta[n - 1]));
  T rhs_p(0), rhs_q(0);
  std::size_t k0 = n >= 2 ? n - 2 : 0;
  for (std::size_t k = k0; k <= n + 1; ++k) {
    rhs_p += r.A(n - 1, k) * horner(f.p[k], x);
    rhs_q += r.Bhat(n - 1, k) * horner(f.q[k], y) / f.h[k];
  }
  return {lhs_p - rhs_p, lhs_q - rhs_q};
}

template <class T>
OperatorChecks<T> operator_checks(const Recurrence<T>& r) {
  const std::size_t n = r.order;
  OperatorChecks<T> c;
  Matrix<T> ro(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) ro(i, j) = r.X(i, j) + r.Y(j, i) - r.pi[i] * r.eta[j];
  c.rank_one = max_abs(ro);
  c.b_plus_at = window_max(r.B.m + r.A.m.transpose(), n, n - 1);
  c.bhat_plus_ahat_t = window_max(r.Bhat.m + r.Ahat.m.transpose(), n - 1, n);
  Matrix<T> Yt = r.Y.transpose();
  c.lx_plus_lyt = window_max(r.L * r.X + r.L * Yt, n - 1, n);
  c.xlhat_plus_ytlhat = window_max(r.X * r.Lhat + Yt * r.Lhat, n, n - 1);
  c.band_A = r.A.support_violation();
  c.band_Ahat = r.Ahat.support_violation();
  c.band_B = r.B.support_violation();
  c.band_Bhat = r.Bhat.support_violation();
  c.hessenberg = r.hessenberg_violation;
  return c;
}

template <class T>
HattedFamily<T> build_hatted(const PolynomialFamily<T>& f, const Recurrence<T>& r) {
  HattedFamily<T> hf;
  Poly<T> acc;
  for (std::size_t n = 0; n < f.order; ++n) {
    acc = poly_axpy(acc, T(-r.eta[n]), f.p[n]);
    hf.phat.push_back(acc);
  }
  for (std::size_t n = 0; n + 1 < f.order; ++n) {
    Poly<T> q = poly_scale(f.q[n], T(T(-1) / (f.h[n] * r.eta[n])));
    q = poly_axpy(q, T(T(1) / (f.h[n + 1] * r.eta[n + 1])), f.q[n + 1]);
    hf.qhat.push_back(std::move(q));
  }
  return hf;
}

template <class T>
HattedChecks<T> verify_hatted(const HattedFamily<T>& hf, const PolynomialFamily<T>& f, const Recurrence<T>& r,
                              const BimomentMatrix<T>& I, const std::vector<T>& bm) {
  HattedChecks<T> c{true, T(0), T(0), T(0), T(0)};
  for (std::size_t n = 0; n < hf.phat.size(); ++n)
    if (hf.phat[n].size() != n + 1 || is_zero(hf.phat[n][n])) c.degrees_ok = false;
  for (std::size_t n = 0; n < hf.qhat.size(); ++n) {
    const Poly<T>& q = hf.qhat[n];
    if (q.size() != n + 2 || is_zero(q[n + 1])) c.degrees_ok = false;
    T mean(0);
    for (std::size_t k = 0; k < q.size(); ++k) mean += q[k] * bm[k];
    c.qhat_mean = max_abs_entry(c.qhat_mean, mean);
    c.leading = max_abs_entry(c.leading, T(q[n + 1] - T(1) / (r.eta[n + 1] * f.h[n + 1])));
  }
  for (std::size_t i = 0; i < hf.phat.size(); ++i)
    for (std::size_t j = 0; j < hf.qhat.size(); ++j) {
      T v = bop::pairing(I, hf.phat[i], hf.qhat[j]);
      if (i == j) v -= T(1);
      c.biorthogonal = max_abs_entry(c.biorthogonal, v);
    }
  for (std::size_t n = 0; n < hf.phat.size(); ++n) {
    Poly<T> one{T(1)};
    T base = bop::pairing(I, hf.phat[n], one);
    for (std::size_t j = 0; j <= n; ++j) {
      Poly<T> yj(j + 1, T(0));
      yj[j] = T(1);
      T v = bm[0] * bop::pairing(I, hf.phat[n], yj) - bm[j] * base;
      c.phat_moments = max_abs_entry(c.phat_moments, v);
    }
  }
  return c;
}

template <class T>
std::pair<Poly<T>, Poly<T>> hatted_determinantal_oracle(const BimomentMatrix<T>& I, const std::vector<T>& bm,
                                                        const Averages<T>& avg, std::size_t n) {
  if (n + 2 > avg.eta.size() || n + 2 > I.rows() || n + 2 > I.cols() || bm.size() < n + 2)
    fail(ErrorKind::Input, "hatted oracle: order too small");
  const std::size_t m = n + 2;
  T Dn = determinant(I.entries.leading(n));
  T Dn1 = determinant(I.entries.leading(n + 1));

  // q^_n: rows I_{i,0..n+1} (i < n), beta_0..beta_{n+1}, then the monomial row
  Matrix<T> Q(m - 1, m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) Q(i, j) = I(i, j);
  for (std::size_t j = 0; j < m; ++j) Q(n, j) = bm[j];
  Poly<T> qhat(m);
  T qden = avg.eta[n] * avg.eta[n + 1] * Dn;
  for (std::size_t j = 0; j < m; ++j) {
    std::vector<std::size_t> rs, cs;
    for (std::size_t k = 0; k + 1 < m; ++k) rs.push_back(k);
    for (std::size_t k = 0; k < m; ++k)
      if (k != j) cs.push_back(k);
    T sign(((m - 1) + j) % 2 == 0 ? 1 : -1);
    qhat[j] = sign * determinant(Q.select(rs, cs)) / qden;
  }

  // p^_n: rows [I_{i,0..n} | x^i] (i <= n) and [beta_0..beta_n | 0]
  Matrix<T> P(m, m - 1);
  for (std::size_t i = 0; i <= n; ++i)
    for (std::size_t j = 0; j <= n; ++j) P(i, j) = I(i, j);
  for (std::size_t j = 0; j <= n; ++j) P(n + 1, j) = bm[j];
  Poly<T> phat(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    std::vector<std::size_t> rs, cs;
    for (std::size_t k = 0; k < m; ++k)
      if (k != i) rs.push_back(k);
    for (std::size_t k = 0; k + 1 < m; ++k) cs.push_back(k);
    T sign((i + (m - 1)) % 2 == 0 ? 1 : -1);
    phat[i] = sign * determinant(P.select(rs, cs)) / Dn1;
  }
  return {std::move(qhat), std::move(phat)};
}

template <class T>
TnCertificate<T> tn_oscillatory_certificate(const Matrix<T>& m, std::size_t kmax) {
  TnCertificate<T> c;
  c.kmax = kmax;
  const std::size_t n = m.rows();
  bool first = true;
  T tol(0);
  if constexpr (!is_exact_v<T>) tol = T(1e-13L) * (T(1) + max_abs(m));
  for (std::size_t k = 1; k <= kmax && k <= n; ++k) {
    std::vector<std::size_t> rs(k), cs(k);
    T scale = T(1);
    if constexpr (!is_exact_v<T>)
      for (std::size_t e = 0; e < k; ++e) scale *= (T(1) + max_abs(m));
    std::function<void(std::size_t, std::size_t, std::vector<std::size_t>&, const std::function<void()>&)> pick =
        [&](std::size_t pos, std::size_t start, std::vector<std::size_t>& idx, const std::function<void()>& done) {
          if (pos == idx.size()) {
            done();
            return;
          }
          for (std::size_t v = start; v + (idx.size() - pos) <= n; ++v) {
            idx[pos] = v;
            pick(pos + 1, v + 1, idx, done);
          }
        };
    pick(0, 0, rs, [&] {
      pick(0, 0, cs, [&] {
        T d = determinant(m.select(rs, cs));
        ++c.checked;
        if (first || d < c.min_minor) {
          c.min_minor = d;
          first = false;
        }
        bool negative;
        if constexpr (is_exact_v<T>)
          negative = d < 0;
        else
          negative = d < -T(1e-9L) * scale;  // X itself is only good to ~1e-10 in float
        if (negative && !c.violation) {
          c.totally_nonnegative = false;
          c.violation = std::make_pair(rs, cs);
        }
      });
    });
  }
  for (std::size_t k = 1; k <= n; ++k) {
    T d = determinant(m.leading(k));
    if constexpr (is_exact_v<T>) {
      if (is_zero(d)) c.invertible = false;
    } else {
      if (abs_of(d) <= tol * tol) c.invertible = false;
    }
  }
  for (std::size_t i = 0; i + 1 < n; ++i)
    if (!(m(i + 1, i) > 0) || !(m(i, i + 1) > 0)) c.positive_off_diagonals = false;
  c.oscillatory = c.totally_nonnegative && c.invertible && c.positive_off_diagonals;
  return c;
}

#define CBOP_INSTANTIATE(T)                                                                                        \
  template struct BandOperator<T>;                                                                                \
  template std::pair<Matrix<T>, Matrix<T>> build_XY(const PolynomialFamily<T>&, const BimomentMatrix<T>&);        \
  template Matrix<T> rank_one_XY_residual(const Matrix<T>&, const Matrix<T>&, const PolynomialFamily<T>&,         \
                                          const Averages<T>&);                                                    \
  template Recurrence<T> build_recurrence(const PolynomialFamily<T>&, const Averages<T>&,                         \
                                          const BimomentMatrix<T>&);                                              \
  template std::pair<BandOperator<T>, BandOperator<T>> build_A_Ahat(const Recurrence<T>&);                        \
  template std::pair<T, T> four_term_residual(const PolynomialFamily<T>&, const Recurrence<T>&, std::size_t,      \
                                              const T&, const T&);                                                \
  template OperatorChecks<T> operator_checks(const Recurrence<T>&);                                               \
  template HattedFamily<T> build_hatted(const PolynomialFamily<T>&, const Recurrence<T>&);                        \
  template HattedChecks<T> verify_hatted(const HattedFamily<T>&, const PolynomialFamily<T>&,                      \
                                         const Recurrence<T>&, const BimomentMatrix<T>&, const std::vector<T>&);  \
  template std::pair<Poly<T>, Poly<T>> hatted_determinantal_oracle(const BimomentMatrix<T>&,                      \
                                                                   const std::vector<T>&, const Averages<T>&,     \
                                                                   std::size_t);                                  \
  template TnCertificate<T> tn_oscillatory_certificate(const Matrix<T>&, std::size_t);

CBOP_INSTANTIATE(Rational)
CBOP_INSTANTIATE(Real)

}  // namespace cbop::recurrence
