#include "cbop/bop.hpp"

#include <cmath>

namespace cbop::bop {

using bimoment::BimomentMatrix;

namespace {

// Unit lower E with E*M upper triangular; returns (E, pivots).
template <class T>
std::pair<Matrix<T>, std::vector<T>> eliminate(Matrix<T> m, const char* side) {
  const std::size_t n = m.rows();
  Matrix<T> e = Matrix<T>::identity(n);
  std::vector<T> piv;
  for (std::size_t k = 0; k < n; ++k) {
    if (is_zero(m(k, k)))
      fail(ErrorKind::Degenerate, std::string("bimoment matrix is degenerate: D_") + std::to_string(k + 1) +
                                      " = 0 (" + side + "-side elimination)");
    piv.push_back(m(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      if (is_zero(m(i, k))) continue;
      T f = m(i, k) / m(k, k);
      for (std::size_t j = k; j < n; ++j) m(i, j) -= f * m(k, j);
      for (std::size_t j = 0; j <= k; ++j) e(i, j) -= f * e(k, j);
    }
  }
  return {std::move(e), std::move(piv)};
}

template <class T>
std::vector<Poly<T>> rows_as_polys(const Matrix<T>& e) {
  std::vector<Poly<T>> out;
  for (std::size_t i = 0; i < e.rows(); ++i) {
    Poly<T> p(i + 1);
    for (std::size_t j = 0; j <= i; ++j) p[j] = e(i, j);
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace

template <class T>
PolynomialFamily<T> build_family(const BimomentMatrix<T>& I, std::size_t order) {
  if (order < 1 || order > I.rows() || order > I.cols())
    fail(ErrorKind::Input, "family order must be between 1 and the bimoment table size");
  Matrix<T> lead = I.entries.leading(order);
  auto [ep, hp] = eliminate(lead, "p");
  auto [eq, hq] = eliminate(lead.transpose(), "q");
  PolynomialFamily<T> f;
  f.order = order;
  f.p = rows_as_polys(ep);
  f.q = rows_as_polys(eq);
  f.h = hp;
  f.D.push_back(T(1));
  for (std::size_t k = 0; k < order; ++k) {
    if constexpr (is_exact_v<T>) {
      if (I.kernel == bimoment::KernelTag::Cauchy && hp[k] < 0)
        fail(ErrorKind::TheoryViolation, "norm h_" + std::to_string(k) + " is negative");
      check_precision(hp[k], "family norms");
    }
    f.D.push_back(f.D.back() * hp[k]);
  }
  return f;
}

template <class T>
Averages<T> averages(const PolynomialFamily<T>& f, const std::vector<T>& am, const std::vector<T>& bm) {
  if (am.size() < f.order || bm.size() < f.order) fail(ErrorKind::Input, "averages: not enough moments");
  Averages<T> avg;
  for (std::size_t n = 0; n < f.order; ++n) {
    T pi(0), eta(0);
    for (std::size_t k = 0; k <= n; ++k) {
      pi += f.p[n][k] * am[k];
      eta += f.q[n][k] * bm[k];
    }
    if constexpr (is_exact_v<T>) {
      if (!(pi > 0))
        fail(ErrorKind::TheoryViolation, "average pi_" + std::to_string(n) + " = " + format_scalar(pi) + " <= 0");
      if (!(eta > 0))
        fail(ErrorKind::TheoryViolation, "average eta_" + std::to_string(n) + " = " + format_scalar(eta) + " <= 0");
    } else {
      if (!(pi != 0) || !(eta != 0))
        fail(ErrorKind::Numeric, "vanishing average at degree " + std::to_string(n));
    }
    avg.pi.push_back(pi);
    avg.eta.push_back(eta);
  }
  return avg;
}

template <class T>
T pairing(const BimomentMatrix<T>& I, const Poly<T>& a, const Poly<T>& b) {
  if (a.size() > I.rows() || b.size() > I.cols()) fail(ErrorKind::Input, "pairing: degree exceeds bimoment table");
  T s(0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (is_zero(a[i])) continue;
    T row(0);
    for (std::size_t j = 0; j < b.size(); ++j) row += b[j] * I(i, j);
    s += a[i] * row;
  }
  return s;
}

template <class T>
T biorthogonality_residual(const PolynomialFamily<T>& f, const BimomentMatrix<T>& I) {
  T worst(0);
  for (std::size_t i = 0; i < f.order; ++i)
    for (std::size_t j = 0; j < f.order; ++j) {
      T v = pairing(I, f.p[i], f.q[j]);
      if (i == j) v -= f.h[i];
      worst = max_abs_entry(worst, v);
    }
  return worst;
}

template <class T>
NormalizedFamily normalize(const PolynomialFamily<T>& f, const Averages<T>& avg) {
  NormalizedFamily nf;
  nf.order = f.order;
  for (std::size_t n = 0; n < f.order; ++n) {
    Real c = std::sqrt(to_real(f.h[n]));
    nf.c.push_back(c);
    nf.pi.push_back(to_real(avg.pi[n]) / c);
    nf.eta.push_back(to_real(avg.eta[n]) / c);
    Poly<Real> p, q;
    for (const auto& v : f.p[n]) p.push_back(to_real(v) / c);
    for (const auto& v : f.q[n]) q.push_back(to_real(v) / c);
    nf.p.push_back(std::move(p));
    nf.q.push_back(std::move(q));
  }
  return nf;
}

template <class T>
std::pair<Poly<T>, Poly<T>> determinantal_oracle(const BimomentMatrix<T>& I, std::size_t n) {
  if (n + 1 > I.rows() || n + 1 > I.cols()) fail(ErrorKind::Input, "determinantal oracle: table too small");
  T Dn = determinant(I.entries.leading(n));
  if (is_zero(Dn)) fail(ErrorKind::Degenerate, "determinantal oracle: D_" + std::to_string(n) + " = 0");
  std::vector<std::size_t> cols_lead, rows_lead;
  for (std::size_t k = 0; k < n; ++k) {
    cols_lead.push_back(k);
    rows_lead.push_back(k);
  }
  Poly<T> p(n + 1), q(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    std::vector<std::size_t> rs, cs;
    for (std::size_t k = 0; k <= n; ++k)
      if (k != i) {
        rs.push_back(k);
        cs.push_back(k);
      }
    T sign((i + n) % 2 == 0 ? 1 : -1);
    p[i] = sign * determinant(I.entries.select(rs, cols_lead)) / Dn;
    q[i] = sign * determinant(I.entries.select(rows_lead, cs)) / Dn;
  }
  return {std::move(p), std::move(q)};
}

#define CBOP_INSTANTIATE(T)                                                                                   \
  template PolynomialFamily<T> build_family(const BimomentMatrix<T>&, std::size_t);                          \
  template Averages<T> averages(const PolynomialFamily<T>&, const std::vector<T>&, const std::vector<T>&);   \
  template T pairing(const BimomentMatrix<T>&, const Poly<T>&, const Poly<T>&);                              \
  template T biorthogonality_residual(const PolynomialFamily<T>&, const BimomentMatrix<T>&);                 \
  template NormalizedFamily normalize(const PolynomialFamily<T>&, const Averages<T>&);                       \
  template std::pair<Poly<T>, Poly<T>> determinantal_oracle(const BimomentMatrix<T>&, std::size_t);

CBOP_INSTANTIATE(Rational)
CBOP_INSTANTIATE(Real)

}  // namespace cbop::bop
