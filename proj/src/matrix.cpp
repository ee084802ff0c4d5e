#include "cbop/matrix.hpp"

#include <utility>

namespace cbop {

namespace {

Rational det_impl(Matrix<Rational> m) {
  const std::size_t n = m.rows();
  if (n == 0) return Rational(1);
  int sign = 1;
  Rational prev(1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (is_zero(m(k, k))) {
      std::size_t p = k + 1;
      while (p < n && is_zero(m(p, k))) ++p;
      if (p == n) return Rational(0);
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
      m(i, k) = 0;
    }
    prev = m(k, k);
  }
  Rational d = m(n - 1, n - 1);
  check_precision(d, "determinant");
  return sign > 0 ? d : Rational(-d);
}

Real det_impl(Matrix<Real> m) {
  const std::size_t n = m.rows();
  Real det = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (abs_of(m(i, k)) > abs_of(m(p, k))) p = i;
    if (m(p, k) == 0) return 0;
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(p, j));
      det = -det;
    }
    det *= m(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      Real f = m(i, k) / m(k, k);
      for (std::size_t j = k + 1; j < n; ++j) m(i, j) -= f * m(k, j);
    }
  }
  return det;
}

}  // namespace

template <class T>
T determinant(Matrix<T> m) {
  return det_impl(std::move(m));
}

template <>
std::vector<Rational> leading_principal_minors(const Matrix<Rational>& a, std::size_t n) {
  // Bareiss without pivoting: the k-th pivot is the k-th leading minor.
  std::vector<Rational> out;
  Matrix<Rational> m = a.leading(n);
  Rational prev(1);
  for (std::size_t k = 0; k < n; ++k) {
    if (is_zero(m(k, k))) {
      for (std::size_t r = k + 1; r <= n; ++r) out.push_back(determinant(a.leading(r)));
      return out;
    }
    out.push_back(m(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
      m(i, k) = 0;
    }
    prev = m(k, k);
    check_precision(prev, "leading minors");
  }
  return out;
}

template <>
std::vector<Real> leading_principal_minors(const Matrix<Real>& a, std::size_t n) {
  std::vector<Real> out;
  for (std::size_t r = 1; r <= n; ++r) out.push_back(determinant(a.leading(r)));
  return out;
}

template <class T>
T max_abs(const Matrix<T>& m) {
  T best(0);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) best = max_abs_entry(best, m(i, j));
  return best;
}

template <class T>
std::vector<T> solve_linear(Matrix<T> a, std::vector<T> rhs) {
  const std::size_t n = a.rows();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i) {
      if constexpr (is_exact_v<T>) {
        if (is_zero(a(p, k)) && !is_zero(a(i, k))) p = i;
      } else {
        if (abs_of(a(i, k)) > abs_of(a(p, k))) p = i;
      }
    }
    if (is_zero(a(p, k))) fail(ErrorKind::Degenerate, "singular linear system");
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      std::swap(rhs[k], rhs[p]);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      if (is_zero(a(i, k))) continue;
      T f = a(i, k) / a(k, k);
      for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
      rhs[i] -= f * rhs[k];
    }
  }
  std::vector<T> x(n, T(0));
  for (std::size_t k = n; k-- > 0;) {
    T s = rhs[k];
    for (std::size_t j = k + 1; j < n; ++j) s -= a(k, j) * x[j];
    x[k] = s / a(k, k);
  }
  return x;
}

template std::vector<Rational> solve_linear(Matrix<Rational>, std::vector<Rational>);
template std::vector<Real> solve_linear(Matrix<Real>, std::vector<Real>);
template Rational determinant(Matrix<Rational>);
template Real determinant(Matrix<Real>);
template Rational max_abs(const Matrix<Rational>&);
template Real max_abs(const Matrix<Real>&);

}  // namespace cbop
