#include "cbop/bimoment.hpp"

#include <functional>

namespace cbop::bimoment {

using measure::DiscreteMeasure;

template <class T>
BimomentMatrix<T> compute_bimoments(const DiscreteMeasure<T>& alpha, const DiscreteMeasure<T>& beta,
                                    const Kernel<T>& kernel, std::size_t rows, std::size_t cols) {
  const std::size_t ma = alpha.size(), mb = beta.size();
  // t(a, j) = sum_b K(x_a, y_b) w_b y_b^j
  Matrix<T> t(ma, cols);
  for (std::size_t a = 0; a < ma; ++a) {
    const T x = alpha.point(a);
    for (std::size_t b = 0; b < mb; ++b) {
      const T y = beta.point(b);
      T term = kernel.eval(x, y) * beta.weight(b);
      for (std::size_t j = 0; j < cols; ++j) {
        t(a, j) += term;
        term *= y;
      }
    }
  }
  BimomentMatrix<T> I{Matrix<T>(rows, cols), kernel.tag};
  for (std::size_t a = 0; a < ma; ++a) {
    const T x = alpha.point(a);
    T xw = alpha.weight(a);
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j < cols; ++j) I.entries(i, j) += xw * t(a, j);
      xw *= x;
    }
  }
  if constexpr (is_exact_v<T>)
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) check_precision(I.entries(i, j), "bimoments");
  return I;
}

template <class T>
std::vector<T> leading_minors(const BimomentMatrix<T>& I, std::size_t n) {
  if (n > I.rows() || n > I.cols()) fail(ErrorKind::Input, "leading minor order exceeds bimoment table");
  std::vector<T> D = leading_principal_minors(I.entries, n);
  if constexpr (is_exact_v<T>) {
    if (I.kernel == KernelTag::Cauchy)
      for (std::size_t k = 0; k < D.size(); ++k)
        if (D[k] < 0)
          fail(ErrorKind::TheoryViolation,
               "leading minor D_" + std::to_string(k + 1) + " = " + format_scalar(D[k]) + " is negative");
  }
  return D;
}

template <class T>
TpCertificate<T> check_total_positivity(const Matrix<T>& m, std::size_t kmax) {
  TpCertificate<T> cert;
  cert.kmax = kmax;
  bool first = true;
  for (std::size_t k = 1; k <= kmax; ++k) {
    if (k > m.rows() || k > m.cols()) break;
    for (std::size_t r = 0; r + k <= m.rows(); ++r)
      for (std::size_t c = 0; c + k <= m.cols(); ++c) {
        T d = determinant(m.block(r, c, k, k));
        ++cert.checked;
        if (first || d < cert.min_minor) {
          cert.min_minor = d;
          cert.min_at = {k, r, c};
          first = false;
        }
        if (!(d > 0) && !cert.violation) {
          cert.pass = false;
          cert.violation = MinorIndex{k, r, c};
          cert.violation_value = d;
        }
      }
  }
  return cert;
}

template <class T>
Matrix<T> rank_one_shift_residual(const BimomentMatrix<T>& I, const std::vector<T>& am, const std::vector<T>& bm,
                                  std::size_t n) {
  if (I.kernel != KernelTag::Cauchy) fail(ErrorKind::Input, "rank-one shift identity requires the Cauchy kernel");
  if (n < 1 || n > I.rows() || n > I.cols() || am.size() + 1 < n || bm.size() + 1 < n)
    fail(ErrorKind::Input, "rank-one shift residual: table too small");
  Matrix<T> r(n - 1, n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i)
    for (std::size_t j = 0; j + 1 < n; ++j) r(i, j) = I(i + 1, j) + I(i, j + 1) - am[i] * bm[j];
  return r;
}

template <class T>
Matrix<T> shift_rows(const Matrix<T>& m) {
  return m.block(1, 0, m.rows() - 1, m.cols());
}

namespace {

template <class T>
T vandermonde(const std::vector<T>& v) {
  T d(1);
  for (std::size_t a = 0; a < v.size(); ++a)
    for (std::size_t b = a + 1; b < v.size(); ++b) d *= v[b] - v[a];
  return d;
}

void for_each_subset(std::size_t m, std::size_t n, const std::function<void(const std::vector<std::size_t>&)>& f) {
  std::vector<std::size_t> idx(n);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos, std::size_t start) {
    if (pos == n) {
      f(idx);
      return;
    }
    for (std::size_t k = start; k + (n - pos) <= m; ++k) {
      idx[pos] = k;
      rec(pos + 1, k + 1);
    }
  };
  rec(0, 0);
}

}  // namespace

template <class T>
T oracle_Dn(const DiscreteMeasure<T>& alpha, const DiscreteMeasure<T>& beta, std::size_t n) {
  if (n == 0) return T(1);
  T total(0);
  for_each_subset(alpha.size(), n, [&](const std::vector<std::size_t>& xi) {
    std::vector<T> xs;
    T wx(1);
    for (auto k : xi) {
      xs.push_back(alpha.point(k));
      wx *= alpha.weight(k);
    }
    T dx = vandermonde(xs);
    for_each_subset(beta.size(), n, [&](const std::vector<std::size_t>& yi) {
      std::vector<T> ys;
      T w = wx;
      for (auto k : yi) {
        ys.push_back(beta.point(k));
        w *= beta.weight(k);
      }
      T dy = vandermonde(ys);
      T denom(1);
      for (const auto& x : xs)
        for (const auto& y : ys) denom *= x + y;
      total += w * dx * dx * dy * dy / denom;
    });
  });
  return total;
}

template <class T>
T bordered_cauchy_residual(const std::vector<T>& xs, const std::vector<T>& ys) {
  const std::size_t n = ys.size();
  if (xs.size() != n + 1) fail(ErrorKind::Input, "bordered Cauchy identity needs n+1 x-values and n y-values");
  Matrix<T> m(n + 1, n + 1);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= n; ++j) m(i, j) = T(1) / (xs[j] + ys[i]);
  for (std::size_t j = 0; j <= n; ++j) m(n, j) = T(1);
  T rhs = vandermonde(xs) * vandermonde(ys);
  for (const auto& x : xs)
    for (const auto& y : ys) rhs /= x + y;
  return determinant(m) - rhs;
}

#define CBOP_INSTANTIATE(T)                                                                                    \
  template BimomentMatrix<T> compute_bimoments(const DiscreteMeasure<T>&, const DiscreteMeasure<T>&,          \
                                               const Kernel<T>&, std::size_t, std::size_t);                   \
  template std::vector<T> leading_minors(const BimomentMatrix<T>&, std::size_t);                              \
  template TpCertificate<T> check_total_positivity(const Matrix<T>&, std::size_t);                            \
  template Matrix<T> rank_one_shift_residual(const BimomentMatrix<T>&, const std::vector<T>&,                 \
                                             const std::vector<T>&, std::size_t);                             \
  template Matrix<T> shift_rows(const Matrix<T>&);                                                            \
  template T oracle_Dn(const DiscreteMeasure<T>&, const DiscreteMeasure<T>&, std::size_t);                    \
  template T bordered_cauchy_residual(const std::vector<T>&, const std::vector<T>&);

CBOP_INSTANTIATE(Rational)
CBOP_INSTANTIATE(Real)

}  // namespace cbop::bimoment
