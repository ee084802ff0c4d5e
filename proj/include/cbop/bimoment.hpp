#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "cbop/matrix.hpp"
#include "cbop/measure.hpp"

namespace cbop::bimoment {

enum class KernelTag { Cauchy, Custom };

template <class T>
struct Kernel {
  KernelTag tag = KernelTag::Cauchy;
  std::function<T(const T&, const T&)> eval;

  static Kernel cauchy() {
    return {KernelTag::Cauchy, [](const T& x, const T& y) { return T(T(1) / (x + y)); }};
  }
  static Kernel custom(std::function<T(const T&, const T&)> f) { return {KernelTag::Custom, std::move(f)}; }
};

/// I_ij = integral of x^i y^j K(x,y) dalpha(x) dbeta(y).
template <class T>
struct BimomentMatrix {
  Matrix<T> entries;
  KernelTag kernel = KernelTag::Cauchy;

  std::size_t rows() const { return entries.rows(); }
  std::size_t cols() const { return entries.cols(); }
  const T& operator()(std::size_t i, std::size_t j) const { return entries(i, j); }
};

template <class T>
BimomentMatrix<T> compute_bimoments(const measure::DiscreteMeasure<T>& alpha, const measure::DiscreteMeasure<T>& beta,
                                    const Kernel<T>& kernel, std::size_t rows, std::size_t cols);

template <class T>
BimomentMatrix<T> compute_bimoments(const measure::DiscreteMeasure<T>& alpha, const measure::DiscreteMeasure<T>& beta,
                                    const Kernel<T>& kernel, std::size_t n) {
  return compute_bimoments(alpha, beta, kernel, n, n);
}

/// D_1..D_n. For the Cauchy kernel in exact mode a negative minor raises
/// ErrorKind::TheoryViolation; zero minors are returned as-is.
template <class T>
std::vector<T> leading_minors(const BimomentMatrix<T>& I, std::size_t n);

struct MinorIndex {
  std::size_t size = 0;
  std::size_t row = 0;  // first row of the consecutive block
  std::size_t col = 0;  // first column of the consecutive block
};

template <class T>
struct TpCertificate {
  bool pass = true;
  std::size_t kmax = 0;
  std::size_t checked = 0;
  T min_minor = T(0);
  MinorIndex min_at;
  std::optional<MinorIndex> violation;
  T violation_value = T(0);
};

/// Positivity of every consecutive minor of size <= kmax (Fekete's criterion).
template <class T>
TpCertificate<T> check_total_positivity(const Matrix<T>& m, std::size_t kmax);

/// (Lambda I + I Lambda^T - alpha beta^T) on the leading (n-1)x(n-1) block.
template <class T>
Matrix<T> rank_one_shift_residual(const BimomentMatrix<T>& I, const std::vector<T>& alpha_moments,
                                  const std::vector<T>& beta_moments, std::size_t n);

/// Lambda I (rows shifted up by one).
template <class T>
Matrix<T> shift_rows(const Matrix<T>& m);

/// D_n summed over increasing n-subsets of atoms with the Cauchy determinant
/// in closed form. Cauchy kernel only.
template <class T>
T oracle_Dn(const measure::DiscreteMeasure<T>& alpha, const measure::DiscreteMeasure<T>& beta, std::size_t n);

/// det of the (n+1)x(n+1) matrix with rows 1/(x_j+y_i) and a row of ones,
/// minus Delta(X)Delta(Y)/prod(x_j+y_k). Requires |xs| = |ys| + 1.
template <class T>
T bordered_cauchy_residual(const std::vector<T>& xs, const std::vector<T>& ys);

}  // namespace cbop::bimoment
