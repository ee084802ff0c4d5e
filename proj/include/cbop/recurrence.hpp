#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cbop/bop.hpp"

namespace cbop::recurrence {

/// Finite section of a banded operator.
///
/// Entries are non-zero only for lo <= j - i <= hi. Rows below valid_rows and
/// columns below valid_cols are unaffected by truncation.
template <class T>
struct BandOperator {
  std::string name;
  Matrix<T> m;
  int lo = 0, hi = 0;
  std::size_t valid_rows = 0, valid_cols = 0;

  T operator()(std::size_t i, std::size_t j) const { return m(i, j); }

  /// max |m_ij| outside the band over the valid window.
  T support_violation() const;
};

/// Recurrence data in the exact frame: p_k = p~_k (monic) and
/// q_k = q~_k / h_k, so that <p_i|q_j> = delta_ij.
///
///   x p = X p,  y q = Y q,  X + Y^T = pi eta^T,
///   L = D_pi^{-1}(Lambda - Id),  Lhat = D_eta^{-1}(Lambda^T - Id).
template <class T>
struct Recurrence {
  std::size_t order = 0;
  Matrix<T> X;       // lower Hessenberg, X_{i,i+1} = 1
  Matrix<T> Ymonic;  // y q~ = Ymonic q~
  Matrix<T> Y;       // y q = Y q
  std::vector<T> pi;   // pi~_k
  std::vector<T> eta;  // eta~_k / h_k
  std::vector<T> h;
  Matrix<T> L, Lhat;
  BandOperator<T> A, Ahat, B, Bhat;
  T hessenberg_violation = T(0);
};

/// X~_ij = <x p~_i|q~_j>/h_j and Y~_ij = <p~_j|y q~_i>/h_j, order x order.
/// Needs bimoments up to degree order.
template <class T>
std::pair<Matrix<T>, Matrix<T>> build_XY(const bop::PolynomialFamily<T>& f, const bimoment::BimomentMatrix<T>& I);

/// X~_ij + Y~_ji h_i/h_j - pi~_i eta~_j / h_j.
template <class T>
Matrix<T> rank_one_XY_residual(const Matrix<T>& X, const Matrix<T>& Ymonic, const bop::PolynomialFamily<T>& f,
                               const bop::Averages<T>& avg);

template <class T>
Recurrence<T> build_recurrence(const bop::PolynomialFamily<T>& f, const bop::Averages<T>& avg,
                               const bimoment::BimomentMatrix<T>& I);

/// (A, Ahat) with A = L X and Ahat = X Lhat.
template <class T>
std::pair<BandOperator<T>, BandOperator<T>> build_A_Ahat(const Recurrence<T>& r);

/// x(p_n/pi_n - p_{n-1}/pi_{n-1}) - sum_k A_{n-1,k} p_k(x), and the matching
/// q-side residual built from Bhat = Lhat^T Y. Needs 1 <= n <= order-2.
template <class T>
std::pair<T, T> four_term_residual(const bop::PolynomialFamily<T>& f, const Recurrence<T>& r, std::size_t n,
                                   const T& x, const T& y);

/// Residuals of the operator identities that do not depend on a point.
template <class T>
struct OperatorChecks {
  T rank_one;         // X + Y^T - pi eta^T
  T b_plus_at;        // B + A^T
  T bhat_plus_ahat_t; // Bhat + Ahat^T
  T lx_plus_lyt;      // L X + L Y^T
  T xlhat_plus_ytlhat;// X Lhat + Y^T Lhat
  T band_A, band_Ahat, band_B, band_Bhat;
  T hessenberg;
};

template <class T>
OperatorChecks<T> operator_checks(const Recurrence<T>& r);

/// p^_n = Lhat^{-1} p (degree n), q^_n = Lhat^T q (degree n+1).
template <class T>
struct HattedFamily {
  std::vector<Poly<T>> phat;  // n = 0..order-1
  std::vector<Poly<T>> qhat;  // n = 0..order-2
};

template <class T>
HattedFamily<T> build_hatted(const bop::PolynomialFamily<T>& f, const Recurrence<T>& r);

template <class T>
struct HattedChecks {
  bool degrees_ok = true;
  T qhat_mean;      // max |int q^_n dbeta|
  T biorthogonal;   // max |<p^_i|q^_j> - delta_ij|
  T leading;        // max |lead(q^_n) - 1/eta~_{n+1}|
  T phat_moments;   // max |beta_0 <p^_n|y^j> - beta_j <p^_n|1>|, j <= n
};

template <class T>
HattedChecks<T> verify_hatted(const HattedFamily<T>& hf, const bop::PolynomialFamily<T>& f, const Recurrence<T>& r,
                              const bimoment::BimomentMatrix<T>& I, const std::vector<T>& beta_moments);

/// Bordered-determinant expressions for (q^_n, p^_n).
template <class T>
std::pair<Poly<T>, Poly<T>> hatted_determinantal_oracle(const bimoment::BimomentMatrix<T>& I,
                                                        const std::vector<T>& beta_moments,
                                                        const bop::Averages<T>& avg, std::size_t n);

template <class T>
struct TnCertificate {
  bool totally_nonnegative = true;
  bool invertible = true;
  bool positive_off_diagonals = true;
  bool oscillatory = true;
  std::size_t kmax = 0;
  std::size_t checked = 0;
  T min_minor = T(0);
  std::optional<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> violation;
};

/// All minors up to size kmax are >= 0, every leading section is invertible,
/// and the sub- and super-diagonals are positive (Gantmacher-Krein).
template <class T>
TnCertificate<T> tn_oscillatory_certificate(const Matrix<T>& m, std::size_t kmax);

}  // namespace cbop::recurrence
