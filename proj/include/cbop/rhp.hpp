#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "cbop/bundle.hpp"
#include "cbop/measure.hpp"
#include "cbop/series.hpp"

namespace cbop::rhp {

template <class P>
using Mat3 = std::array<std::array<P, 3>, 3>;

enum class Which { Gamma, GammaHat };

/// How Gamma is put together: from the normalized window with its two
/// constant prefactors, or row by row from the recovery formula.
enum class Route { Prefactor, Recovery };

/// Taken literally, the third row of Gamma carries (-1)^n; with it det Gamma = -1.
/// Corrected flips that row so that det Gamma = 1.
enum class GammaSign { Corrected, Literal };

template <class P>
P det3(const Mat3<P>& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

template <class P>
Mat3<P> mul3(const Mat3<P>& a, const Mat3<P>& b) {
  Mat3<P> out{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      P acc(0);
      for (int k = 0; k < 3; ++k) acc += a[i][k] * b[k][j];
      out[i][j] = acc;
    }
  return out;
}

/// Window values indexed [a][k]: a = 0, 1, 2 auxiliary index, k = degree.
template <class P>
using Windows = std::array<std::vector<P>, 3>;

/// Gamma from monic q-windows (q~_{a,k} = h_k q_{a,k}). Needs 2 <= n <= order-1.
template <class T, class P>
Mat3<P> gamma_from(const Bundle<T>& b, std::size_t n, const Windows<P>& qt, Route route, GammaSign sign);

/// Gamma^ from the p-windows and p^-windows. Needs 1 <= n <= order-1
/// (n >= 2 on the prefactor route: at n = 1 it misses the <p_0|1> shift of p^_1).
template <class T, class P>
Mat3<P> gamma_hat_from(const Bundle<T>& b, std::size_t n, const Windows<P>& p, const Windows<P>& ph, Route route);

template <class T, class P>
Mat3<P> assemble_gamma(const Bundle<T>& b, std::size_t n, const P& w, Route route = Route::Recovery,
                       GammaSign sign = GammaSign::Corrected);

template <class T, class P>
Mat3<P> assemble_gamma_hat(const Bundle<T>& b, std::size_t n, const P& z, Route route = Route::Recovery);

/// Largest entrywise gap between the two assembly routes.
template <class T, class P>
Real route_gap(const Bundle<T>& b, Which which, std::size_t n, const P& point);

/// Expansions at infinity of every entry, with `terms` negative powers
/// tracked for the Cauchy-transform windows.
template <class T>
using SeriesMat = std::array<std::array<Laurent<T>, 3>, 3>;

template <class T>
SeriesMat<T> gamma_series(const Bundle<T>& b, Which which, std::size_t n, int terms,
                          GammaSign sign = GammaSign::Corrected);

template <class T>
struct AsymptoticCertificate {
  Which which = Which::Gamma;
  std::size_t n = 0;
  std::array<int, 3> powers{};                          // expected column powers
  std::array<std::array<std::optional<int>, 3>, 3> leading{};  // observed leading powers
  std::array<T, 3> diagonal{};                          // coefficient of z^{powers[j]} in entry (j,j)
  bool pass = false;
  std::string detail;
};

/// Gamma = (1 + O(1/w)) diag(w^n, w^-1, w^{1-n}),
/// Gamma^ = (1 + O(1/z)) diag(z^n, 1, z^-n).
template <class T>
AsymptoticCertificate<T> asymptotic_check(const Bundle<T>& b, std::size_t n, Which which,
                                          GammaSign sign = GammaSign::Corrected);

/// Constants read off row 2 of Gamma (1-based indices):
///   1/eta_{n-1}^2 = (-1)^n lim w Gamma_21 Gamma_23,
///   c_{n-1}^2     = (-1)^n lim w^{2n-1} Gamma_23 / Gamma_21.
template <class T>
struct Constants {
  std::size_t n = 0;
  T c_squared{}, eta_squared{};
  Real c = 0, eta = 0;
  T expected_c_squared{}, expected_eta_squared{};  // h_{n-1} and eta~_{n-1}^2 / h_{n-1}
};

template <class T>
Constants<T> extract_constants(const Bundle<T>& b, std::size_t n);

/// w q~_{1,n}(w) / eta~_n, which tends to 1.
template <class T>
Real q1_asymptotic_ratio(const Bundle<T>& b, std::size_t n, Real w);

/// Density data for the boundary-value checks. The bundle must be built
/// from the Gauss-Legendre discretizations of these two densities.
struct DensityPair {
  measure::DensityMeasure alpha, beta;
};

/// Builds a DensityPair from the input variants; raises Input with
/// "jump check requires density measure" otherwise.
DensityPair require_density(const measure::Measure& alpha, const measure::Measure& beta);

/// Boundary values at w0 +- i eps with singularity subtraction on the cut
/// containing w0.
struct BoundaryValues {
  Mat3<Complex> plus, minus;
  Mat3<Complex> jump;  // J(w0)
  int cut = 0;         // 1: supp beta (resp. supp alpha), 2: the reflected support
};

BoundaryValues boundary_values(const Bundle<Real>& b, const DensityPair& d, Which which, std::size_t n, Real w0,
                               Real eps);

/// max |Gamma_+ - Gamma_- J| at w0 interior to a cut, and the same divided
/// by max(1, largest |entry| of Gamma_+-). Entries grow like 1/h_{n-1}, so
/// the relative figure is the one comparable across measures.
struct JumpResidual {
  Real absolute = 0, relative = 0;
};

JumpResidual jump_residual(const Bundle<Real>& b, const DensityPair& d, Which which, std::size_t n, Real w0,
                           Real eps);

struct JumpStudy {
  std::vector<Real> eps, residual, relative;
  Real slope = 0;  // least-squares slope of log residual vs log eps
};

JumpStudy jump_study(const Bundle<Real>& b, const DensityPair& d, Which which, std::size_t n, Real w0,
                     const std::vector<Real>& eps);

/// max |Gamma(w + i eps) - Gamma(w - i eps)| away from the cuts.
Real analytic_gap(const Bundle<Real>& b, Which which, std::size_t n, Real w, Real eps);

/// Right multiplication by a unit-determinant exponential diagonal that
/// turns the jumps into constants when alpha = exp(-U/hbar), beta = exp(-V/hbar):
///   Gamma:  exp(diag(-2V(w) - U(-w),  V(w) - U(-w),  V(w) + 2U(-w)) / 3hbar)
///   Gamma^: the same with U and V exchanged.
Mat3<Complex> constant_jump_transform(const Mat3<Complex>& g, Which which, const Complex& point,
                                      const measure::Potential& U, const measure::Potential& V);

const char* which_name(Which w);

}  // namespace cbop::rhp
