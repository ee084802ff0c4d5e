#include "cbop/zeros.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>

namespace cbop::zeros {

namespace {

using MatL = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;

// Parlett-Reinsch diagonal balancing with radix 2.
void balance(MatL& a) {
  const Eigen::Index n = a.rows();
  bool done = false;
  while (!done) {
    done = true;
    for (Eigen::Index i = 0; i < n; ++i) {
      long double c = 0, r = 0;
      for (Eigen::Index j = 0; j < n; ++j)
        if (j != i) {
          c += std::fabs(a(j, i));
          r += std::fabs(a(i, j));
        }
      if (c == 0 || r == 0) continue;
      long double g = r / 2, f = 1, s = c + r;
      while (c < g) {
        f *= 2;
        c *= 4;
      }
      g = r * 2;
      while (c > g) {
        f /= 2;
        c /= 4;
      }
      if ((c + r) / f < 0.95L * s) {
        done = false;
        a.row(i) /= f;
        a.col(i) *= f;
      }
    }
  }
}

std::vector<std::complex<long double>> eigenvalues(MatL a) {
  balance(a);
  Eigen::EigenSolver<MatL> es(a, false);
  if (es.info() != Eigen::Success) fail(ErrorKind::Numeric, "eigenvalue iteration did not converge");
  std::vector<std::complex<long double>> out;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) out.push_back(es.eigenvalues()(i));
  std::sort(out.begin(), out.end(), [](auto x, auto y) { return x.real() < y.real(); });
  return out;
}

template <class T>
const Matrix<T>& recurrence_matrix(const Bundle<T>& b, Side side) {
  return side == Side::P ? b.rec().X : b.rec().Ymonic;
}

template <class T>
Rational to_rational(const T& v) {
  if constexpr (is_exact_v<T>)
    return v;
  else
    return Rational(static_cast<double>(v));
}

}  // namespace

template <class T>
ZeroReport zeros_of(const Bundle<T>& b, Side side, std::size_t n) {
  if (n < 1 || n >= b.order()) fail(ErrorKind::OrderUnderflow, "zeros: degree must be in [1, order-1]");
  const Matrix<T>& M = recurrence_matrix(b, side);
  ZeroReport rep;
  rep.side = side;
  rep.degree = n;

  MatL a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = to_real(M(i, j));
  auto ev = eigenvalues(a);

  const Poly<T>& poly = b.family().poly(side, n);
  MatL comp = MatL::Zero(n, n);
  for (std::size_t i = 1; i < n; ++i) comp(i, i - 1) = 1;
  for (std::size_t i = 0; i < n; ++i) comp(i, n - 1) = -to_real(poly[i]);
  auto cv = eigenvalues(comp);

  const auto& mu = side == Side::P ? b.alpha() : b.beta();
  Real lo = to_real(mu.hull_min()), hi = to_real(mu.hull_max());
  Real span = std::max<Real>(hi - lo, std::numeric_limits<Real>::min());
  for (std::size_t k = 0; k < n; ++k) {
    rep.zeros.push_back(ev[k].real());
    rep.companion.push_back(cv[k].real());
    rep.max_imag = std::max(rep.max_imag, std::fabs(ev[k].imag()));
    rep.companion_agreement = std::max(rep.companion_agreement, std::abs(ev[k] - cv[k]));
  }
  Real scale = std::max<Real>(1, std::fabs(hi));
  rep.real = rep.max_imag <= 1e-9L * scale;
  rep.min_gap = n > 1 ? std::numeric_limits<Real>::infinity() : 0;
  for (std::size_t k = 0; k + 1 < n; ++k) rep.min_gap = std::min(rep.min_gap, rep.zeros[k + 1] - rep.zeros[k]);
  rep.coincident = n > 1 && rep.min_gap < 1e-12L * span;
  for (Real z : rep.zeros) {
    if (!(z > 0)) rep.positive = false;
    if (z < lo - 1e-12L * span || z > hi + 1e-12L * span) rep.in_hull = false;
  }

  Poly<Rational> exact_poly;
  for (const auto& c : poly) exact_poly.push_back(to_rational(c));
  if (rep.real && !rep.coincident)
    rep.certified = exact_sign_certificate(exact_poly, rep.zeros, to_rational(mu.hull_min()),
                                           to_rational(mu.hull_max()));
  return rep;
}

bool interlacing_check(const std::vector<Real>& upper, const std::vector<Real>& lower) {
  if (upper.size() != lower.size() + 1) return false;
  for (std::size_t k = 0; k < lower.size(); ++k)
    if (!(upper[k] < lower[k] && lower[k] < upper[k + 1])) return false;
  return true;
}

template <class T>
T charpoly_identity_residual(const Bundle<T>& b, Side side, std::size_t n, const T& t) {
  if (n < 1 || n >= b.order()) fail(ErrorKind::OrderUnderflow, "charpoly: degree must be in [1, order-1]");
  const Matrix<T>& M = recurrence_matrix(b, side);
  Matrix<T> a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = (i == j ? t : T(0)) - M(i, j);
  return determinant(a) - horner(b.family().poly(side, n), t);
}

bool exact_sign_certificate(const Poly<Rational>& poly, const std::vector<Real>& zeros, const Rational& lo,
                            const Rational& hi) {
  const std::size_t n = zeros.size();
  std::vector<Rational> grid{lo};
  for (std::size_t k = 0; k + 1 < n; ++k) {
    double mid = static_cast<double>((zeros[k] + zeros[k + 1]) / 2);
    grid.push_back(Rational(mid));
  }
  grid.push_back(hi);
  for (std::size_t k = 0; k + 1 < grid.size(); ++k)
    if (!(grid[k] < grid[k + 1])) return false;
  int prev = 0;
  for (const auto& g : grid) {
    Rational v = horner(poly, g);
    int s = sgn(v);
    if (s == 0) return false;
    if (prev != 0 && s == prev) return false;
    prev = s;
  }
  return true;
}

template ZeroReport zeros_of(const Bundle<Rational>&, Side, std::size_t);
template ZeroReport zeros_of(const Bundle<Real>&, Side, std::size_t);
template Rational charpoly_identity_residual(const Bundle<Rational>&, Side, std::size_t, const Rational&);
template Real charpoly_identity_residual(const Bundle<Real>&, Side, std::size_t, const Real&);

}  // namespace cbop::zeros
