#include "cbop/rhp.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace cbop::rhp {

namespace {

// Gamma = R * [source_0; source_1; source_2], each source one degree of one
// window set, evaluated across the auxiliary index a.
template <class T>
struct Recipe {
  Mat3<T> R{};
  std::array<int, 3> set{};   // 0: q~ (or p), 1: p^
  std::array<long, 3> deg{};  // -1 stands for the zero window
};

template <class T>
void check_n(const Bundle<T>& b, std::size_t n, std::size_t lo) {
  if (n < lo || n + 1 > b.order())
    fail(ErrorKind::OrderUnderflow, "Riemann-Hilbert matrix needs " + std::to_string(lo) + " <= n <= order-1");
}

template <class T>
Recipe<T> gamma_recipe(const Bundle<T>& b, std::size_t n, Route route, GammaSign sign) {
  check_n(b, n, 2);
  const auto& h = b.family().h;
  const auto& et = b.averages().eta;
  const T s = (n % 2 == 0) ? T(1) : T(-1);  // (-1)^n, literal sign
  Recipe<T> r;
  r.set = {0, 0, 0};
  r.deg = {long(n) - 2, long(n) - 1, long(n)};
  if (route == Route::Recovery) {
    r.R[0] = {T(0), T(-et[n] / et[n - 1]), T(1)};
    r.R[1] = {T(0), T(T(1) / et[n - 1]), T(0)};
    r.R[2] = {T(s / h[n - 2]), T(-s * et[n - 2] / (h[n - 2] * et[n - 1])), T(0)};
  } else {
    Mat3<T> M{}, Mid{};
    M[0] = {T(1), T(-et[n]), T(0)};
    M[1] = {T(0), T(1), T(0)};
    M[2] = {T(0), T(-s * et[n - 2] / h[n - 2]), T(1)};
    Mid[0] = {T(0), T(0), T(1)};
    Mid[1] = {T(0), T(T(1) / et[n - 1]), T(0)};
    Mid[2] = {T(s / h[n - 2]), T(0), T(0)};
    r.R = mul3(M, Mid);
  }
  if (sign == GammaSign::Corrected)
    for (auto& v : r.R[2]) v = -v;
  return r;
}

template <class T>
Recipe<T> gamma_hat_recipe(const Bundle<T>& b, std::size_t n, Route route) {
  check_n(b, n, 1);
  const auto& h = b.family().h;
  const auto& et = b.averages().eta;
  const T s = (n % 2 == 0) ? T(1) : T(-1);
  Recipe<T> r;
  if (route == Route::Recovery) {
    r.set = {0, 1, 0};
    r.deg = {long(n), long(n) - 1, long(n) - 1};
    r.R[0] = {T(1), T(0), T(0)};
    r.R[1] = {T(0), T(-1), T(0)};
    r.R[2] = {T(0), T(0), T(s / h[n - 1])};
  } else {
    if (n < 2) fail(ErrorKind::OrderUnderflow, "prefactor route for Gamma^ needs n >= 2");
    r.set = {1, 1, 1};
    r.deg = {long(n) - 2, long(n) - 1, long(n)};
    Mat3<T> Mid{}, D{};
    Mid[0] = {T(0), T(0), T(-h[n] / et[n])};
    Mid[1] = {T(0), T(-1), T(0)};
    Mid[2] = {T(s / et[n - 1]), T(0), T(0)};
    D[0] = {T(1), T(-1), T(0)};
    D[1] = {T(0), T(1), T(0)};
    D[2] = {T(0), T(-1), T(1)};
    r.R = mul3(Mid, D);
  }
  return r;
}

template <class T, class P>
Mat3<P> apply(const Recipe<T>& r, const Windows<P>& s0, const Windows<P>& s1) {
  Mat3<P> out{};
  for (int i = 0; i < 3; ++i)
    for (int a = 0; a < 3; ++a) {
      P acc(0);
      for (int d = 0; d < 3; ++d) {
        if (r.deg[d] < 0 || is_zero(r.R[i][d])) continue;
        const Windows<P>& src = r.set[d] == 0 ? s0 : s1;
        acc += Bundle<T>::template lift<P>(r.R[i][d]) * src[a][static_cast<std::size_t>(r.deg[d])];
      }
      out[i][a] = acc;
    }
  return out;
}

template <class T>
SeriesMat<T> apply_series(const Recipe<T>& r, const Windows<Laurent<T>>& s0, const Windows<Laurent<T>>& s1) {
  SeriesMat<T> out{};
  for (int i = 0; i < 3; ++i)
    for (int a = 0; a < 3; ++a) {
      std::optional<Laurent<T>> acc;
      for (int d = 0; d < 3; ++d) {
        if (r.deg[d] < 0 || is_zero(r.R[i][d])) continue;
        const Windows<Laurent<T>>& src = r.set[d] == 0 ? s0 : s1;
        Laurent<T> term = src[a][static_cast<std::size_t>(r.deg[d])].scaled(r.R[i][d]);
        acc = acc ? *acc + term : term;
      }
      out[i][a] = acc ? *acc : Laurent<T>(0, 0);
    }
  return out;
}

// Coefficients of t^{-j-1}: sum_l w_l x_l^j f_l.
template <class T>
Laurent<T> transform_series(const measure::DiscreteMeasure<T>& mu, const std::vector<T>& f, int terms) {
  std::vector<T> m(static_cast<std::size_t>(terms), T(0));
  for (std::size_t l = 0; l < mu.size(); ++l) {
    T c = mu.weight(l) * f[l];
    const T x = mu.point(l);
    for (int j = 0; j < terms; ++j) {
      m[static_cast<std::size_t>(j)] += c;
      c *= x;
    }
  }
  return Laurent<T>::from_moments(m);
}

template <class T>
Windows<Laurent<T>> q_series(const Bundle<T>& b, int terms) {
  const std::size_t N = b.order();
  const auto& fam = b.family();
  Windows<Laurent<T>> out;
  const auto& beta = b.beta();
  const auto as = b.alpha_star();
  std::vector<std::vector<T>> q1_at(as.size());
  for (std::size_t l = 0; l < as.size(); ++l) q1_at[l] = b.template qmonic_vec<T>(1, as.point(l));
  for (std::size_t k = 0; k < N; ++k) {
    out[0].push_back(Laurent<T>::from_poly(fam.q[k], -terms));
    std::vector<T> f;
    for (std::size_t m = 0; m < beta.size(); ++m) f.push_back(horner(fam.q[k], beta.point(m)));
    out[1].push_back(transform_series(beta, f, terms));
    f.clear();
    for (std::size_t l = 0; l < as.size(); ++l) f.push_back(q1_at[l][k]);
    out[2].push_back(transform_series(as, f, terms));
  }
  return out;
}

template <class T>
void p_series(const Bundle<T>& b, int terms, Windows<Laurent<T>>& p, Windows<Laurent<T>>& ph) {
  const std::size_t N = b.order();
  const auto& fam = b.family();
  const auto& alpha = b.alpha();
  const auto bs = b.beta_star();
  const auto& eta = b.rec().eta;
  std::vector<std::vector<T>> p1_at(bs.size()), ph1_at(bs.size());
  for (std::size_t m = 0; m < bs.size(); ++m) {
    p1_at[m] = b.template p_vec<T>(1, bs.point(m));
    ph1_at[m] = b.template phat_vec<T>(1, bs.point(m));
  }
  std::optional<Laurent<T>> acc;
  for (std::size_t k = 0; k < N; ++k) {
    p[0].push_back(Laurent<T>::from_poly(fam.p[k], -terms));
    ph[0].push_back(Laurent<T>::from_poly(b.hatted().phat[k], -terms));
    std::vector<T> f;
    for (std::size_t l = 0; l < alpha.size(); ++l) f.push_back(horner(fam.p[k], alpha.point(l)));
    Laurent<T> p1 = transform_series(alpha, f, terms);
    p[1].push_back(p1);
    Laurent<T> shifted = p1 + Laurent<T>::from_poly(Poly<T>{T(b.p_dot_one()[k] / b.beta_moments()[0])}, -terms);
    Laurent<T> term = shifted.scaled(T(-eta[k]));
    acc = acc ? *acc + term : term;
    ph[1].push_back(*acc);
    f.clear();
    for (std::size_t m = 0; m < bs.size(); ++m) f.push_back(p1_at[m][k]);
    p[2].push_back(transform_series(bs, f, terms));
    f.clear();
    for (std::size_t m = 0; m < bs.size(); ++m) f.push_back(ph1_at[m][k]);
    ph[2].push_back(transform_series(bs, f, terms));
  }
}

template <class T>
bool negligible(const T& v, const T& scale) {
  if constexpr (is_exact_v<T>)
    return is_zero(v);
  else
    return abs_of(v) <= Real(1e-9) * (Real(1) + scale);
}

template <class T>
std::optional<int> lead_power(const Laurent<T>& s) {
  T scale = s.max_abs_from(s.floor());
  for (int k = s.top(); k >= s.floor(); --k)
    if (!negligible(s.coeff(k), scale)) return k;
  return std::nullopt;
}

}  // namespace

const char* which_name(Which w) { return w == Which::Gamma ? "Gamma" : "GammaHat"; }

template <class T, class P>
Mat3<P> gamma_from(const Bundle<T>& b, std::size_t n, const Windows<P>& qt, Route route, GammaSign sign) {
  return apply(gamma_recipe(b, n, route, sign), qt, qt);
}

template <class T, class P>
Mat3<P> gamma_hat_from(const Bundle<T>& b, std::size_t n, const Windows<P>& p, const Windows<P>& ph, Route route) {
  return apply(gamma_hat_recipe(b, n, route), p, ph);
}

template <class T, class P>
Mat3<P> assemble_gamma(const Bundle<T>& b, std::size_t n, const P& w, Route route, GammaSign sign) {
  Windows<P> qt;
  for (int a = 0; a < 3; ++a) qt[a] = b.qmonic_vec(a, w);
  return gamma_from(b, n, qt, route, sign);
}

template <class T, class P>
Mat3<P> assemble_gamma_hat(const Bundle<T>& b, std::size_t n, const P& z, Route route) {
  Windows<P> p, ph;
  for (int a = 0; a < 3; ++a) {
    p[a] = b.p_vec(a, z);
    ph[a] = b.phat_vec(a, z);
  }
  return gamma_hat_from(b, n, p, ph, route);
}

template <class T, class P>
Real route_gap(const Bundle<T>& b, Which which, std::size_t n, const P& point) {
  Mat3<P> x, y;
  if (which == Which::Gamma) {
    x = assemble_gamma(b, n, point, Route::Prefactor);
    y = assemble_gamma(b, n, point, Route::Recovery);
  } else {
    x = assemble_gamma_hat(b, n, point, Route::Prefactor);
    y = assemble_gamma_hat(b, n, point, Route::Recovery);
  }
  Real worst = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) worst = std::max(worst, to_real(abs_of(P(x[i][j] - y[i][j]))));
  return worst;
}

template <class T>
SeriesMat<T> gamma_series(const Bundle<T>& b, Which which, std::size_t n, int terms, GammaSign sign) {
  if (which == Which::Gamma) {
    Windows<Laurent<T>> q = q_series(b, terms);
    return apply_series(gamma_recipe(b, n, Route::Recovery, sign), q, q);
  }
  Windows<Laurent<T>> p, ph;
  p_series(b, terms, p, ph);
  return apply_series(gamma_hat_recipe(b, n, Route::Recovery), p, ph);
}

template <class T>
AsymptoticCertificate<T> asymptotic_check(const Bundle<T>& b, std::size_t n, Which which, GammaSign sign) {
  AsymptoticCertificate<T> cert;
  cert.which = which;
  cert.n = n;
  const int ni = static_cast<int>(n);
  cert.powers = which == Which::Gamma ? std::array<int, 3>{ni, -1, 1 - ni} : std::array<int, 3>{ni, 0, -ni};
  SeriesMat<T> s = gamma_series(b, which, n, 2 * ni + 4, sign);
  cert.pass = true;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const Laurent<T>& e = s[i][j];
      cert.leading[i][j] = lead_power(e);
      const int pj = cert.powers[j];
      T scale = e.max_abs_from(e.floor());
      bool ok = true;
      for (int k = std::max(pj + (i == j ? 1 : 0), e.floor()); k <= e.top(); ++k)
        if (!negligible(e.coeff(k), scale)) ok = false;
      if (i == j) {
        cert.diagonal[j] = e.coeff(pj);
        if (!negligible(T(e.coeff(pj) - T(1)), T(1))) ok = false;
      }
      if (!ok) {
        cert.pass = false;
        if (!cert.detail.empty()) cert.detail += "; ";
        cert.detail += "entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
      }
    }
  if (cert.pass) cert.detail = "correction matrix is 1 + O(1/z)";
  return cert;
}

template <class T>
Constants<T> extract_constants(const Bundle<T>& b, std::size_t n) {
  const int ni = static_cast<int>(n);
  SeriesMat<T> s = gamma_series(b, Which::Gamma, n, 2 * ni + 4, GammaSign::Corrected);
  const Laurent<T>& g21 = s[1][0];
  const Laurent<T>& g23 = s[1][2];
  if (lead_power(g21) != std::optional<int>(ni - 1) || lead_power(g23) != std::optional<int>(-ni))
    fail(ErrorKind::Numeric, "row 2 of Gamma does not have the expected leading powers");
  const T a = g21.coeff(ni - 1), c = g23.coeff(-ni);
  const T sg = (n % 2 == 0) ? T(1) : T(-1);
  Constants<T> out;
  out.n = n;
  out.eta_squared = T(1) / (sg * a * c);
  out.c_squared = sg * c / a;
  out.c = std::sqrt(to_real(out.c_squared));
  out.eta = std::sqrt(to_real(out.eta_squared));
  const auto& h = b.family().h;
  const auto& et = b.averages().eta;
  out.expected_c_squared = h[n - 1];
  out.expected_eta_squared = et[n - 1] * et[n - 1] / h[n - 1];
  return out;
}

template <class T>
Real q1_asymptotic_ratio(const Bundle<T>& b, std::size_t n, Real w) {
  if (n >= b.order()) fail(ErrorKind::OrderUnderflow, "degree beyond the bundle order");
  const auto& beta = b.beta();
  Real acc = 0;
  for (std::size_t m = 0; m < beta.size(); ++m)
    acc += to_real(beta.weight(m)) * to_real(T(horner(b.family().q[n], beta.point(m)))) / (w - to_real(beta.point(m)));
  return w * acc / to_real(b.averages().eta[n]);
}

// ---- boundary values on density inputs ----

DensityPair require_density(const measure::Measure& alpha, const measure::Measure& beta) {
  const auto* a = std::get_if<measure::DensityMeasure>(&alpha);
  const auto* b = std::get_if<measure::DensityMeasure>(&beta);
  if (!a || !b) fail(ErrorKind::Input, "jump check requires density measure");
  return {*a, *b};
}

namespace {

// int_cut dt/(w-t) - sum_l GLw_l/(w-t_l); the cut is [a,b] or its reflection.
Complex cauchy_defect(const measure::DensityMeasure& m, bool reflected, const Complex& w) {
  measure::QuadratureRule rule = measure::gauss_legendre(m.a, m.b, m.quadrature_order);
  Complex exact = reflected ? std::log(w + m.b) - std::log(w + m.a) : std::log(w - m.a) - std::log(w - m.b);
  Complex sum = 0;
  for (std::size_t l = 0; l < rule.nodes.size(); ++l) {
    Real t = reflected ? -rule.nodes[l] : rule.nodes[l];
    sum += rule.weights[l] / (w - t);
  }
  return exact - sum;
}

bool interior(Real x, Real a, Real b) { return a < x && x < b; }

int locate_cut(const DensityPair& d, Which which, Real w0) {
  const measure::DensityMeasure& first = which == Which::Gamma ? d.beta : d.alpha;
  const measure::DensityMeasure& second = which == Which::Gamma ? d.alpha : d.beta;
  if (interior(w0, first.a, first.b)) return 1;
  if (interior(w0, -second.b, -second.a)) return 2;
  fail(ErrorKind::Input, "jump point must lie in the interior of a support");
}

Mat3<Complex> regularized(const Bundle<Real>& b, const DensityPair& d, Which which, std::size_t n, int cut, Real w0,
                          const Complex& w) {
  const std::size_t N = b.order();
  if (which == Which::Gamma) {
    Windows<Complex> qt;
    for (int a = 0; a < 3; ++a) qt[a] = b.qmonic_vec(a, w);
    if (cut == 1) {
      Complex D = cauchy_defect(d.beta, false, w);
      std::vector<Real> q0 = b.qmonic_vec<Real>(0, w0);
      for (std::size_t k = 0; k < N; ++k) qt[1][k] += q0[k] * d.beta.rho(w0) * D;
    } else {
      Complex D = cauchy_defect(d.alpha, true, w);
      std::vector<Real> q1 = b.qmonic_vec<Real>(1, w0);
      for (std::size_t k = 0; k < N; ++k) qt[2][k] += q1[k] * d.alpha.rho(-w0) * D;
    }
    return gamma_from(b, n, qt, Route::Recovery, GammaSign::Corrected);
  }
  Windows<Complex> p, ph;
  for (int a = 0; a < 3; ++a) {
    p[a] = b.p_vec(a, w);
    ph[a] = b.phat_vec(a, w);
  }
  if (cut == 1) {
    Complex D = cauchy_defect(d.alpha, false, w);
    std::vector<Real> p0 = b.p_vec<Real>(0, w0);
    Complex acc = 0;
    for (std::size_t k = 0; k < N; ++k) {
      Complex corr = p0[k] * d.alpha.rho(w0) * D;
      p[1][k] += corr;
      acc -= b.rec().eta[k] * corr;
      ph[1][k] += acc;
    }
  } else {
    Complex D = cauchy_defect(d.beta, true, w);
    std::vector<Real> p1 = b.p_vec<Real>(1, w0), ph1 = b.phat_vec<Real>(1, w0);
    const Real r = d.beta.rho(-w0);
    for (std::size_t k = 0; k < N; ++k) {
      p[2][k] += p1[k] * r * D;
      ph[2][k] += ph1[k] * r * D;
    }
  }
  return gamma_hat_from(b, n, p, ph, Route::Recovery);
}

Real max_gap(const Mat3<Complex>& x, const Mat3<Complex>& y) {
  Real worst = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) worst = std::max(worst, std::abs(x[i][j] - y[i][j]));
  return worst;
}

}  // namespace

BoundaryValues boundary_values(const Bundle<Real>& b, const DensityPair& d, Which which, std::size_t n, Real w0,
                               Real eps) {
  if (!(eps > 0)) fail(ErrorKind::Input, "eps must be positive");
  BoundaryValues bv;
  bv.cut = locate_cut(d, which, w0);
  bv.plus = regularized(b, d, which, n, bv.cut, w0, Complex(w0, eps));
  bv.minus = regularized(b, d, which, n, bv.cut, w0, Complex(w0, -eps));
  // The jumping column picks up -2 pi i rho times its left neighbour.
  Real rho;
  if (which == Which::Gamma)
    rho = bv.cut == 1 ? d.beta.rho(w0) : d.alpha.rho(-w0);
  else
    rho = bv.cut == 1 ? d.alpha.rho(w0) : d.beta.rho(-w0);
  bv.jump = Mat3<Complex>{};
  for (int i = 0; i < 3; ++i) bv.jump[i][i] = 1;
  const Complex j = Complex(0, -2 * std::numbers::pi_v<Real>) * rho;
  if (bv.cut == 1)
    bv.jump[0][1] = j;
  else
    bv.jump[1][2] = j;
  return bv;
}

JumpResidual jump_residual(const Bundle<Real>& b, const DensityPair& d, Which which, std::size_t n, Real w0,
                           Real eps) {
  BoundaryValues bv = boundary_values(b, d, which, n, w0, eps);
  JumpResidual r;
  r.absolute = max_gap(bv.plus, mul3(bv.minus, bv.jump));
  Real scale = 1;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) scale = std::max({scale, std::abs(bv.plus[i][j]), std::abs(bv.minus[i][j])});
  r.relative = r.absolute / scale;
  return r;
}

JumpStudy jump_study(const Bundle<Real>& b, const DensityPair& d, Which which, std::size_t n, Real w0,
                     const std::vector<Real>& eps) {
  JumpStudy st;
  st.eps = eps;
  Real sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (Real e : eps) {
    JumpResidual r = jump_residual(b, d, which, n, w0, e);
    st.residual.push_back(r.absolute);
    st.relative.push_back(r.relative);
    Real x = std::log(e), y = std::log(r.absolute);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const Real m = static_cast<Real>(eps.size());
  const Real den = m * sxx - sx * sx;
  st.slope = den != 0 ? (m * sxy - sx * sy) / den : 0;
  return st;
}

Real analytic_gap(const Bundle<Real>& b, Which which, std::size_t n, Real w, Real eps) {
  Complex up(w, eps), down(w, -eps);
  if (which == Which::Gamma) return max_gap(assemble_gamma(b, n, up), assemble_gamma(b, n, down));
  return max_gap(assemble_gamma_hat(b, n, up), assemble_gamma_hat(b, n, down));
}

Mat3<Complex> constant_jump_transform(const Mat3<Complex>& g, Which which, const Complex& point,
                                      const measure::Potential& U, const measure::Potential& V) {
  const measure::Potential& A = which == Which::Gamma ? V : U;  // weight of the first cut
  const measure::Potential& B = which == Which::Gamma ? U : V;  // weight of the reflected cut
  Complex a = horner(A.coeffs, point) / A.hbar;
  Complex bb = horner(B.coeffs, Complex(-point)) / B.hbar;
  std::array<Complex, 3> e{(-Real(2) * a - bb) / Real(3), (a - bb) / Real(3), (a + Real(2) * bb) / Real(3)};
  Mat3<Complex> out = g;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out[i][j] *= std::exp(e[j]);
  return out;
}

#define CBOP_INSTANTIATE(T, P)                                                                                \
  template Mat3<P> gamma_from(const Bundle<T>&, std::size_t, const Windows<P>&, Route, GammaSign);           \
  template Mat3<P> gamma_hat_from(const Bundle<T>&, std::size_t, const Windows<P>&, const Windows<P>&, Route); \
  template Mat3<P> assemble_gamma(const Bundle<T>&, std::size_t, const P&, Route, GammaSign);                \
  template Mat3<P> assemble_gamma_hat(const Bundle<T>&, std::size_t, const P&, Route);                       \
  template Real route_gap(const Bundle<T>&, Which, std::size_t, const P&);

CBOP_INSTANTIATE(Rational, Rational)
CBOP_INSTANTIATE(Real, Real)
CBOP_INSTANTIATE(Real, Complex)

#define CBOP_INSTANTIATE_T(T)                                                                        \
  template SeriesMat<T> gamma_series(const Bundle<T>&, Which, std::size_t, int, GammaSign);         \
  template AsymptoticCertificate<T> asymptotic_check(const Bundle<T>&, std::size_t, Which, GammaSign); \
  template Constants<T> extract_constants(const Bundle<T>&, std::size_t);                           \
  template Real q1_asymptotic_ratio(const Bundle<T>&, std::size_t, Real);

CBOP_INSTANTIATE_T(Rational)
CBOP_INSTANTIATE_T(Real)

}  // namespace cbop::rhp
