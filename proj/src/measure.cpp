#include "cbop/measure.hpp"

#include <gsl/gsl_integration.h>

#include <algorithm>
#include <cmath>

namespace cbop::measure {

namespace {

template <class T>
std::string show(const T& v) {
  return format_scalar(v);
}

}  // namespace

template <class T>
DiscreteMeasure<T>::DiscreteMeasure(std::vector<Atom<T>> atoms) {
  if (atoms.empty()) fail(ErrorKind::Input, "measure has no atoms");
  std::vector<T> seen;
  for (const auto& a : atoms) {
    if (!(a.weight > 0)) fail(ErrorKind::Input, "atom weight must be positive, got " + show(a.weight));
    if (!(a.position > 0)) fail(ErrorKind::Input, "atom position must lie in (0,inf), got " + show(a.position));
    seen.push_back(a.position);
  }
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
    fail(ErrorKind::Input, "atom positions must be distinct");
  atoms_ = std::make_shared<const std::vector<Atom<T>>>(std::move(atoms));
}

template <class T>
T DiscreteMeasure<T>::moment(int j) const {
  T sum(0);
  for (std::size_t k = 0; k < size(); ++k) {
    T pw(1);
    const T t = point(k);
    for (int e = 0; e < j; ++e) pw *= t;
    sum += weight(k) * pw;
  }
  if constexpr (is_exact_v<T>) check_precision(sum, "moment");
  return sum;
}

template <class T>
std::vector<T> DiscreteMeasure<T>::moments(int count) const {
  std::vector<T> out(count, T(0));
  for (std::size_t k = 0; k < size(); ++k) {
    T pw = weight(k);
    const T t = point(k);
    for (int j = 0; j < count; ++j) {
      out[j] += pw;
      pw *= t;
    }
  }
  if constexpr (is_exact_v<T>)
    for (const auto& m : out) check_precision(m, "moment");
  return out;
}

template <class T>
T DiscreteMeasure<T>::hull_min() const {
  T m = atoms().front().position;
  for (const auto& a : atoms()) m = a.position < m ? a.position : m;
  return m;
}

template <class T>
T DiscreteMeasure<T>::hull_max() const {
  T m = atoms().front().position;
  for (const auto& a : atoms()) m = a.position > m ? a.position : m;
  return m;
}

template <class T>
bool DiscreteMeasure<T>::is_atom(const T& t) const {
  for (std::size_t k = 0; k < size(); ++k)
    if (point(k) == t) return true;
  return false;
}

template class DiscreteMeasure<Rational>;
template class DiscreteMeasure<Real>;

Real Potential::operator()(Real x) const {
  Real acc = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

DensityMeasure DensityMeasure::from_potential(Real a, Real b, Potential U, int order) {
  if (!(U.hbar > 0)) fail(ErrorKind::Input, "potential hbar must be positive");
  DensityMeasure m;
  m.a = a;
  m.b = b;
  m.quadrature_order = order;
  m.density = [U = std::move(U)](Real x) { return std::exp(-U(x) / U.hbar); };
  return m;
}

Real DensityMeasure::rho(Real x) const { return density(x); }

QuadratureRule gauss_legendre(Real a, Real b, int order) {
  if (order < 1) fail(ErrorKind::Input, "quadrature order must be positive");
  gsl_integration_glfixed_table* table = gsl_integration_glfixed_table_alloc(static_cast<std::size_t>(order));
  if (!table) fail(ErrorKind::Numeric, "cannot allocate Gauss-Legendre table");
  QuadratureRule rule;
  for (int i = 0; i < order; ++i) {
    double xi = 0, wi = 0;
    gsl_integration_glfixed_point(static_cast<double>(a), static_cast<double>(b), static_cast<std::size_t>(i), &xi,
                                  &wi, table);
    rule.nodes.push_back(xi);
    rule.weights.push_back(wi);
  }
  gsl_integration_glfixed_table_free(table);
  return rule;
}

DiscreteMeasure<Real> discretize(const DensityMeasure& m) {
  if (!(m.a >= 0 && m.b > m.a)) fail(ErrorKind::Input, "density support must be [a,b] with 0 <= a < b");
  if (!m.density) fail(ErrorKind::Input, "density has no weight function");
  QuadratureRule rule = gauss_legendre(m.a, m.b, m.quadrature_order);
  std::vector<Atom<Real>> atoms;
  for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
    Real r = m.density(rule.nodes[k]);
    if (!std::isfinite(r) || !(r > 0))
      fail(ErrorKind::Input, "density is not positive and finite at x = " + format_real(rule.nodes[k]));
    atoms.push_back({rule.nodes[k], rule.weights[k] * r});
  }
  return DiscreteMeasure<Real>(std::move(atoms));
}

DiscreteMeasure<Real> to_float(const DiscreteMeasure<Rational>& m) {
  std::vector<Atom<Real>> atoms;
  for (const auto& a : m.atoms()) atoms.push_back({to_real(a.position), to_real(a.weight)});
  DiscreteMeasure<Real> out(std::move(atoms));
  return m.orientation() > 0 ? out : out.reflected();
}

}  // namespace cbop::measure
