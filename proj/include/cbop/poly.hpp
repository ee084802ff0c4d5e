#pragma once

#include <vector>

#include "cbop/scalar.hpp"

namespace cbop {

/// Coefficient vector in ascending powers: c[k] multiplies t^k.
template <class T>
using Poly = std::vector<T>;

template <class T, class P>
P horner(const Poly<T>& c, const P& t) {
  P acc(0);
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * t + P(*it);
  return acc;
}

template <class T>
Poly<T> poly_scale(Poly<T> c, const T& s) {
  for (auto& v : c) v *= s;
  return c;
}

template <class T>
Poly<T> poly_axpy(Poly<T> y, const T& a, const Poly<T>& x) {
  if (y.size() < x.size()) y.resize(x.size(), T(0));
  for (std::size_t k = 0; k < x.size(); ++k) y[k] += a * x[k];
  return y;
}

/// Substitutes t -> -t.
template <class T>
Poly<T> poly_reflect(Poly<T> c) {
  for (std::size_t k = 1; k < c.size(); k += 2) c[k] = -c[k];
  return c;
}

}  // namespace cbop
