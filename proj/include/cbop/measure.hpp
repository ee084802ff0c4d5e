#pragma once

#include <functional>
#include <memory>
#include <variant>
#include <vector>

#include "cbop/scalar.hpp"

namespace cbop::measure {

template <class T>
struct Atom {
  T position;
  T weight;
};

/// Finite positive measure on R+, optionally viewed through t -> -t.
///
/// A reflected measure shares its atom list with the original; only the
/// orientation flag differs.
template <class T>
class DiscreteMeasure {
 public:
  DiscreteMeasure() = default;
  explicit DiscreteMeasure(std::vector<Atom<T>> atoms);

  std::size_t size() const { return atoms_ ? atoms_->size() : 0; }
  int orientation() const { return orientation_; }
  const std::vector<Atom<T>>& atoms() const { return *atoms_; }

  /// Support point in the current orientation (negated when reflected).
  T point(std::size_t k) const { return orientation_ > 0 ? (*atoms_)[k].position : T(-(*atoms_)[k].position); }
  const T& weight(std::size_t k) const { return (*atoms_)[k].weight; }

  /// j-th moment in the current orientation.
  T moment(int j) const;
  std::vector<T> moments(int count) const;

  DiscreteMeasure reflected() const {
    DiscreteMeasure out = *this;
    out.orientation_ = -orientation_;
    return out;
  }

  /// Smallest and largest atom position (orientation ignored).
  T hull_min() const;
  T hull_max() const;

  bool is_atom(const T& t) const;

 private:
  std::shared_ptr<const std::vector<Atom<T>>> atoms_;
  int orientation_ = 1;
};

template <class T>
DiscreteMeasure<T> reflect(const DiscreteMeasure<T>& m) {
  return m.reflected();
}

/// Weight exp(-U(x)/hbar) on [a,b], U a polynomial.
struct Potential {
  std::vector<Real> coeffs;
  Real hbar = 1;
  Real operator()(Real x) const;
};

struct DensityMeasure {
  Real a = 0, b = 1;
  std::function<Real(Real)> density;
  int quadrature_order = 32;

  static DensityMeasure from_potential(Real a, Real b, Potential U, int order);
  Real rho(Real x) const;
};

/// Gauss-Legendre rule on [a,b].
struct QuadratureRule {
  std::vector<Real> nodes;
  std::vector<Real> weights;
};

QuadratureRule gauss_legendre(Real a, Real b, int order);

/// Atoms (x_k, w_k rho(x_k)) of the Gauss-Legendre rule.
DiscreteMeasure<Real> discretize(const DensityMeasure& m);

DiscreteMeasure<Real> to_float(const DiscreteMeasure<Rational>& m);

using Measure = std::variant<DiscreteMeasure<Rational>, DensityMeasure>;

}  // namespace cbop::measure
