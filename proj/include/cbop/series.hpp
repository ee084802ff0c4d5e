#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "cbop/poly.hpp"
#include "cbop/scalar.hpp"

namespace cbop {

/// Truncated Laurent expansion at infinity.
///
/// Holds the coefficients of z^k for floor() <= k <= top(); every power below
/// floor() is unknown. Products and sums propagate the tracked range.
template <class T>
class Laurent {
 public:
  Laurent() = default;
  Laurent(int top, int floor) : top_(top), floor_(floor), c_(top >= floor ? top - floor + 1 : 0, T(0)) {}

  static Laurent from_poly(const Poly<T>& p, int floor) {
    int top = std::max<int>(static_cast<int>(p.size()) - 1, floor);
    Laurent s(top, floor);
    for (int k = 0; k < static_cast<int>(p.size()); ++k)
      if (k >= floor) s.coeff(k) = p[k];
    return s;
  }

  /// sum_j m[j] z^{-j-1}, j = 0..m.size()-1
  static Laurent from_moments(const std::vector<T>& m) {
    int n = static_cast<int>(m.size());
    Laurent s(-1, -n);
    for (int j = 0; j < n; ++j) s.coeff(-j - 1) = m[j];
    return s;
  }

  int top() const { return top_; }
  int floor() const { return floor_; }

  T& coeff(int k) { return c_[k - floor_]; }
  T coeff(int k) const { return (k < floor_ || k > top_) ? T(0) : c_[k - floor_]; }

  /// Highest power with a non-zero tracked coefficient.
  std::optional<int> leading_power() const {
    for (int k = top_; k >= floor_; --k)
      if (!is_zero(coeff(k))) return k;
    return std::nullopt;
  }

  /// True when every tracked coefficient of z^k, k >= from, vanishes.
  bool vanishes_from(int from) const {
    for (int k = std::max(from, floor_); k <= top_; ++k)
      if (!is_zero(coeff(k))) return false;
    return true;
  }

  /// Largest |coefficient| of z^k, k >= from.
  T max_abs_from(int from) const {
    T m(0);
    for (int k = std::max(from, floor_); k <= top_; ++k) {
      T a = abs_of(coeff(k));
      if (a > m) m = a;
    }
    return m;
  }

  /// Coefficients of z^0..z^top as a polynomial.
  Poly<T> polynomial_part() const {
    Poly<T> p;
    for (int k = 0; k <= top_; ++k) p.push_back(coeff(k));
    return p;
  }

  Laurent scaled(const T& s) const {
    Laurent out = *this;
    for (auto& v : out.c_) v *= s;
    return out;
  }

  /// Multiplication by z^shift.
  Laurent shifted(int shift) const {
    Laurent out = *this;
    out.top_ += shift;
    out.floor_ += shift;
    return out;
  }

  friend Laurent operator+(const Laurent& a, const Laurent& b) {
    int fl = std::max(a.floor_, b.floor_);
    int top = std::max(a.top_, b.top_);
    Laurent out(top, fl);
    for (int k = fl; k <= top; ++k) out.coeff(k) = a.coeff(k) + b.coeff(k);
    return out;
  }

  friend Laurent operator-(const Laurent& a, const Laurent& b) { return a + b.scaled(T(-1)); }

  friend Laurent operator*(const Laurent& a, const Laurent& b) {
    int fl = std::max(a.top_ + b.floor_, b.top_ + a.floor_);
    int top = a.top_ + b.top_;
    Laurent out(top, fl);
    for (int i = a.floor_; i <= a.top_; ++i) {
      const T& ai = a.coeff(i);
      if (is_zero(ai)) continue;
      for (int j = b.floor_; j <= b.top_; ++j) {
        int k = i + j;
        if (k < fl) continue;
        out.coeff(k) += ai * b.coeff(j);
      }
    }
    return out;
  }

 private:
  int top_ = -1;
  int floor_ = 0;
  std::vector<T> c_;
};

}  // namespace cbop
