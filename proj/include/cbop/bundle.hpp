#pragma once

#include <complex>
#include <type_traits>
#include <vector>

#include "cbop/bimoment.hpp"
#include "cbop/bop.hpp"
#include "cbop/measure.hpp"
#include "cbop/recurrence.hpp"

namespace cbop {

/// Everything derived from a measure pair at a fixed order: bimoments,
/// the biorthogonal family, recurrence operators, hatted polynomials and
/// evaluators for the auxiliary vectors.
///
/// Frame: p_k = p~_k, q_k = q~_k / h_k (see recurrence::Recurrence).
/// Auxiliary vectors:
///   q_1(w) = int q(y)/(w-y) dbeta,     q_2(w) = int q_1(t)/(w-t) dalpha*(t),
///   p_1(z) = int p(x)/(z-x) dalpha,    p_2(z) = int p_1(t)/(z-t) dbeta*(t),
///   p^_1 = Lhat^{-1}(p_1 + <p|1>/beta_0),  p^_2(z) = int p^_1(t)/(z-t) dbeta*(t),
///   q^_a = Lhat^T q_a.
template <class T>
class Bundle {
 public:
  using Measure = measure::DiscreteMeasure<T>;

  /// depth: number of moments / bimoment rows and columns tracked for
  /// series work (at least order + 2).
  Bundle(Measure alpha, Measure beta, std::size_t order, std::size_t depth = 0);

  std::size_t order() const { return order_; }
  std::size_t depth() const { return depth_; }
  const Measure& alpha() const { return alpha_; }
  const Measure& beta() const { return beta_; }
  Measure alpha_star() const { return alpha_.reflected(); }
  Measure beta_star() const { return beta_.reflected(); }
  const bimoment::BimomentMatrix<T>& bimoments() const { return I_; }
  const std::vector<T>& alpha_moments() const { return am_; }
  const std::vector<T>& beta_moments() const { return bm_; }
  const bop::PolynomialFamily<T>& family() const { return family_; }
  const bop::Averages<T>& averages() const { return avg_; }
  const recurrence::Recurrence<T>& rec() const { return rec_; }
  const recurrence::HattedFamily<T>& hatted() const { return hatted_; }
  /// <p~_k|1>
  const std::vector<T>& p_dot_one() const { return p_one_; }

  template <class P>
  static P lift(const T& v) {
    if constexpr (std::is_same_v<P, T>)
      return v;
    else
      return P(to_real(v));
  }

  /// k = 0..order-1 of the a-th auxiliary q-vector at w.
  template <class P>
  std::vector<P> q_vec(int a, const P& w) const;
  template <class P>
  std::vector<P> p_vec(int b, const P& z) const;
  template <class P>
  std::vector<P> phat_vec(int b, const P& z) const;
  /// k = 0..order-2.
  template <class P>
  std::vector<P> qhat_vec(int a, const P& w) const;

  /// Monic windows: q~_{a,k} = h_k q_{a,k}.
  template <class P>
  std::vector<P> qmonic_vec(int a, const P& w) const {
    std::vector<P> v = q_vec(a, w);
    for (std::size_t k = 0; k < v.size(); ++k) v[k] *= lift<P>(family_.h[k]);
    return v;
  }

 private:
  template <class P>
  static P pole_guard(const P& d) {
    if constexpr (std::is_same_v<P, T>) {
      if (is_zero(d)) fail(ErrorKind::PoleEvaluation, "evaluation point lies on a support atom");
    } else {
      if (d == P(0)) fail(ErrorKind::PoleEvaluation, "evaluation point lies on a support atom");
    }
    return d;
  }

  Measure alpha_, beta_;
  std::size_t order_, depth_;
  bimoment::BimomentMatrix<T> I_;
  std::vector<T> am_, bm_;
  bop::PolynomialFamily<T> family_;
  bop::Averages<T> avg_;
  recurrence::Recurrence<T> rec_;
  recurrence::HattedFamily<T> hatted_;
  std::vector<T> p_one_;
};

template <class T>
template <class P>
std::vector<P> Bundle<T>::q_vec(int a, const P& w) const {
  const std::size_t n = order_;
  std::vector<P> out(n, P(0));
  if (a == 0) {
    for (std::size_t k = 0; k < n; ++k) out[k] = horner(family_.q[k], w) / lift<P>(family_.h[k]);
    return out;
  }
  if (a == 1) {
    for (std::size_t m = 0; m < beta_.size(); ++m) {
      const T y = beta_.point(m);
      P c = lift<P>(beta_.weight(m)) / pole_guard(P(w - lift<P>(y)));
      for (std::size_t k = 0; k < n; ++k) out[k] += c * lift<P>(T(horner(family_.q[k], y) / family_.h[k]));
    }
    return out;
  }
  if (a == 2) {
    const Measure as = alpha_star();
    for (std::size_t l = 0; l < as.size(); ++l) {
      const T t = as.point(l);
      std::vector<T> q1 = q_vec<T>(1, t);
      P c = lift<P>(as.weight(l)) / pole_guard(P(w - lift<P>(t)));
      for (std::size_t k = 0; k < n; ++k) out[k] += c * lift<P>(q1[k]);
    }
    return out;
  }
  fail(ErrorKind::Input, "auxiliary index must be 0, 1 or 2");
}

template <class T>
template <class P>
std::vector<P> Bundle<T>::p_vec(int b, const P& z) const {
  const std::size_t n = order_;
  std::vector<P> out(n, P(0));
  if (b == 0) {
    for (std::size_t k = 0; k < n; ++k) out[k] = horner(family_.p[k], z);
    return out;
  }
  if (b == 1) {
    for (std::size_t l = 0; l < alpha_.size(); ++l) {
      const T x = alpha_.point(l);
      P c = lift<P>(alpha_.weight(l)) / pole_guard(P(z - lift<P>(x)));
      for (std::size_t k = 0; k < n; ++k) out[k] += c * lift<P>(T(horner(family_.p[k], x)));
    }
    return out;
  }
  if (b == 2) {
    const Measure bs = beta_star();
    for (std::size_t m = 0; m < bs.size(); ++m) {
      const T t = bs.point(m);
      std::vector<T> p1 = p_vec<T>(1, t);
      P c = lift<P>(bs.weight(m)) / pole_guard(P(z - lift<P>(t)));
      for (std::size_t k = 0; k < n; ++k) out[k] += c * lift<P>(p1[k]);
    }
    return out;
  }
  fail(ErrorKind::Input, "auxiliary index must be 0, 1 or 2");
}

template <class T>
template <class P>
std::vector<P> Bundle<T>::phat_vec(int b, const P& z) const {
  const std::size_t n = order_;
  std::vector<P> out(n, P(0));
  if (b == 0) {
    for (std::size_t k = 0; k < n; ++k) out[k] = horner(hatted_.phat[k], z);
    return out;
  }
  if (b == 1) {
    std::vector<P> p1 = p_vec(1, z);
    P acc(0);
    for (std::size_t k = 0; k < n; ++k) {
      acc -= lift<P>(rec_.eta[k]) * (p1[k] + lift<P>(T(p_one_[k] / bm_[0])));
      out[k] = acc;
    }
    return out;
  }
  if (b == 2) {
    const Measure bs = beta_star();
    for (std::size_t m = 0; m < bs.size(); ++m) {
      const T t = bs.point(m);
      std::vector<T> ph1 = phat_vec<T>(1, t);
      P c = lift<P>(bs.weight(m)) / pole_guard(P(z - lift<P>(t)));
      for (std::size_t k = 0; k < n; ++k) out[k] += c * lift<P>(ph1[k]);
    }
    return out;
  }
  fail(ErrorKind::Input, "auxiliary index must be 0, 1 or 2");
}

template <class T>
template <class P>
std::vector<P> Bundle<T>::qhat_vec(int a, const P& w) const {
  std::vector<P> q = q_vec(a, w);
  std::vector<P> out;
  for (std::size_t k = 0; k + 1 < order_; ++k)
    out.push_back(q[k + 1] / lift<P>(rec_.eta[k + 1]) - q[k] / lift<P>(rec_.eta[k]));
  return out;
}

extern template class Bundle<Rational>;
extern template class Bundle<Real>;

}  // namespace cbop
