#pragma once

#include <array>
#include <optional>
#include <string>

#include "cbop/bundle.hpp"
#include "cbop/cdkernel.hpp"
#include "cbop/series.hpp"

namespace cbop::nikishin {

using measure::DiscreteMeasure;

enum class MarkovTag {
  Beta,           // int dbeta(y)/(z-y)
  AlphaStar,      // int dalpha(x)/(z+x)
  BetaAlphaStar,  //  int int dalpha dbeta / ((z-y)(x+y))
  AlphaStarBeta,  // -int int dalpha dbeta / ((z+x)(x+y))
  Alpha,
  BetaStar,
  AlphaBetaStar,
  BetaStarAlpha,
};

const char* markov_name(MarkovTag tag);

/// W_{mu1}(z) = int dmu1(t)/(z-t), or the Nikishin composite
/// W_{mu1 mu2}(z) = int dmu1(s)/(z-s) int dmu2(t)/(s-t).
template <class T>
struct MarkovFunction {
  std::string name;
  DiscreteMeasure<T> mu1;
  std::optional<DiscreteMeasure<T>> mu2;

  /// int dmu2(t)/(s-t) at the k-th atom s of mu1 (1 for a simple function).
  T inner(std::size_t k) const;

  template <class P>
  P operator()(const P& z) const {
    P acc(0);
    for (std::size_t k = 0; k < mu1.size(); ++k) {
      P d = z - Bundle<T>::template lift<P>(mu1.point(k));
      if (d == P(0)) fail(ErrorKind::PoleEvaluation, name + " evaluated on its support");
      acc += Bundle<T>::template lift<P>(T(mu1.weight(k) * inner(k))) / d;
    }
    return acc;
  }

  /// Coefficients m_j of z^{-j-1}, j < terms.
  std::vector<T> moments(int terms) const;
  Laurent<T> series(int terms) const { return Laurent<T>::from_moments(moments(terms)); }
};

template <class T>
MarkovFunction<T> markov(const DiscreteMeasure<T>& alpha, const DiscreteMeasure<T>& beta, MarkovTag tag);

/// W_beta W_alpha* - W_beta,alpha* - W_alpha*,beta, or with alpha and beta
/// swapped (W_alpha W_beta* - W_alpha,beta* - W_beta*,alpha).
template <class T, class P>
P plucker_residual(const DiscreteMeasure<T>& alpha, const DiscreteMeasure<T>& beta, const P& z, bool swapped = false) {
  MarkovTag a = swapped ? MarkovTag::Alpha : MarkovTag::Beta;
  MarkovTag b = swapped ? MarkovTag::BetaStar : MarkovTag::AlphaStar;
  MarkovTag ab = swapped ? MarkovTag::AlphaBetaStar : MarkovTag::BetaAlphaStar;
  MarkovTag ba = swapped ? MarkovTag::BetaStarAlpha : MarkovTag::AlphaStarBeta;
  return markov(alpha, beta, a)(z) * markov(alpha, beta, b)(z) - markov(alpha, beta, ab)(z) -
         markov(alpha, beta, ba)(z);
}

/// Nikishin pair (mu1, mu2): f1 = W_mu1, f12 = W_mu1mu2, g2 = W_mu2, g21 = W_mu2mu1.
template <class T>
struct NikishinPair {
  DiscreteMeasure<T> mu1, mu2;
};

/// The three Hermite-Pade problems and their Nikishin pairs.
template <class T>
NikishinPair<T> q_side_pair(const DiscreteMeasure<T>& alpha, const DiscreteMeasure<T>& beta) {
  return {beta, alpha.reflected()};
}
template <class T>
NikishinPair<T> switched_pair(const DiscreteMeasure<T>& alpha, const DiscreteMeasure<T>& beta) {
  return {alpha.reflected(), beta};
}
template <class T>
NikishinPair<T> p_side_pair(const DiscreteMeasure<T>& alpha, const DiscreteMeasure<T>& beta) {
  return {alpha, beta.reflected()};
}

///   Q f1  - P1 = R1  = O(1/z)
///   Q f12 - P12 = R12 = O(1/z)
///   Q g21 - P1 g2 + P12 = R21 = O(z^{-n-1})
template <class T>
struct PadeSolution {
  std::size_t n = 0;
  int terms = 0;
  Poly<T> Q, P1, P12;
  Laurent<T> R1, R12, R21;
};

/// Monic Q of degree n from the linear conditions on R21.
template <class T>
PadeSolution<T> pade_solve(const NikishinPair<T>& pair, std::size_t n);

/// Approximants and remainders for a given Q of degree n, via the closed
/// forms P1_i = sum_k Q_k m1_{k-1-i}, P12_i = sum_k Q_k F_{k-1-i}.
template <class T>
PadeSolution<T> pade_from(const NikishinPair<T>& pair, const Poly<T>& Q, std::size_t n);

template <class T>
struct PadeCertificate {
  bool first = false;        // Q f1 - P1 = O(1/z)
  bool second = false;       // Q f12 - P12 = O(1/z)
  bool third = false;        // R21 = O(z^{-n-1})
  bool closed_forms = false; // P1, P12 equal the polynomial parts of Q f1, Q f12
  bool equivalent = false;   // R1 g2 - R12 = R21 and R21 matches its double-integral form
  std::optional<int> third_leading;
  T worst = T(0);            // largest offending coefficient magnitude
  bool pass() const { return first && second && third && closed_forms && equivalent; }
};

template <class T>
PadeCertificate<T> order_check(const NikishinPair<T>& pair, const PadeSolution<T>& sol);

/// F(w,z) of the extended CD identities.
template <class T, class P>
std::array<std::array<P, 3>, 3> F_matrix(const Bundle<T>& b, const P& w, const P& z);

enum class FhatForm {
  Derived,    // correction matrix derived from the hatted-vector lemma
  Literal,    // W_beta(z) at (1,1) and 1 at (2,0), W_alpha*beta* read as W_alpha*beta
};

template <class T, class P>
std::array<std::array<P, 3>, 3> Fhat_matrix(const Bundle<T>& b, const P& w, const P& z, FhatForm form);

/// (w+z) q_a^T(w) Pi p_b(z) - q_a^T(w) A(-w) phat_b(z) + F_ab(w,z).
template <class T>
T ecd_residual(const Bundle<T>& b, int a, int bb, std::size_t n, const T& w, const T& z);

template <class T>
struct EcdHatResidual {
  T derived;       // with the derived correction matrix
  T literal;       // with the literal correction matrix
  T constructive;  // against q_a^T A(z) phat_b + q_a^T Pi (z-X)Lhat phat_b - [a=2] <1|q^_0> Pi phat_b
};

template <class T>
EcdHatResidual<T> ecd_hat_residual(const Bundle<T>& b, int a, int bb, std::size_t n, const T& w, const T& z);

/// q_a^T(-z) A(z) phat_b(z) - J_ab.
template <class T>
T duality_residual(const Bundle<T>& b, int a, int bb, std::size_t n, const T& z);

/// Residuals of
///   w q^_a^T(w) = q_a^T(w) Y^T Lhat  (- <1|q^_0^T> for a = 2),   columns < order-2
///   (z - X) Lhat phat_b(z) = 0, <p|z+y>/beta_0, -<p|1> + <p|z+y> W_beta*(z)/beta_0,  rows < order-1
template <class T>
struct LemmaResiduals {
  std::array<T, 3> wq{};
  std::array<T, 3> zp{};
};

template <class T>
LemmaResiduals<T> lemma_residuals(const Bundle<T>& b, const T& w, const T& z);

}  // namespace cbop::nikishin
