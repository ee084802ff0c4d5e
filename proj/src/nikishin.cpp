#include "cbop/nikishin.hpp"

namespace cbop::nikishin {

const char* markov_name(MarkovTag tag) {
  switch (tag) {
    case MarkovTag::Beta: return "W_beta";
    case MarkovTag::AlphaStar: return "W_alpha*";
    case MarkovTag::BetaAlphaStar: return "W_beta,alpha*";
    case MarkovTag::AlphaStarBeta: return "W_alpha*,beta";
    case MarkovTag::Alpha: return "W_alpha";
    case MarkovTag::BetaStar: return "W_beta*";
    case MarkovTag::AlphaBetaStar: return "W_alpha,beta*";
    case MarkovTag::BetaStarAlpha: return "W_beta*,alpha";
  }
  return "W";
}

template <class T>
T MarkovFunction<T>::inner(std::size_t k) const {
  if (!mu2) return T(1);
  const T s = mu1.point(k);
  T acc(0);
  for (std::size_t m = 0; m < mu2->size(); ++m) acc += mu2->weight(m) / (s - mu2->point(m));
  return acc;
}

template <class T>
std::vector<T> MarkovFunction<T>::moments(int terms) const {
  std::vector<T> out(terms, T(0));
  for (std::size_t k = 0; k < mu1.size(); ++k) {
    T c = mu1.weight(k) * inner(k);
    const T s = mu1.point(k);
    for (int j = 0; j < terms; ++j) {
      out[j] += c;
      c *= s;
    }
  }
  return out;
}

template <class T>
MarkovFunction<T> markov(const DiscreteMeasure<T>& alpha, const DiscreteMeasure<T>& beta, MarkovTag tag) {
  const auto as = alpha.reflected(), bs = beta.reflected();
  std::string name = markov_name(tag);
  switch (tag) {
    case MarkovTag::Beta: return {name, beta, std::nullopt};
    case MarkovTag::AlphaStar: return {name, as, std::nullopt};
    case MarkovTag::BetaAlphaStar: return {name, beta, as};
    case MarkovTag::AlphaStarBeta: return {name, as, beta};
    case MarkovTag::Alpha: return {name, alpha, std::nullopt};
    case MarkovTag::BetaStar: return {name, bs, std::nullopt};
    case MarkovTag::AlphaBetaStar: return {name, alpha, bs};
    case MarkovTag::BetaStarAlpha: return {name, bs, alpha};
  }
  fail(ErrorKind::Input, "unknown Markov function");
}

namespace {

template <class T>
struct PairSeries {
  std::vector<T> m1, f12, m2, g21;
};

template <class T>
PairSeries<T> pair_series(const NikishinPair<T>& pair, int terms) {
  MarkovFunction<T> f1{"f1", pair.mu1, std::nullopt}, f12{"f12", pair.mu1, pair.mu2};
  MarkovFunction<T> g2{"g2", pair.mu2, std::nullopt}, g21{"g21", pair.mu2, pair.mu1};
  return {f1.moments(terms), f12.moments(terms), g2.moments(terms), g21.moments(terms)};
}

template <class T>
Poly<T> approximant(const Poly<T>& Q, const std::vector<T>& m) {
  const std::size_t n = Q.size() - 1;
  Poly<T> P(n, T(0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = i + 1; k <= n; ++k) P[i] += Q[k] * m[k - 1 - i];
  return P;
}

template <class T>
bool small(const T& v, const T& tol) {
  return abs_of(v) <= tol;
}

template <class T>
T default_tol() {
  if constexpr (is_exact_v<T>)
    return T(0);
  else
    return T(1e-9L);
}

}  // namespace

template <class T>
PadeSolution<T> pade_from(const NikishinPair<T>& pair, const Poly<T>& Q, std::size_t n) {
  if (Q.size() != n + 1) fail(ErrorKind::Input, "Pade: Q must have degree n");
  const int terms = static_cast<int>(2 * n + 4);
  PairSeries<T> s = pair_series(pair, terms);
  PadeSolution<T> sol;
  sol.n = n;
  sol.terms = terms;
  sol.Q = Q;
  sol.P1 = approximant(Q, s.m1);
  sol.P12 = approximant(Q, s.f12);
  const int low = -(terms + static_cast<int>(n) + 8);
  Laurent<T> q = Laurent<T>::from_poly(Q, low);
  Laurent<T> p1 = Laurent<T>::from_poly(sol.P1, low), p12 = Laurent<T>::from_poly(sol.P12, low);
  Laurent<T> f1 = Laurent<T>::from_moments(s.m1), f12 = Laurent<T>::from_moments(s.f12);
  Laurent<T> g2 = Laurent<T>::from_moments(s.m2), g21 = Laurent<T>::from_moments(s.g21);
  sol.R1 = q * f1 - p1;
  sol.R12 = q * f12 - p12;
  sol.R21 = q * g21 - p1 * g2 + p12;
  return sol;
}

template <class T>
PadeSolution<T> pade_solve(const NikishinPair<T>& pair, std::size_t n) {
  if (n < 1) fail(ErrorKind::OrderUnderflow, "Pade: degree must be positive");
  std::vector<Laurent<T>> basis;
  for (std::size_t k = 0; k <= n; ++k) {
    Poly<T> e(n + 1, T(0));
    e[k] = T(1);
    basis.push_back(pade_from(pair, e, n).R21);
  }
  Matrix<T> a(n, n);
  std::vector<T> rhs(n);
  for (std::size_t j = 1; j <= n; ++j) {
    const int pw = -static_cast<int>(j);
    for (std::size_t k = 0; k < n; ++k) a(j - 1, k) = basis[k].coeff(pw);
    rhs[j - 1] = -basis[n].coeff(pw);
  }
  std::vector<T> x = solve_linear(std::move(a), std::move(rhs));
  Poly<T> Q(x.begin(), x.end());
  Q.push_back(T(1));
  return pade_from(pair, Q, n);
}

template <class T>
PadeCertificate<T> order_check(const NikishinPair<T>& pair, const PadeSolution<T>& sol) {
  const T tol = default_tol<T>();
  const int n = static_cast<int>(sol.n);
  PairSeries<T> s = pair_series(pair, sol.terms);
  PadeCertificate<T> c;
  auto track = [&](const T& v) {
    T a = abs_of(v);
    if (a > c.worst) c.worst = a;
    return small(v, tol);
  };

  c.first = track(sol.R1.max_abs_from(0));
  c.second = track(sol.R12.max_abs_from(0));
  c.third = track(sol.R21.max_abs_from(-n));
  c.third_leading = sol.R21.leading_power();

  // remainders against sum_k Q_k m_{k+j}
  c.closed_forms = true;
  for (int j = 0; j + n < sol.terms; ++j) {
    const int pw = -j - 1;
    if (pw < sol.R1.floor()) break;
    T r1(0), r12(0);
    for (int k = 0; k <= n; ++k) {
      r1 += sol.Q[k] * s.m1[k + j];
      r12 += sol.Q[k] * s.f12[k + j];
    }
    if (!track(T(sol.R1.coeff(pw) - r1)) || !track(T(sol.R12.coeff(pw) - r12))) c.closed_forms = false;
  }

  // R1 g2 - R12 = R21, and R21 as int int Q(s)/((z-t)(t-s)) dmu1(s) dmu2(t)
  c.equivalent = true;
  Laurent<T> lhs = sol.R1 * Laurent<T>::from_moments(s.m2) - sol.R12;
  const int lo = std::max(lhs.floor(), sol.R21.floor());
  for (int pw = lo; pw <= std::max(lhs.top(), sol.R21.top()); ++pw)
    if (!track(T(lhs.coeff(pw) - sol.R21.coeff(pw)))) c.equivalent = false;
  std::vector<T> direct(sol.terms, T(0));
  for (std::size_t b = 0; b < pair.mu2.size(); ++b) {
    const T t = pair.mu2.point(b);
    T inner(0);
    for (std::size_t a = 0; a < pair.mu1.size(); ++a) {
      const T sp = pair.mu1.point(a);
      inner += pair.mu1.weight(a) * horner(sol.Q, sp) / (t - sp);
    }
    T c0 = pair.mu2.weight(b) * inner;
    for (int j = 0; j < sol.terms; ++j) {
      direct[j] += c0;
      c0 *= t;
    }
  }
  for (int j = 0; j < sol.terms; ++j) {
    const int pw = -j - 1;
    if (pw < sol.R21.floor()) break;
    if (!track(T(sol.R21.coeff(pw) - direct[j]))) c.equivalent = false;
  }
  return c;
}

template <class T, class P>
std::array<std::array<P, 3>, 3> F_matrix(const Bundle<T>& b, const P& w, const P& z) {
  const auto& al = b.alpha();
  const auto& be = b.beta();
  P Wb_w = markov(al, be, MarkovTag::Beta)(w);
  P Wbs_z = markov(al, be, MarkovTag::BetaStar)(z);
  P Wa_z = markov(al, be, MarkovTag::Alpha)(z);
  P Was_w = markov(al, be, MarkovTag::AlphaStar)(w);
  P Wasb_w = markov(al, be, MarkovTag::AlphaStarBeta)(w);
  P Wbsa_z = markov(al, be, MarkovTag::BetaStarAlpha)(z);
  std::array<std::array<P, 3>, 3> F{};
  F[0] = {P(0), P(0), P(1)};
  F[1] = {P(0), P(1), P(Wbs_z + Wb_w)};
  F[2] = {P(1), P(Wa_z + Was_w), P(Was_w * Wbs_z + Wasb_w + Wbsa_z)};
  return F;
}

template <class T, class P>
std::array<std::array<P, 3>, 3> Fhat_matrix(const Bundle<T>& b, const P& w, const P& z, FhatForm form) {
  const auto& al = b.alpha();
  const auto& be = b.beta();
  auto F = F_matrix(b, w, z);
  P Wbs_z = markov(al, be, MarkovTag::BetaStar)(z);
  P Wb_w = markov(al, be, MarkovTag::Beta)(w);
  P Wasb_w = markov(al, be, MarkovTag::AlphaStarBeta)(w);
  std::array<std::array<P, 3>, 3> C{};
  C[0] = {P(0), P(1), Wbs_z};
  C[1] = {P(0), Wb_w, P(Wb_w * Wbs_z)};
  C[2] = {P(0), Wasb_w, P(Wasb_w * Wbs_z)};
  if (form == FhatForm::Literal) {
    C[1][1] = markov(al, be, MarkovTag::Beta)(z);
    C[2][0] = P(1);
  }
  P f = (w + z) / Bundle<T>::template lift<P>(b.beta_moments()[0]);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) F[i][j] -= f * C[i][j];
  return F;
}

namespace {

template <class T>
void require_window(const Bundle<T>& b, std::size_t n, const char* what) {
  // At n = 1 the block would need p^_{b,-1}, which is not zero for b >= 1
  // (p^_1 carries the <p_0|1>/beta_0 shift), so the window starts at 2.
  if (n < 2 || n + 2 > b.order())
    fail(ErrorKind::OrderUnderflow, std::string(what) + " needs 2 <= n <= order-2");
}

template <class T>
void require_index(int a) {
  if (a < 0 || a > 2) fail(ErrorKind::Input, "auxiliary index must be 0, 1 or 2");
}

// (z - X) Lhat phat_b(z), rows 0..order-2
template <class T>
std::vector<T> zx_lhat_phat(const Bundle<T>& b, const std::vector<T>& ph, const T& z) {
  const auto& r = b.rec();
  const std::size_t N = b.order();
  std::vector<T> u(N);
  for (std::size_t i = 0; i < N; ++i) u[i] = (i > 0 ? T(ph[i - 1] - ph[i]) : T(-ph[i])) / r.eta[i];
  std::vector<T> v;
  for (std::size_t i = 0; i + 1 < N; ++i) {
    T s = z * u[i];
    for (std::size_t j = 0; j <= i + 1; ++j) s -= r.X(i, j) * u[j];
    v.push_back(s);
  }
  return v;
}

template <class T>
T one_dot_qhat(const Bundle<T>& b, std::size_t k) {
  return bop::pairing(b.bimoments(), Poly<T>{T(1)}, b.hatted().qhat[k]);
}

}  // namespace

template <class T>
T ecd_residual(const Bundle<T>& b, int a, int bb, std::size_t n, const T& w, const T& z) {
  require_window(b, n, "extended CD identity");
  require_index<T>(a);
  require_index<T>(bb);
  auto blk = cdkernel::commutator_block(b.rec(), n);
  auto qa = b.q_vec(a, w);
  auto pb = b.p_vec(bb, z);
  auto phb = b.phat_vec(bb, z);
  T lhs(0);
  for (std::size_t k = 0; k < n; ++k) lhs += qa[k] * pb[k];
  lhs *= w + z;
  auto F = F_matrix(b, w, z);
  return lhs - (cdkernel::block_pairing(blk, qa, phb, T(-w)) - F[a][bb]);
}

template <class T>
EcdHatResidual<T> ecd_hat_residual(const Bundle<T>& b, int a, int bb, std::size_t n, const T& w, const T& z) {
  require_window(b, n, "hatted extended CD identity");
  require_index<T>(a);
  require_index<T>(bb);
  auto blk = cdkernel::commutator_block(b.rec(), n);
  auto qa = b.q_vec(a, w);
  auto qha = b.qhat_vec(a, w);
  auto phb = b.phat_vec(bb, z);
  T lhs(0);
  for (std::size_t k = 0; k < n; ++k) lhs += qha[k] * phb[k];
  lhs *= w + z;
  T core = cdkernel::block_pairing(blk, qa, phb, z);
  auto Fd = Fhat_matrix(b, w, z, FhatForm::Derived);
  auto Fp = Fhat_matrix(b, w, z, FhatForm::Literal);

  auto v = zx_lhat_phat(b, phb, z);
  T extra(0);
  for (std::size_t i = 0; i < n; ++i) extra += qa[i] * v[i];
  if (a == 2)
    for (std::size_t k = 0; k < n; ++k) extra -= one_dot_qhat(b, k) * phb[k];

  return {T(lhs - (core - Fd[a][bb])), T(lhs - (core - Fp[a][bb])), T(lhs - (core + extra))};
}

template <class T>
T duality_residual(const Bundle<T>& b, int a, int bb, std::size_t n, const T& z) {
  require_window(b, n, "perfect duality");
  require_index<T>(a);
  require_index<T>(bb);
  auto blk = cdkernel::commutator_block(b.rec(), n);
  auto qa = b.q_vec(a, T(-z));
  auto phb = b.phat_vec(bb, z);
  T J(a + bb == 2 ? 1 : 0);
  return cdkernel::block_pairing(blk, qa, phb, z) - J;
}

template <class T>
LemmaResiduals<T> lemma_residuals(const Bundle<T>& b, const T& w, const T& z) {
  const std::size_t N = b.order();
  if (N < 3) fail(ErrorKind::OrderUnderflow, "lemma residuals need order >= 3");
  const auto& r = b.rec();
  LemmaResiduals<T> res;
  Matrix<T> YtL = r.Y.transpose() * r.Lhat;
  for (int a = 0; a < 3; ++a) {
    auto q = b.q_vec(a, w);
    auto qh = b.qhat_vec(a, w);
    T worst(0);
    for (std::size_t k = 0; k + 3 <= N; ++k) {
      T rhs(0);
      for (std::size_t i = 0; i < N; ++i) rhs += q[i] * YtL(i, k);
      if (a == 2) rhs -= one_dot_qhat(b, k);
      worst = max_abs_entry(worst, T(w * qh[k] - rhs));
    }
    res.wq[a] = worst;
  }
  const T beta0 = b.beta_moments()[0];
  const T Wbs = markov(b.alpha(), b.beta(), MarkovTag::BetaStar)(z);
  for (int bb = 0; bb < 3; ++bb) {
    auto v = zx_lhat_phat(b, b.phat_vec(bb, z), z);
    T worst(0);
    for (std::size_t i = 0; i < v.size(); ++i) {
      const T p1 = b.p_dot_one()[i];
      const T py = bop::pairing(b.bimoments(), b.family().p[i], Poly<T>{T(0), T(1)});
      const T zy = z * p1 + py;
      T expect(0);
      if (bb == 1) expect = zy / beta0;
      if (bb == 2) expect = -p1 + zy * Wbs / beta0;
      worst = max_abs_entry(worst, T(v[i] - expect));
    }
    res.zp[bb] = worst;
  }
  return res;
}

#define CBOP_INSTANTIATE(T)                                                                                       \
  template struct MarkovFunction<T>;                                                                             \
  template MarkovFunction<T> markov(const DiscreteMeasure<T>&, const DiscreteMeasure<T>&, MarkovTag);            \
  template PadeSolution<T> pade_from(const NikishinPair<T>&, const Poly<T>&, std::size_t);                       \
  template PadeSolution<T> pade_solve(const NikishinPair<T>&, std::size_t);                                      \
  template PadeCertificate<T> order_check(const NikishinPair<T>&, const PadeSolution<T>&);                       \
  template std::array<std::array<T, 3>, 3> F_matrix(const Bundle<T>&, const T&, const T&);                       \
  template std::array<std::array<T, 3>, 3> Fhat_matrix(const Bundle<T>&, const T&, const T&, FhatForm);          \
  template T ecd_residual(const Bundle<T>&, int, int, std::size_t, const T&, const T&);                          \
  template EcdHatResidual<T> ecd_hat_residual(const Bundle<T>&, int, int, std::size_t, const T&, const T&);      \
  template T duality_residual(const Bundle<T>&, int, int, std::size_t, const T&);                                \
  template LemmaResiduals<T> lemma_residuals(const Bundle<T>&, const T&, const T&);

CBOP_INSTANTIATE(Rational)
CBOP_INSTANTIATE(Real)

template std::array<std::array<Complex, 3>, 3> F_matrix(const Bundle<Real>&, const Complex&, const Complex&);

}  // namespace cbop::nikishin
