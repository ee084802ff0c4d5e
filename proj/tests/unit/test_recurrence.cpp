#include <doctest.h>

#include "cbop/bundle.hpp"
#include "cbop/recurrence.hpp"
#include "support.hpp"

using namespace cbop;
using namespace cbop::recurrence;
namespace t = cbop::testing;

TEST_CASE("two-atom recurrence frame") {
  auto b = t::bundle(t::two_atom(), 2);
  const auto& r = b.rec();
  CHECK(r.pi[1] == Rational(13, 77));
  // eta in the q~/h frame
  CHECK(r.eta[1] == Rational(46, 77) / Rational(2, 77));
  CHECK(r.eta[0] == 2 / Rational(77, 60));
  CHECK(r.X(0, 1) == 1);
}

TEST_CASE("band structure and operator identities") {
  for (const auto& p : t::random_pairs(2, 6, 31)) {
    auto b = t::bundle(p, 6);
    const auto& r = b.rec();
    CHECK(r.A.lo == -1);
    CHECK(r.A.hi == 2);
    CHECK(r.Ahat.lo == -2);
    CHECK(r.Ahat.hi == 1);
    CHECK(r.A.support_violation() == 0);
    CHECK(r.Ahat.support_violation() == 0);
    auto oc = operator_checks(r);
    CHECK(oc.rank_one == 0);
    CHECK(oc.b_plus_at == 0);
    CHECK(oc.bhat_plus_ahat_t == 0);
    CHECK(oc.lx_plus_lyt == 0);
    CHECK(oc.xlhat_plus_ytlhat == 0);
    CHECK(oc.hessenberg == 0);
    CHECK(max_abs(rank_one_XY_residual(r.X, r.Ymonic, b.family(), b.averages())) == 0);
  }
}

TEST_CASE("four-term recurrence at rational points") {
  auto p = t::random_pairs(1, 6, 41)[0];
  auto b = t::bundle(p, 6);
  auto pts = t::points(p, 12, 7);
  for (std::size_t n = 1; n <= 4; ++n)
    for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
      auto [rp, rq] = four_term_residual(b.family(), b.rec(), n, pts[k], pts[k + 1]);
      CHECK(rp == 0);
      CHECK(rq == 0);
    }
}

TEST_CASE("hatted families") {
  auto p = t::random_pairs(1, 6, 43)[0];
  auto b = t::bundle(p, 6);
  auto hc = verify_hatted(b.hatted(), b.family(), b.rec(), b.bimoments(), b.beta_moments());
  CHECK(hc.degrees_ok);
  CHECK(hc.qhat_mean == 0);
  CHECK(hc.biorthogonal == 0);
  CHECK(hc.leading == 0);
  CHECK(hc.phat_moments == 0);
  for (std::size_t n = 1; n <= 3; ++n) {
    auto [qh, ph] = hatted_determinantal_oracle(b.bimoments(), b.beta_moments(), b.averages(), n);
    CHECK(qh == b.hatted().qhat[n]);
    CHECK(ph == b.hatted().phat[n]);
  }
}

TEST_CASE("X is oscillatory") {
  auto b = t::bundle(t::random_pairs(1, 6, 47)[0], 6);
  auto c = tn_oscillatory_certificate(b.rec().X, 3);
  CHECK(c.totally_nonnegative);
  CHECK(c.invertible);
  CHECK(c.positive_off_diagonals);
  CHECK(c.oscillatory);
  CHECK(c.checked > 0);
}

TEST_CASE("float recurrence tracks the exact one") {
  auto p = t::random_pairs(1, 6, 53)[0];
  auto e = t::bundle(p, 5);
  Bundle<Real> f(measure::to_float(p.alpha), measure::to_float(p.beta), 5);
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j) {
      Real ex = to_real(e.rec().X(i, j));
      CHECK(std::abs(f.rec().X(i, j) - ex) <= 1e-9L * (1 + std::abs(ex)));
    }
}
