#include <doctest.h>

#include "cbop/nikishin.hpp"
#include "support.hpp"

using namespace cbop;
using namespace cbop::nikishin;
namespace t = cbop::testing;

TEST_CASE("Markov functions on the two-atom pair") {
  auto p = t::two_atom();
  auto wb = markov(p.alpha, p.beta, MarkovTag::Beta);
  // 1/(5-1) + 1/(5-3)
  CHECK(wb(Rational(5)) == Rational(3, 4));
  auto was = markov(p.alpha, p.beta, MarkovTag::AlphaStar);
  // 1/(5+1) + 1/(5+2)
  CHECK(was(Rational(5)) == Rational(13, 42));
  CHECK(wb.moments(3) == std::vector<Rational>{2, 4, 10});
  CHECK_THROWS_AS(wb(Rational(3)), Error);
}

TEST_CASE("Pluecker relation") {
  auto p = t::random_pairs(1, 6, 81)[0];
  for (const Rational& z : t::points(p, 10, 3)) {
    CHECK(plucker_residual(p.alpha, p.beta, z) == 0);
    CHECK(plucker_residual(p.alpha, p.beta, z, true) == 0);
  }
}

TEST_CASE("Hermite-Pade order conditions") {
  auto p = t::random_pairs(1, 6, 83)[0];
  auto b = t::bundle(p, 6);
  const auto& f = b.family();
  for (std::size_t n = 1; n <= 4; ++n) {
    CAPTURE(n);
    auto qs = q_side_pair(p.alpha, p.beta);
    auto sol = pade_solve(qs, n);
    CHECK(sol.Q == f.q[n]);
    CHECK(order_check(qs, sol).pass());

    auto ps = p_side_pair(p.alpha, p.beta);
    auto psol = pade_from(ps, f.p[n], n);
    CHECK(order_check(ps, psol).pass());

    auto sw = switched_pair(p.alpha, p.beta);
    Poly<Rational> Q = poly_reflect(f.p[n]);
    if (n % 2) Q = poly_scale(Q, Rational(-1));
    auto ssol = pade_from(sw, Q, n);
    CHECK(order_check(sw, ssol).pass());
    CHECK(pade_solve(sw, n).Q == Q);
  }
}

TEST_CASE("a wrong denominator fails the third condition") {
  auto p = t::random_pairs(1, 6, 89)[0];
  auto b = t::bundle(p, 6);
  auto qs = q_side_pair(p.alpha, p.beta);
  Poly<Rational> Q = b.family().q[3];
  Q[0] += 1;
  auto cert = order_check(qs, pade_from(qs, Q, 3));
  CHECK(cert.first);
  CHECK_FALSE(cert.third);
  CHECK_FALSE(cert.pass());
}

TEST_CASE("extended CD identities and perfect duality") {
  auto p = t::random_pairs(1, 6, 97)[0];
  auto b = t::bundle(p, 6);
  auto pts = t::points(p, 4, 13);
  for (int a = 0; a < 3; ++a)
    for (int c = 0; c < 3; ++c) {
      CAPTURE(a);
      CAPTURE(c);
      for (std::size_t n : {2, 3}) {
        CHECK(ecd_residual(b, a, c, n, pts[0], pts[1]) == 0);
        auto h = ecd_hat_residual(b, a, c, n, pts[2], pts[3]);
        CHECK(h.derived == 0);
        CHECK(h.constructive == 0);
      }
      for (std::size_t n : {2, 3, 4}) CHECK(duality_residual(b, a, c, n, pts[1]) == 0);
    }
}

TEST_CASE("literal correction matrix is off exactly at (1,1) and (2,0)") {
  auto p = t::random_pairs(1, 6, 101)[0];
  auto b = t::bundle(p, 6);
  auto pts = t::points(p, 2, 17);
  for (int a = 0; a < 3; ++a)
    for (int c = 0; c < 3; ++c) {
      auto h = ecd_hat_residual(b, a, c, 2, pts[0], pts[1]);
      bool off = (a == 1 && c == 1) || (a == 2 && c == 0);
      CAPTURE(a);
      CAPTURE(c);
      CHECK((h.literal != 0) == off);
    }
}

TEST_CASE("hatted-vector lemma") {
  auto p = t::random_pairs(1, 6, 103)[0];
  auto b = t::bundle(p, 6);
  auto pts = t::points(p, 2, 19);
  auto r = lemma_residuals(b, pts[0], pts[1]);
  for (int k = 0; k < 3; ++k) {
    CHECK(r.wq[k] == 0);
    CHECK(r.zp[k] == 0);
  }
}

TEST_CASE("window limits") {
  auto p = t::random_pairs(1, 6, 107)[0];
  auto b = t::bundle(p, 5);
  auto pts = t::points(p, 2, 23);
  CHECK_THROWS_AS(ecd_residual(b, 1, 1, 1, pts[0], pts[1]), Error);
  CHECK_THROWS_AS(ecd_residual(b, 1, 1, 4, pts[0], pts[1]), Error);
  CHECK(ecd_residual(b, 1, 1, 3, pts[0], pts[1]) == 0);
}
