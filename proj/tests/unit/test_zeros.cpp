#include <doctest.h>

#include "cbop/zeros.hpp"
#include "support.hpp"

using namespace cbop;
using namespace cbop::zeros;
namespace t = cbop::testing;

TEST_CASE("two-atom p~_1 has its zero at 109/77") {
  auto b = t::bundle(t::two_atom(), 2);
  auto z = zeros_of(b, Side::P, 1);
  REQUIRE(z.zeros.size() == 1);
  CHECK(double(z.zeros[0]) == doctest::Approx(109.0 / 77.0).epsilon(1e-15));
  CHECK(z.certified);
}

TEST_CASE("zeros are real, positive, simple, in the hull and interlacing") {
  auto p = t::random_pairs(1, 9, 61)[0];
  auto b = t::bundle(p, 9);
  for (Side s : {Side::P, Side::Q}) {
    std::vector<Real> prev;
    for (std::size_t n = 1; n <= 8; ++n) {
      auto z = zeros_of(b, s, n);
      CAPTURE(n);
      CHECK(z.zeros.size() == n);
      CHECK(z.real);
      CHECK(z.positive);
      CHECK(z.in_hull);
      CHECK_FALSE(z.coincident);
      CHECK(z.certified);
      CHECK(z.companion_agreement < 1e-8);
      if (n > 1) CHECK(interlacing_check(z.zeros, prev));
      prev = z.zeros;
    }
  }
}

TEST_CASE("characteristic polynomial identity") {
  auto p = t::random_pairs(1, 6, 67)[0];
  auto b = t::bundle(p, 6);
  for (std::size_t n = 1; n <= 4; ++n)
    for (const Rational& x : t::points(p, 4, 5)) {
      CHECK(charpoly_identity_residual(b, Side::P, n, x) == 0);
      CHECK(charpoly_identity_residual(b, Side::Q, n, x) == 0);
    }
}

TEST_CASE("interlacing and sign certificates reject bad input") {
  CHECK(interlacing_check({1, 3}, {2}));
  CHECK_FALSE(interlacing_check({1, 3}, {4}));
  CHECK_FALSE(interlacing_check({1, 3}, {1}));
  // (t-1)(t-2)
  Poly<Rational> poly{2, -3, 1};
  CHECK(exact_sign_certificate(poly, {1, 2}, Rational(1, 2), 3));
  // t^2 + 1 has no sign change anywhere
  CHECK_FALSE(exact_sign_certificate(Poly<Rational>{1, 0, 1}, {1, 2}, Rational(1, 2), 3));
}
