#include <doctest.h>

#include "cbop/bop.hpp"
#include "support.hpp"

using namespace cbop;
using namespace cbop::bop;
namespace t = cbop::testing;

namespace {
bimoment::BimomentMatrix<Rational> table(const t::Pair& p, std::size_t n) {
  return bimoment::compute_bimoments(p.alpha, p.beta, bimoment::Kernel<Rational>::cauchy(), n);
}
}  // namespace

TEST_CASE("two-atom family is frozen") {
  auto p = t::two_atom();
  auto I = table(p, 2);
  auto f = build_family(I, 2);
  CHECK(f.h[0] == Rational(77, 60));
  CHECK(f.h[1] == Rational(2, 77));
  CHECK(f.p[1] == Poly<Rational>{Rational(-109, 77), 1});
  CHECK(f.q[1] == Poly<Rational>{Rational(-131, 77), 1});
  auto avg = averages(f, p.alpha.moments(2), p.beta.moments(2));
  CHECK(avg.pi[0] == 2);
  CHECK(avg.eta[0] == 2);
  CHECK(avg.pi[1] == Rational(13, 77));
  CHECK(avg.eta[1] == Rational(46, 77));
  CHECK(pairing(I, f.p[1], f.q[0]) == 0);
  CHECK(pairing(I, f.p[0], f.q[1]) == 0);
}

TEST_CASE("biorthogonality and the determinantal oracle") {
  for (const auto& p : t::random_pairs(2, 6, 21)) {
    auto I = table(p, 6);
    auto f = build_family(I, 6);
    CHECK(biorthogonality_residual(f, I) == 0);
    for (std::size_t n = 0; n < 6; ++n) {
      CHECK(f.p[n].size() == n + 1);
      CHECK(f.p[n].back() == 1);
      CHECK(f.h[n] == f.D[n + 1] / f.D[n]);
    }
    for (std::size_t n = 1; n <= 4; ++n) {
      auto [po, qo] = determinantal_oracle(I, n);
      CHECK(po == f.p[n]);
      CHECK(qo == f.q[n]);
    }
    auto avg = averages(f, p.alpha.moments(6), p.beta.moments(6));
    for (std::size_t n = 0; n < 6; ++n) {
      CHECK(avg.pi[n] > 0);
      CHECK(avg.eta[n] > 0);
    }
  }
}

TEST_CASE("normalized float family") {
  auto p = t::random_pairs(1, 6, 3)[0];
  auto I = table(p, 5);
  auto f = build_family(I, 5);
  auto nf = normalize(f, averages(f, p.alpha.moments(5), p.beta.moments(5)));
  Rational x(7, 10);
  for (std::size_t n = 0; n < 5; ++n) {
    Real c = std::sqrt(to_real(f.h[n]));
    CHECK(nf.c[n] == doctest::Approx(double(c)));
    Real pm = to_real(evaluate_monic(f, Side::P, n, x));
    CHECK(double(evaluate_normalized(nf, Side::P, n, to_real(x))) == doctest::Approx(double(pm / c)));
  }
}

TEST_CASE("degenerate input raises Degenerate") {
  auto p = t::single_atom();
  auto I = table(p, 2);
  CHECK(bimoment::leading_minors(I, 2)[1] == 0);
  try {
    build_family(I, 2);
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Degenerate);
    CHECK(std::string(e.what()).find("D_2") != std::string::npos);
  }
  CHECK_THROWS_AS(determinantal_oracle(table(p, 3), 2), Error);
}
