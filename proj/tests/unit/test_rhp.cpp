#include <doctest.h>

#include <cmath>

#include "cbop/rhp.hpp"
#include "support.hpp"

using namespace cbop;
using namespace cbop::rhp;
namespace t = cbop::testing;

TEST_CASE("determinants at rational points") {
  auto p = t::random_pairs(1, 6, 111)[0];
  auto b = t::bundle(p, 6);
  for (const Rational& w : t::points(p, 3, 29))
    for (std::size_t n = 2; n <= 4; ++n) {
      CAPTURE(n);
      CHECK(det3(assemble_gamma(b, n, w)) == 1);
      CHECK(det3(assemble_gamma(b, n, w, Route::Prefactor)) == 1);
      CHECK(det3(assemble_gamma(b, n, w, Route::Recovery, GammaSign::Literal)) == -1);
      CHECK(det3(assemble_gamma_hat(b, n, w)) == 1);
      CHECK(route_gap(b, Which::Gamma, n, w) == 0);
      CHECK(route_gap(b, Which::GammaHat, n, w) == 0);
    }
}

TEST_CASE("order limits") {
  auto p = t::random_pairs(1, 6, 113)[0];
  auto b = t::bundle(p, 4);
  Rational w(1, 3);
  CHECK_THROWS_AS(assemble_gamma(b, 1, w), Error);
  CHECK_THROWS_AS(assemble_gamma(b, 4, w), Error);
  CHECK(det3(assemble_gamma_hat(b, 1, w)) == 1);
  CHECK_THROWS_AS(assemble_gamma_hat(b, 1, w, Route::Prefactor), Error);
}

TEST_CASE("asymptotics at infinity") {
  auto p = t::random_pairs(1, 6, 127)[0];
  auto b = t::bundle(p, 6);
  for (std::size_t n = 2; n <= 4; ++n) {
    auto g = asymptotic_check(b, n, Which::Gamma);
    CHECK(g.pass);
    CHECK(g.powers == std::array<int, 3>{int(n), -1, 1 - int(n)});
    for (const auto& d : g.diagonal) CHECK(d == 1);
    auto h = asymptotic_check(b, n, Which::GammaHat);
    CHECK(h.pass);
    CHECK(h.powers == std::array<int, 3>{int(n), 0, -int(n)});
    // with the literal sign Gamma_33 tends to -w^{1-n}
    auto bad = asymptotic_check(b, n, Which::Gamma, GammaSign::Literal);
    CHECK_FALSE(bad.pass);
    CHECK(bad.diagonal[2] == -1);
  }
}

TEST_CASE("constants read off Gamma") {
  auto b = t::bundle(t::random_pairs(1, 6, 131)[0], 6);
  for (std::size_t n = 2; n <= 4; ++n) {
    auto c = extract_constants(b, n);
    CHECK(c.c_squared == c.expected_c_squared);
    CHECK(c.eta_squared == c.expected_eta_squared);
    CHECK(c.c_squared == b.family().h[n - 1]);
    CHECK(c.c > 0);
  }
  CHECK(std::abs(q1_asymptotic_ratio(b, 3, 1e6L) - 1) < 1e-4);
}

TEST_CASE("float determinant far from the support") {
  auto p = t::random_pairs(1, 6, 137)[0];
  Bundle<Real> b(measure::to_float(p.alpha), measure::to_float(p.beta), 5);
  Complex w(10, 0.5L);
  CHECK(std::abs(det3(assemble_gamma(b, 3, w)) - Real(1)) < 1e-9);
  CHECK(std::abs(det3(assemble_gamma_hat(b, 3, w)) - Real(1)) < 1e-9);
}

namespace {
struct Density {
  measure::DensityMeasure a{1, 2, [](Real) { return Real(1); }, 48};
  DensityPair d = require_density(measure::Measure(a), measure::Measure(a));
  Bundle<Real> b{measure::discretize(a), measure::discretize(a), 4};
};
}  // namespace

TEST_CASE("jump relation on a flat density") {
  Density s;
  for (Which which : {Which::Gamma, Which::GammaHat}) {
    CAPTURE(which_name(which));
    auto st = jump_study(s.b, s.d, which, 2, 1.5L, {1e-4L, 1e-5L, 1e-6L});
    CHECK(st.relative.front() < 1e-2);
    CHECK(st.slope > 0.5L);
    CHECK(st.slope < 2.0L);
    CHECK(st.residual[2] < st.residual[0]);
    auto bv = boundary_values(s.b, s.d, which, 2, 1.5L, 1e-5L);
    CHECK(bv.cut == 1);
    CHECK(std::abs(det3(bv.jump) - Real(1)) < 1e-12);
  }
  // reflected cut
  auto r = jump_residual(s.b, s.d, Which::Gamma, 2, -1.5L, 1e-5L);
  CHECK(r.relative < 1e-2);
  // no cut at w = 5: the gap closes linearly in eps
  CHECK(analytic_gap(s.b, Which::Gamma, 2, 5, 1e-6L) < 0.2L * analytic_gap(s.b, Which::Gamma, 2, 5, 1e-5L));
  CHECK_THROWS_AS(jump_residual(s.b, s.d, Which::Gamma, 2, 3, 1e-5L), Error);
}

TEST_CASE("jump checks need density input") {
  auto p = t::two_atom();
  try {
    require_density(measure::Measure(p.alpha), measure::Measure(p.beta));
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Input);
    CHECK(std::string(e.what()) == "jump check requires density measure");
  }
}

TEST_CASE("constant-jump transform has unit determinant") {
  Density s;
  measure::Potential U{{0, 1}, 1}, V{{0, 0, 1}, 2};
  Complex w(1.5L, 1e-3L);
  for (Which which : {Which::Gamma, Which::GammaHat}) {
    auto g = assemble_gamma(s.b, 2, w);
    if (which == Which::GammaHat) g = assemble_gamma_hat(s.b, 2, w);
    auto tg = constant_jump_transform(g, which, w, U, V);
    CHECK(std::abs(det3(tg) - det3(g)) < 1e-9 * std::abs(det3(g)));
    const auto& A = which == Which::Gamma ? V : U;
    const auto& B = which == Which::Gamma ? U : V;
    Complex ea = horner(A.coeffs, w) / A.hbar, eb = horner(B.coeffs, Complex(-w)) / B.hbar;
    std::array<Complex, 3> f{std::exp((-Real(2) * ea - eb) / Real(3)), std::exp((ea - eb) / Real(3)),
                             std::exp((ea + Real(2) * eb) / Real(3))};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) CHECK(std::abs(tg[i][j] - g[i][j] * f[j]) <= 1e-15 * std::abs(g[i][j] * f[j]));
  }
}
