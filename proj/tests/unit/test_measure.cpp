#include <doctest.h>

#include <cmath>

#include "cbop/measure.hpp"
#include "cbop/spec_io.hpp"
#include "support.hpp"

using namespace cbop;
using cbop::testing::atoms;

TEST_CASE("rational parsing and formatting") {
  CHECK(parse_rational("7/3") == Rational(7, 3));
  CHECK(parse_rational("-1.25") == Rational(-5, 4));
  CHECK(parse_rational("3e-2") == Rational(3, 100));
  CHECK(parse_rational("12") == Rational(12));
  CHECK(parse_rational("0.75") == Rational(3, 4));
  CHECK(parse_rational("010/4") == Rational(5, 2));
  CHECK(parse_rational("-0.0625") == Rational(-1, 16));
  CHECK(format_rational(Rational(3, 2)) == "3/2");
  CHECK(format_rational(Rational(-2)) == "-2");
  CHECK_THROWS_AS(parse_rational("1/x"), Error);
}

TEST_CASE("moments and reflection share atoms") {
  auto m = atoms({{1, 2}, {3, Rational(1, 2)}});
  CHECK(m.moment(0) == Rational(5, 2));
  CHECK(m.moment(1) == Rational(7, 2));
  CHECK(m.moment(2) == Rational(13, 2));
  auto r = m.reflected();
  CHECK(r.orientation() == -1);
  CHECK(r.point(1) == -3);
  CHECK(r.moment(1) == Rational(-7, 2));
  CHECK(r.moment(2) == m.moment(2));
  CHECK(&r.atoms() == &m.atoms());
  CHECK(m.hull_min() == 1);
  CHECK(m.hull_max() == 3);
  CHECK(m.is_atom(Rational(3)));
  CHECK_FALSE(m.is_atom(Rational(2)));
}

TEST_CASE("invalid atoms are rejected") {
  auto kind = [](auto&& f) {
    try {
      f();
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::Numeric;
  };
  CHECK(kind([] { atoms({{1, 0}}); }) == ErrorKind::Input);
  CHECK(kind([] { atoms({{0, 1}}); }) == ErrorKind::Input);
  CHECK(kind([] { atoms({{1, 1}, {1, 2}}); }) == ErrorKind::Input);
  CHECK(kind([] { measure::DiscreteMeasure<Rational>(std::vector<measure::Atom<Rational>>{}); }) ==
        ErrorKind::Input);
}

TEST_CASE("Gauss-Legendre integrates polynomials of degree 2k-1 exactly") {
  auto rule = measure::gauss_legendre(1, 3, 6);
  REQUIRE(rule.nodes.size() == 6);
  Real acc = 0;
  for (std::size_t k = 0; k < 6; ++k) acc += rule.weights[k] * std::pow(rule.nodes[k], 11);
  Real exact = (std::pow(3.0L, 12) - 1) / 12;
  CHECK(std::abs(acc - exact) / exact < 1e-15);
}

TEST_CASE("density discretization") {
  measure::DensityMeasure d{1, 2, [](Real) { return Real(1); }, 16};
  auto m = measure::discretize(d);
  CHECK(m.size() == 16);
  CHECK(std::abs(m.moment(0) - 1) < 1e-15);
  CHECK(std::abs(m.moment(1) - 1.5L) < 1e-15);

  auto g = measure::DensityMeasure::from_potential(0, 1, {{0, 1}, 1}, 32);
  CHECK(std::abs(measure::discretize(g).moment(0) - (1 - std::exp(-1.0L))) < 1e-15);
  CHECK(std::abs(g.rho(0.5L) - std::exp(-0.5L)) < 1e-18);
}

TEST_CASE("spec parsing") {
  auto spec = io::parse_spec(R"({"alpha":{"type":"discrete","atoms":[{"x":"1/2","w":1},{"x":"0.75","w":"2"}]},
                                 "beta":{"type":"discrete","atoms":[{"x":3,"w":"1e-1"}]}})");
  CHECK(spec.discrete());
  const auto& a = io::exact_atoms(spec.alpha);
  CHECK(a.point(0) == Rational(1, 2));
  CHECK(a.point(1) == Rational(3, 4));
  CHECK(io::exact_atoms(spec.beta).weight(0) == Rational(1, 10));

  auto dens = io::parse_spec(R"({"alpha":{"type":"density","support":[1,2],"potential":{"coeffs":[0],"hbar":1}},
                                 "beta":{"type":"density","support":[1,2],"quadrature":{"rule":"gauss-legendre","order":8}}})");
  CHECK_FALSE(dens.discrete());
  CHECK(io::float_atoms(dens.alpha).size() == 48);
  CHECK(io::float_atoms(dens.beta).size() == 8);
  CHECK_THROWS_WITH_AS(io::exact_atoms(dens.alpha), "exact mode requires discrete measures with rational atoms",
                       Error);
}

TEST_CASE("spec parsing errors are input errors") {
  const char* bad[] = {
      "{",
      "[]",
      R"({"alpha":{"type":"discrete","atoms":[{"x":1,"w":1}]}})",
      R"({"alpha":{"type":"wavelet"},"beta":{"type":"wavelet"}})",
      R"({"alpha":{"type":"discrete","atoms":[]},"beta":{"type":"discrete","atoms":[{"x":1,"w":1}]}})",
      R"({"alpha":{"type":"discrete","atoms":[{"x":"one","w":1}]},"beta":{"type":"discrete","atoms":[{"x":1,"w":1}]}})",
      R"({"alpha":{"type":"discrete","atoms":[{"x":-1,"w":1}]},"beta":{"type":"discrete","atoms":[{"x":1,"w":1}]}})",
      R"({"alpha":{"type":"density","support":[1,2],"quadrature":{"rule":"simpson","order":8}},
          "beta":{"type":"density","support":[1,2]}})",
      R"({"alpha":{"type":"density","support":[1,2],"quadrature":{"order":1}},"beta":{"type":"density","support":[1,2]}})",
  };
  for (const char* text : bad) {
    CAPTURE(text);
    try {
      io::parse_spec(text);
      FAIL("accepted");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Input);
    }
  }
}
