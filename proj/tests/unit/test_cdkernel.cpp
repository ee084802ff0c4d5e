#include <doctest.h>

#include "cbop/cdkernel.hpp"
#include "support.hpp"

using namespace cbop;
using namespace cbop::cdkernel;
namespace t = cbop::testing;

TEST_CASE("commutator block matches the dense commutator") {
  auto p = t::random_pairs(1, 6, 71)[0];
  auto b = t::bundle(p, 6);
  for (std::size_t n = 1; n <= 4; ++n)
    for (const Rational& s : t::points(p, 3, 2)) CHECK(block_vs_dense_residual(b.rec(), n, s) == 0);
  auto blk = commutator_block(b.rec(), 2);
  CHECK(blk.s_coeff == 1 / b.rec().eta[2]);
  CHECK(blk.col(0) == 0);
  CHECK(blk.row(2) == 3);
}

TEST_CASE("plain and hatted CD identities hold exactly") {
  for (const auto& p : t::random_pairs(2, 6, 73)) {
    auto b = t::bundle(p, 6);
    auto pts = t::points(p, 10, 9);
    for (std::size_t n : {2, 3})
      for (std::size_t k = 0; k + 1 < pts.size(); k += 2) {
        CHECK(cd_residual_plain(b, n, pts[k], pts[k + 1]) == 0);
        CHECK(cd_residual_hat(b, n, pts[k], pts[k + 1]) == 0);
      }
  }
}

TEST_CASE("float CD identity") {
  // moderate spread keeps the float bimoment table well conditioned
  t::Pair p{t::atoms({{Rational(1, 2), 1}, {1, 2}, {Rational(3, 2), 1}, {2, Rational(1, 2)}, {3, 1}, {4, 1}}),
            t::atoms({{Rational(3, 4), 1}, {Rational(5, 4), 1}, {2, 3}, {Rational(5, 2), 1}, {Rational(7, 2), 2}, {5, 1}})};
  Bundle<Real> b(measure::to_float(p.alpha), measure::to_float(p.beta), 6);
  Real x = 0.35L, y = 1.7L;
  for (std::size_t n : {2, 3}) {
    // relative to the largest single term on either side
    Real scale = 1;
    auto q = b.q_vec(0, y);
    auto pv = b.p_vec(0, x);
    auto ph = b.phat_vec(0, x);
    for (std::size_t j = 0; j < n; ++j) scale = std::max(scale, (x + y) * std::abs(q[j] * pv[j]));
    auto blk = commutator_block(b.rec(), n);
    for (std::size_t r = 0; r < 3; ++r)
      for (std::size_t c = 0; c < 3; ++c)
        scale = std::max(scale, std::abs(q[blk.row(r)] * blk.entry(r, c, -y) * ph[std::size_t(blk.col(c))]));
    CHECK(std::abs(cd_residual_plain(b, n, x, y)) / scale < 1e-9L);
  }
}
