#pragma once

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "cbop/bundle.hpp"
#include "cbop/measure.hpp"

namespace cbop::testing {

using measure::Atom;
using measure::DiscreteMeasure;

inline DiscreteMeasure<Rational> atoms(std::initializer_list<std::pair<Rational, Rational>> xw) {
  std::vector<Atom<Rational>> v;
  for (const auto& [x, w] : xw) v.push_back({x, w});
  return DiscreteMeasure<Rational>(std::move(v));
}

struct Pair {
  DiscreteMeasure<Rational> alpha, beta;
};

// alpha {1,2}, beta {1,3}, unit weights
inline Pair two_atom() {
  return {atoms({{1, 1}, {2, 1}}), atoms({{1, 1}, {3, 1}})};
}

inline Pair single_atom() {
  return {atoms({{1, 1}}), atoms({{2, 1}})};
}

// count distinct positive rational atoms with denominators up to 4
inline DiscreteMeasure<Rational> random_measure(std::mt19937& rng, std::size_t count) {
  std::uniform_int_distribution<int> num(1, 40), den(1, 4), wn(1, 9), wd(1, 5);
  std::set<Rational> seen;
  std::vector<Atom<Rational>> v;
  while (v.size() < count) {
    Rational x(num(rng), den(rng));
    x.canonicalize();
    if (!seen.insert(x).second) continue;
    Rational w(wn(rng), wd(rng));
    w.canonicalize();
    v.push_back({x, w});
  }
  return DiscreteMeasure<Rational>(std::move(v));
}

inline std::vector<Pair> random_pairs(std::size_t count, std::size_t atoms_each, unsigned seed) {
  std::mt19937 rng(seed);
  std::vector<Pair> out;
  for (std::size_t k = 0; k < count; ++k) {
    auto a = random_measure(rng, atoms_each);
    auto b = random_measure(rng, atoms_each);
    out.push_back({std::move(a), std::move(b)});
  }
  return out;
}

// Rational points of either sign that avoid every +-atom of the pair.
inline std::vector<Rational> points(const Pair& p, std::size_t count, unsigned seed, bool positive_only = false) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> num(1, 60), den(1, 7), sgn(0, 2);
  std::vector<Rational> out;
  while (out.size() < count) {
    Rational t(num(rng), den(rng));
    t.canonicalize();
    if (!positive_only && sgn(rng) == 0) t = -t;
    Rational m = -t;
    if (p.alpha.is_atom(t) || p.alpha.is_atom(m) || p.beta.is_atom(t) || p.beta.is_atom(m)) continue;
    if (std::find(out.begin(), out.end(), t) != out.end()) continue;
    out.push_back(t);
  }
  return out;
}

inline Bundle<Rational> bundle(const Pair& p, std::size_t order) { return Bundle<Rational>(p.alpha, p.beta, order); }

}  // namespace cbop::testing
