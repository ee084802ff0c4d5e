#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "cbop/measure.hpp"

namespace cbop::io {

/// A measure pair read from the JSON input format:
///   {"alpha": M, "beta": M} with M either
///   {"type":"discrete","atoms":[{"x":"<decimal>","w":"<decimal>"},...]} or
///   {"type":"density","support":[a,b],"potential":{"coeffs":[...],"hbar":h},
///    "quadrature":{"rule":"gauss-legendre","order":k}}
struct ProblemSpec {
  measure::Measure alpha, beta;
  std::optional<measure::Potential> alpha_potential, beta_potential;

  bool discrete() const;
};

ProblemSpec parse_spec(std::string_view json_text);

/// Float atoms of either kind of measure (density measures are discretized).
measure::DiscreteMeasure<Real> float_atoms(const measure::Measure& m);

/// Exact atoms; raises Input for a density measure.
const measure::DiscreteMeasure<Rational>& exact_atoms(const measure::Measure& m);

}  // namespace cbop::io
