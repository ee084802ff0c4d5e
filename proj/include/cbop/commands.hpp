#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cbop/spec_io.hpp"

namespace cbop::cmd {

enum class Mode { Auto, Exact, Float };
enum class Output { Json, Csv };

struct Options {
  std::size_t order = 4;
  std::optional<std::size_t> degree;
  std::optional<std::size_t> kmax;
  Mode mode = Mode::Auto;  // exact for discrete input, float for densities
  std::string suite = "all";
  std::optional<std::string> point;
  std::optional<Real> eps;
  Output output = Output::Json;
};

/// Serialized report plus the exit code it implies (0 pass, 1 check failure,
/// 3 theory violation surfaced inside a suite). Errors outside a suite are
/// thrown as cbop::Error.
struct Result {
  std::string text;
  int exit_code = 0;
  std::vector<std::string> warnings;
};

Result bimoments(const io::ProblemSpec& spec, const Options& opt);
Result verify(const io::ProblemSpec& spec, const Options& opt);
Result zeros(const io::ProblemSpec& spec, const Options& opt);
Result bop(const io::ProblemSpec& spec, const Options& opt);
Result recurrence(const io::ProblemSpec& spec, const Options& opt);
Result rhp(const io::ProblemSpec& spec, const Options& opt);

/// The verify suites in the order "all" runs them.
const std::vector<std::string>& suite_names();

/// 2 for input-like failures, 3 for theory violations, 1 otherwise.
int exit_code_for(ErrorKind kind);

}  // namespace cbop::cmd
