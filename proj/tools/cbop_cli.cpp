#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include "cbop/cbop.h"

namespace {

bool read_input(const std::string& path, std::string& text) {
  if (path == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
    return true;
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  text = ss.str();
  return true;
}

struct Flags {
  std::string spec = "-";
  std::size_t order = 4;
  long degree = -1;
  long kmax = -1;
  std::string mode = "auto";
  std::string suite = "all";
  std::string point;
  double eps = 0;
  std::string output = "json";
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cauchy biorthogonal polynomials: bimoments, recurrences, identities and Riemann-Hilbert checks"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(cbop_version()));
  Flags f;

  using Fn = cbop_status (*)(const cbop_problem*, const cbop_options*, char**);
  struct Sub {
    const char* name;
    const char* help;
    Fn fn;
  };
  const Sub subs[] = {
      {"bimoments", "bimoment matrix, leading minors, total positivity certificate", cbop_cmd_bimoments},
      {"verify", "run a verification suite and report every check", cbop_cmd_verify},
      {"zeros", "zeros of p_n and q_n with interlacing report", cbop_cmd_zeros},
      {"bop", "coefficients of the monic biorthogonal pair of a given degree", cbop_cmd_bop},
      {"recurrence", "recurrence and band operators", cbop_cmd_recurrence},
      {"rhp", "Riemann-Hilbert matrices and determinants at a point", cbop_cmd_rhp},
  };
  Fn chosen = nullptr;
  for (const Sub& s : subs) {
    CLI::App* sc = app.add_subcommand(s.name, s.help);
    sc->add_option("spec", f.spec, "measure spec JSON file, or - for stdin")->capture_default_str();
    sc->add_option("-N,--order", f.order, "truncation order")->capture_default_str()->check(CLI::Range(1, 200));
    sc->add_option("-n,--degree", f.degree, "degree (zeros, bop, rhp)")->check(CLI::NonNegativeNumber);
    sc->add_option("--kmax", f.kmax, "largest minor size for positivity certificates")->check(CLI::PositiveNumber);
    sc->add_option("--mode", f.mode, "arithmetic")
        ->capture_default_str()
        ->check(CLI::IsMember({"auto", "exact", "float"}));
    sc->add_option("--suite", f.suite, "verify suite")
        ->capture_default_str()
        ->check(CLI::IsMember({"all", "tp", "bop", "recurrence", "zeros", "cdi", "pade", "duality", "rhp"}));
    sc->add_option("--point", f.point, "evaluation point (decimal or p/q)");
    sc->add_option("--eps", f.eps, "largest boundary offset for the jump study")->check(CLI::PositiveNumber);
    sc->add_option("--output", f.output, "output format")
        ->capture_default_str()
        ->check(CLI::IsMember({"json", "csv"}));
    sc->callback([&chosen, fn = s.fn] { chosen = fn; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  std::string text;
  if (!read_input(f.spec, text)) {
    std::cerr << "error: cannot read " << f.spec << "\n";
    return 2;
  }
  cbop_problem* problem = nullptr;
  cbop_status st = cbop_problem_from_json(text.c_str(), &problem);
  if (st != CBOP_OK) {
    std::cerr << "error: " << cbop_last_error() << "\n";
    return cbop_exit_code(st);
  }

  cbop_options opts;
  cbop_options_init(&opts);
  opts.order = f.order;
  opts.degree = f.degree;
  opts.kmax = f.kmax;
  opts.mode = f.mode == "exact" ? CBOP_MODE_EXACT : f.mode == "float" ? CBOP_MODE_FLOAT : CBOP_MODE_AUTO;
  opts.suite = f.suite.c_str();
  opts.point = f.point.empty() ? nullptr : f.point.c_str();
  opts.eps = f.eps;
  opts.csv = f.output == "csv";

  char* out = nullptr;
  st = chosen(problem, &opts, &out);
  cbop_problem_free(problem);
  std::istringstream warnings(cbop_last_warnings());
  for (std::string line; std::getline(warnings, line);) std::cerr << "warning: " << line << "\n";
  if (out) {
    std::cout << out;
    cbop_string_free(out);
  } else {
    std::cerr << "error: " << cbop_last_error() << "\n";
  }
  return cbop_exit_code(st);
}
