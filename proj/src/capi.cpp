#include "cbop/cbop.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "cbop/commands.hpp"

struct cbop_problem {
  cbop::io::ProblemSpec spec;
};

namespace {

thread_local std::string last_error;
thread_local std::string last_warnings;

cbop_status status_of(cbop::ErrorKind k) {
  using cbop::ErrorKind;
  switch (k) {
    case ErrorKind::Input:
    case ErrorKind::OrderUnderflow:
    case ErrorKind::PoleEvaluation:
      return CBOP_INPUT_ERROR;
    case ErrorKind::Degenerate:
      return CBOP_DEGENERATE;
    case ErrorKind::TheoryViolation:
      return CBOP_THEORY_VIOLATION;
    case ErrorKind::PrecisionExhausted:
      return CBOP_PRECISION_EXHAUSTED;
    case ErrorKind::Numeric:
      return CBOP_NUMERIC_ERROR;
  }
  return CBOP_INTERNAL_ERROR;
}

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

template <class F>
cbop_status guarded(F&& f) {
  last_error.clear();
  try {
    return f();
  } catch (const cbop::Error& e) {
    last_error = std::string(cbop::error_kind_name(e.kind())) + ": " + e.what();
    return status_of(e.kind());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
  } catch (const std::exception& e) {
    last_error = std::string("internal: ") + e.what();
  } catch (...) {
    last_error = "internal: unknown exception";
  }
  return CBOP_INTERNAL_ERROR;
}

cbop::cmd::Options convert(const cbop_options* o) {
  cbop::cmd::Options out;
  if (!o) return out;
  out.order = o->order;
  if (o->degree >= 0) out.degree = static_cast<std::size_t>(o->degree);
  if (o->kmax >= 0) out.kmax = static_cast<std::size_t>(o->kmax);
  out.mode = o->mode == CBOP_MODE_EXACT   ? cbop::cmd::Mode::Exact
             : o->mode == CBOP_MODE_FLOAT ? cbop::cmd::Mode::Float
                                          : cbop::cmd::Mode::Auto;
  if (o->suite) out.suite = o->suite;
  if (o->point) out.point = std::string(o->point);
  if (o->eps > 0) out.eps = static_cast<cbop::Real>(o->eps);
  out.output = o->csv ? cbop::cmd::Output::Csv : cbop::cmd::Output::Json;
  return out;
}

using Command = cbop::cmd::Result (*)(const cbop::io::ProblemSpec&, const cbop::cmd::Options&);

cbop_status run(Command cmd, const cbop_problem* p, const cbop_options* opts, char** out) {
  if (out) *out = nullptr;
  last_warnings.clear();
  return guarded([&]() -> cbop_status {
    if (!p || !out) cbop::fail(cbop::ErrorKind::Input, "null argument");
    cbop::cmd::Result r = cmd(p->spec, convert(opts));
    for (const auto& w : r.warnings) last_warnings += w + "\n";
    *out = dup(r.text);
    return static_cast<cbop_status>(r.exit_code);
  });
}

}  // namespace

extern "C" {

void cbop_options_init(cbop_options* o) {
  if (!o) return;
  o->order = 4;
  o->degree = -1;
  o->kmax = -1;
  o->mode = CBOP_MODE_AUTO;
  o->suite = nullptr;
  o->point = nullptr;
  o->eps = 0;
  o->csv = 0;
}

cbop_status cbop_problem_from_json(const char* json, cbop_problem** out) {
  if (out) *out = nullptr;
  return guarded([&]() -> cbop_status {
    if (!json || !out) cbop::fail(cbop::ErrorKind::Input, "null argument");
    *out = new cbop_problem{cbop::io::parse_spec(json)};
    return CBOP_OK;
  });
}

void cbop_problem_free(cbop_problem* p) { delete p; }

int cbop_problem_is_discrete(const cbop_problem* p) { return p && p->spec.discrete() ? 1 : 0; }

cbop_status cbop_cmd_bimoments(const cbop_problem* p, const cbop_options* o, char** out) {
  return run(cbop::cmd::bimoments, p, o, out);
}
cbop_status cbop_cmd_verify(const cbop_problem* p, const cbop_options* o, char** out) {
  return run(cbop::cmd::verify, p, o, out);
}
cbop_status cbop_cmd_zeros(const cbop_problem* p, const cbop_options* o, char** out) {
  return run(cbop::cmd::zeros, p, o, out);
}
cbop_status cbop_cmd_bop(const cbop_problem* p, const cbop_options* o, char** out) {
  return run(cbop::cmd::bop, p, o, out);
}
cbop_status cbop_cmd_recurrence(const cbop_problem* p, const cbop_options* o, char** out) {
  return run(cbop::cmd::recurrence, p, o, out);
}
cbop_status cbop_cmd_rhp(const cbop_problem* p, const cbop_options* o, char** out) {
  return run(cbop::cmd::rhp, p, o, out);
}

const char* cbop_last_warnings(void) { return last_warnings.c_str(); }
const char* cbop_last_error(void) { return last_error.c_str(); }
void cbop_string_free(char* s) { std::free(s); }

int cbop_exit_code(cbop_status s) {
  switch (s) {
    case CBOP_OK:
      return 0;
    case CBOP_CHECK_FAILED:
    case CBOP_NUMERIC_ERROR:
    case CBOP_INTERNAL_ERROR:
      return 1;
    case CBOP_THEORY_VIOLATION:
      return 3;
    default:
      return 2;
  }
}

void cbop_set_rational_bit_limit(size_t bits) { cbop::set_rational_bit_limit(bits); }

const char* cbop_version(void) { return "0.1.0"; }

}  // extern "C"
