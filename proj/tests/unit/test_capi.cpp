#include <doctest.h>

#include <string>

#include "cbop/cbop.h"

namespace {

const char* kTwoAtom = R"({"alpha":{"type":"discrete","atoms":[{"x":"1","w":"1"},{"x":"2","w":"1"}]},
                           "beta":{"type":"discrete","atoms":[{"x":"1","w":"1"},{"x":"3","w":"1"}]}})";
const char* kSingle = R"({"alpha":{"type":"discrete","atoms":[{"x":"1","w":"1"}]},
                          "beta":{"type":"discrete","atoms":[{"x":"2","w":"1"}]}})";
const char* kDensity = R"({"alpha":{"type":"density","support":[1,2]},"beta":{"type":"density","support":[1,2]}})";

struct Problem {
  cbop_problem* p = nullptr;
  explicit Problem(const char* json) { REQUIRE(cbop_problem_from_json(json, &p) == CBOP_OK); }
  ~Problem() { cbop_problem_free(p); }
};

std::string take(char* s) {
  std::string out = s ? s : "";
  cbop_string_free(s);
  return out;
}

}  // namespace

TEST_CASE("bimoments through the C API") {
  Problem pr(kTwoAtom);
  CHECK(cbop_problem_is_discrete(pr.p));
  cbop_options o;
  cbop_options_init(&o);
  o.order = 2;
  char* out = nullptr;
  CHECK(cbop_cmd_bimoments(pr.p, &o, &out) == CBOP_OK);
  std::string text = take(out);
  CHECK(text.find(R"("77/60")") != std::string::npos);
  CHECK(text.find(R"("1/30")") != std::string::npos);
  CHECK(std::string(cbop_last_warnings()).empty());
}

TEST_CASE("degenerate input is a check failure with a warning") {
  Problem pr(kSingle);
  cbop_options o;
  cbop_options_init(&o);
  o.order = 2;
  char* out = nullptr;
  cbop_status st = cbop_cmd_bimoments(pr.p, &o, &out);
  std::string text = take(out);
  CHECK(st == CBOP_CHECK_FAILED);
  CHECK(text.find(R"("degenerate": true)") != std::string::npos);
  CHECK(std::string(cbop_last_warnings()).find("degenerate") != std::string::npos);
  CHECK(cbop_exit_code(st) == 1);
}

TEST_CASE("errors carry a status and a message") {
  cbop_problem* p = nullptr;
  CHECK(cbop_problem_from_json("{", &p) == CBOP_INPUT_ERROR);
  CHECK(p == nullptr);
  CHECK(std::string(cbop_last_error()).find("malformed JSON") != std::string::npos);

  Problem pr(kDensity);
  CHECK_FALSE(cbop_problem_is_discrete(pr.p));
  cbop_options o;
  cbop_options_init(&o);
  o.mode = CBOP_MODE_EXACT;
  char* out = nullptr;
  CHECK(cbop_cmd_bop(pr.p, &o, &out) == CBOP_INPUT_ERROR);
  CHECK(out == nullptr);
  CHECK(std::string(cbop_last_error()).find("exact mode") != std::string::npos);

  Problem two(kTwoAtom);
  o.mode = CBOP_MODE_AUTO;
  o.order = 4;
  o.degree = 3;
  CHECK(cbop_cmd_bop(two.p, &o, &out) == CBOP_DEGENERATE);
  CHECK(out == nullptr);
}

TEST_CASE("exit codes") {
  CHECK(cbop_exit_code(CBOP_OK) == 0);
  CHECK(cbop_exit_code(CBOP_CHECK_FAILED) == 1);
  CHECK(cbop_exit_code(CBOP_INPUT_ERROR) == 2);
  CHECK(cbop_exit_code(CBOP_DEGENERATE) == 2);
  CHECK(cbop_exit_code(CBOP_PRECISION_EXHAUSTED) == 2);
  CHECK(cbop_exit_code(CBOP_THEORY_VIOLATION) == 3);
  CHECK(cbop_exit_code(CBOP_NUMERIC_ERROR) == 1);
  CHECK(cbop_exit_code(CBOP_INTERNAL_ERROR) == 1);
  CHECK(std::string(cbop_version()) == "0.1.0");
}

TEST_CASE("bit budget turns runaway rationals into PrecisionExhausted") {
  Problem pr(kTwoAtom);
  cbop_options o;
  cbop_options_init(&o);
  o.order = 2;
  char* out = nullptr;
  cbop_set_rational_bit_limit(4);
  cbop_status st = cbop_cmd_bimoments(pr.p, &o, &out);
  cbop_set_rational_bit_limit(size_t{1} << 22);
  take(out);
  CHECK(st == CBOP_PRECISION_EXHAUSTED);
  CHECK(cbop_cmd_bimoments(pr.p, &o, &out) == CBOP_OK);
  take(out);
}

TEST_CASE("verify on a density pair runs in float mode") {
  Problem pr(kDensity);
  cbop_options o;
  cbop_options_init(&o);
  o.suite = "rhp";
  o.csv = 1;
  char* out = nullptr;
  CHECK(cbop_cmd_verify(pr.p, &o, &out) == CBOP_OK);
  std::string text = take(out);
  CHECK(text.rfind("name,status,residual,detail,elapsed_ms", 0) == 0);
  CHECK(text.find("rhp.jump.Gamma,pass") != std::string::npos);
}
