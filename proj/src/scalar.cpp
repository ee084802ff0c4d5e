#include "cbop/scalar.hpp"

#include <atomic>
#include <charconv>
#include <cctype>
#include <cmath>

namespace cbop {

namespace {
std::atomic<std::size_t> g_bit_limit{std::size_t{1} << 22};

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

[[noreturn]] void bad_number(std::string_view text) {
  fail(ErrorKind::Input, "not a rational number: '" + std::string(text) + "'");
}
}  // namespace

const char* error_kind_name(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Input: return "input";
    case ErrorKind::Degenerate: return "degenerate";
    case ErrorKind::TheoryViolation: return "theory-violation";
    case ErrorKind::PrecisionExhausted: return "precision-exhausted";
    case ErrorKind::OrderUnderflow: return "order-underflow";
    case ErrorKind::PoleEvaluation: return "pole-evaluation";
    case ErrorKind::Numeric: return "numeric";
  }
  return "unknown";
}

void set_rational_bit_limit(std::size_t bits) noexcept { g_bit_limit.store(bits); }
std::size_t rational_bit_limit() noexcept { return g_bit_limit.load(); }

void check_precision(const Rational& value, const char* where) {
  std::size_t bits = mpz_sizeinbase(value.get_num_mpz_t(), 2) + mpz_sizeinbase(value.get_den_mpz_t(), 2);
  if (bits > g_bit_limit.load())
    fail(ErrorKind::PrecisionExhausted,
         std::string("precision exhausted in ") + where + ": " + std::to_string(bits) + " bits");
}

Real to_real(const Rational& v) {
  mpf_class q(0, 160);
  mpf_class num(v.get_num(), 160), den(v.get_den(), 160);
  q = num / den;
  double hi = q.get_d();
  mpf_class rest(q - hi, 160);
  double lo = rest.get_d();
  return static_cast<Real>(hi) + static_cast<Real>(lo);
}

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (s.empty()) bad_number(text);

  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    std::string_view num = s.substr(0, slash), den = s.substr(slash + 1);
    bool neg = !num.empty() && (num[0] == '-' || num[0] == '+');
    std::string_view ndig = neg ? num.substr(1) : num;
    if (!all_digits(ndig) || !all_digits(den)) bad_number(text);
    mpz_class n(std::string(ndig), 10), d(std::string(den), 10);
    if (d == 0) bad_number(text);
    if (num[0] == '-') n = -n;
    Rational r(n, d);
    r.canonicalize();
    return r;
  }

  bool negative = false;
  if (s[0] == '+' || s[0] == '-') {
    negative = s[0] == '-';
    s.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view es = s.substr(e + 1);
    auto [ptr, ec] = std::from_chars(es.data() + (es.starts_with('+') ? 1 : 0), es.data() + es.size(), exponent);
    if (ec != std::errc() || ptr != es.data() + es.size() || es.empty()) bad_number(text);
    s = s.substr(0, e);
  }
  std::string digits;
  long frac = 0;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view ip = s.substr(0, dot), fp = s.substr(dot + 1);
    if ((ip.empty() && fp.empty()) || (!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp)))
      bad_number(text);
    digits = std::string(ip) + std::string(fp);
    frac = static_cast<long>(fp.size());
  } else {
    if (!all_digits(s)) bad_number(text);
    digits = std::string(s);
  }
  if (digits.empty()) bad_number(text);
  if (std::labs(exponent) > 4096) bad_number(text);
  mpz_class n(digits, 10);  // base 10: a leading 0 must not mean octal
  long shift = exponent - frac;
  mpz_class p10;
  mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(shift)));
  Rational r = shift >= 0 ? Rational(n * p10) : Rational(n, p10);
  r.canonicalize();
  return negative ? Rational(-r) : r;
}

std::string format_rational(const Rational& v) { return v.get_str(); }

std::string format_real(Real v) {
  double d = static_cast<double>(v);
  if (!std::isfinite(d)) return std::isnan(d) ? "nan" : (d > 0 ? "inf" : "-inf");
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, d);
  return std::string(buf, ptr);
}

}  // namespace cbop
