#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cbop {

using Rational = mpq_class;
using Real = long double;
using Complex = std::complex<Real>;

enum class ErrorKind {
  Input,
  Degenerate,
  TheoryViolation,
  PrecisionExhausted,
  OrderUnderflow,
  PoleEvaluation,
  Numeric,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

const char* error_kind_name(ErrorKind kind) noexcept;

/// Upper bound on numerator+denominator bit length of any exact intermediate.
/// Exceeding it raises ErrorKind::PrecisionExhausted.
void set_rational_bit_limit(std::size_t bits) noexcept;
std::size_t rational_bit_limit() noexcept;

void check_precision(const Rational& value, const char* where);

template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static constexpr bool exact = true;
  static constexpr const char* mode = "exact";
};

template <>
struct ScalarTraits<Real> {
  static constexpr bool exact = false;
  static constexpr const char* mode = "float";
};

template <class T>
inline constexpr bool is_exact_v = ScalarTraits<T>::exact;

inline int sign_of(const Rational& v) { return sgn(v); }
inline int sign_of(Real v) { return (v > 0) - (v < 0); }

inline bool is_zero(const Rational& v) { return sgn(v) == 0; }
inline bool is_zero(Real v) { return v == 0; }

inline Rational abs_of(const Rational& v) { return abs(v); }
inline Real abs_of(Real v) { return v < 0 ? -v : v; }
inline Real abs_of(const Complex& v) { return std::abs(v); }

Real to_real(const Rational& v);
inline Real to_real(Real v) { return v; }

template <class T>
T from_int(long v) {
  return T(v);
}

/// Parses "-1.25", "3e-2", "7/3" or an integer into an exact rational.
Rational parse_rational(std::string_view text);

/// "p/q" (or "p" for integers).
std::string format_rational(const Rational& v);

/// Shortest round-trip decimal of the value rounded to double.
std::string format_real(Real v);

inline std::string format_scalar(const Rational& v) { return format_rational(v); }
inline std::string format_scalar(Real v) { return format_real(v); }

}  // namespace cbop
