#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <concepts>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <string_view>

#include "etree/error.hpp"

namespace etree {

/// Arbitrary-precision rational scalar for the exact backend.
using Rational = boost::multiprecision::cpp_rational;

/// The two supported probability scalars: exact rationals for oracle and
/// equality work, binary64 for lifetime (exponential) models.
template <typename T>
concept ProbabilityValue = std::same_as<T, Rational> || std::same_as<T, double>;

/// Absolute tolerance for float-mode comparisons at desk scale.
inline constexpr double kFloatTolerance = 1e-12;

namespace detail {

inline boost::multiprecision::cpp_int pow10(unsigned exp) {
  boost::multiprecision::cpp_int result = 1;
  for (unsigned i = 0; i < exp; ++i) result *= 10;
  return result;
}

// Digit accumulation instead of cpp_int's string constructor, which reads a
// leading zero as an octal prefix.
inline bool accumulate_digits(std::string_view text,
                              boost::multiprecision::cpp_int* out) {
  if (text.empty()) return false;
  *out = 0;
  for (char c : text) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    *out = *out * 10 + (c - '0');
  }
  return true;
}

}  // namespace detail

/// Parses a probability literal into an exact rational. Accepts plain
/// decimals ("0.7", "1.25e-3") and fraction form ("7/10").
inline Rational rational_from_text(std::string_view text) {
  using boost::multiprecision::cpp_int;
  const auto fail = [&] {
    raise(ErrorCode::SyntaxError,
          "invalid numeric literal '" + std::string(text) + "'");
  };
  if (text.empty()) fail();

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    std::string_view num = text.substr(0, slash);
    const std::string_view den = text.substr(slash + 1);
    bool negative = false;
    if (!num.empty() && (num[0] == '+' || num[0] == '-')) {
      negative = num[0] == '-';
      num.remove_prefix(1);
    }
    cpp_int n, d;
    if (!detail::accumulate_digits(num, &n) || !detail::accumulate_digits(den, &d) ||
        d == 0)
      fail();
    Rational result(n, d);
    return negative ? -result : result;
  }

  std::size_t pos = 0;
  bool negative = false;
  if (text[pos] == '+' || text[pos] == '-') {
    negative = text[pos] == '-';
    ++pos;
  }
  std::string digits;
  unsigned frac_digits = 0;
  bool seen_digit = false;
  for (; pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])); ++pos) {
    digits += text[pos];
    seen_digit = true;
  }
  if (pos < text.size() && text[pos] == '.') {
    ++pos;
    for (; pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])); ++pos) {
      digits += text[pos];
      ++frac_digits;
      seen_digit = true;
    }
  }
  long exponent = 0;
  if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
    ++pos;
    bool exp_negative = false;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
      exp_negative = text[pos] == '-';
      ++pos;
    }
    if (pos >= text.size()) fail();
    long value = 0;
    for (; pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])); ++pos) {
      value = value * 10 + (text[pos] - '0');
      if (value > 100000) fail();
    }
    exponent = exp_negative ? -value : value;
  }
  if (!seen_digit || pos != text.size()) fail();

  cpp_int numerator = 0;
  if (!digits.empty() && !detail::accumulate_digits(digits, &numerator)) fail();
  long scale = static_cast<long>(frac_digits) - exponent;
  Rational result;
  if (scale >= 0) {
    result = Rational(numerator, detail::pow10(static_cast<unsigned>(scale)));
  } else {
    result = Rational(numerator * detail::pow10(static_cast<unsigned>(-scale)), 1);
  }
  if (negative) result = -result;
  return result;
}

template <ProbabilityValue N>
N probability_from_text(std::string_view text) {
  if constexpr (std::same_as<N, Rational>) {
    return rational_from_text(text);
  } else {
    if (text.find('/') != std::string_view::npos)
      return rational_from_text(text).convert_to<double>();
    const std::string buffer(text);
    char* end = nullptr;
    const double value = std::strtod(buffer.c_str(), &end);
    if (end != buffer.c_str() + buffer.size() || buffer.empty())
      raise(ErrorCode::SyntaxError, "invalid numeric literal '" + buffer + "'");
    return value;
  }
}

template <ProbabilityValue N>
double to_double(const N& value) {
  if constexpr (std::same_as<N, Rational>)
    return value.template convert_to<double>();
  else
    return value;
}

/// True when `value` should be treated as exactly zero under the backend's
/// comparison discipline (exact for rationals, 1e-12 absolute for doubles).
template <ProbabilityValue N>
bool effectively_zero(const N& value) {
  if constexpr (std::same_as<N, Rational>)
    return value == 0;
  else
    return value > -kFloatTolerance && value < kFloatTolerance;
}

template <ProbabilityValue N>
bool in_unit_interval(const N& value) {
  if constexpr (std::same_as<N, Rational>)
    return value >= 0 && value <= 1;
  else
    return value >= -kFloatTolerance && value <= 1.0 + kFloatTolerance;
}

/// Residual mass 1 - sum, snapped to zero in float mode when it is only
/// rounding noise.
template <ProbabilityValue N>
N residual_mass(const N& state_sum) {
  N residual = N(1) - state_sum;
  if (effectively_zero(residual)) return N(0);
  return residual;
}

/// Formats with 12 significant digits, the report-wide convention.
inline std::string format_probability(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.12g", value);
  return buffer;
}

template <ProbabilityValue N>
std::string format_probability(const N& value) {
  return format_probability(to_double(value));
}

}  // namespace etree
