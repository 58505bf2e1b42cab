#include "primebias/decimal_format.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <string>
#include <stdexcept>
#include <system_error>

namespace primebias {

namespace {

std::string to_chars_string(long double value, std::chars_format fmt, int precision) {
  char buf[128];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value, fmt, precision);
  if (ec != std::errc{}) throw std::runtime_error("decimal conversion failed");
  return std::string(buf, ptr);
}

// Rounds the digit string `digits` (no sign, no point) to keep the first
// `keep` digits, half-to-even. Returns true when a carry adds a leading digit.
bool round_digits(std::string& digits, std::size_t keep) {
  if (keep >= digits.size()) return false;
  const char next = digits[keep];
  bool round_up = false;
  if (next > '5') {
    round_up = true;
  } else if (next == '5') {
    const bool rest_nonzero = digits.find_first_not_of('0', keep + 1) != std::string::npos;
    const bool odd = keep > 0 && ((digits[keep - 1] - '0') % 2 == 1);
    round_up = rest_nonzero || odd;
  }
  digits.resize(keep);
  if (!round_up) return false;
  for (std::size_t i = keep; i-- > 0;) {
    if (digits[i] == '9') {
      digits[i] = '0';
    } else {
      ++digits[i];
      return false;
    }
  }
  digits.insert(digits.begin(), '1');
  return true;
}

}  // namespace

std::string round_fixed(long double value, int decimals) {
  if (!std::isfinite(value)) return std::isnan(value) ? "nan" : (value > 0 ? "inf" : "-inf");
  const bool negative = std::signbit(value);
  std::string text = to_chars_string(std::fabs(value), std::chars_format::fixed, 40);
  const auto point = text.find('.');
  std::string digits = text.substr(0, point) + text.substr(point + 1);
  std::size_t int_len = point;
  if (round_digits(digits, int_len + static_cast<std::size_t>(decimals))) ++int_len;
  std::string out = digits.substr(0, int_len);
  if (decimals > 0) out += "." + digits.substr(int_len);
  const bool all_zero = out.find_first_not_of("0.") == std::string::npos;
  return (negative && !all_zero ? "-" : "") + out;
}

std::string round_scientific(long double value, int digits) {
  if (value == 0) return "0";
  if (!std::isfinite(value)) return round_fixed(value, 0);
  const bool negative = std::signbit(value);
  // 30 significant digits is far past long double precision, so rounding the
  // expansion is rounding the stored value.
  std::string text = to_chars_string(std::fabs(value), std::chars_format::scientific, 30);
  const auto e = text.find('e');
  int exponent = std::atoi(text.c_str() + e + 1);
  std::string mant = text.substr(0, 1) + text.substr(2, e - 2);
  if (round_digits(mant, static_cast<std::size_t>(digits))) {
    ++exponent;
    mant.resize(static_cast<std::size_t>(digits));
  }
  std::string out = mant.substr(0, 1);
  if (digits > 1) out += "." + mant.substr(1);
  out += exponent < 0 ? "e-" : "e";
  const int mag = std::abs(exponent);
  if (mag < 10) out += '0';
  out += std::to_string(mag);
  return (negative ? "-" : "") + out;
}

std::string format_significant(long double value, int digits) {
  return to_chars_string(value, std::chars_format::general, digits);
}

std::string format_table_value(long double value) {
  if (std::fabs(value) >= 1e-3L || value == 0) return round_fixed(value, 6);
  return round_scientific(value, 3);
}

bool same_decimal(std::string_view a, std::string_view b) {
  auto parse = [](std::string_view s) {
    long double v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
      throw std::invalid_argument("not a decimal number: " + std::string(s));
    }
    return v;
  };
  return parse(a) == parse(b);
}

}  // namespace primebias
