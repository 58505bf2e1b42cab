#pragma once

// Locale-independent decimal rendering of long double values.

#include <string>
#include <string_view>

namespace primebias {

/// Exact-ish decimal expansion (40 fractional digits) rounded half-to-even
/// at `decimals` places after the point, e.g. (0.0671393, 6) -> "0.067139".
std::string round_fixed(long double value, int decimals);

/// Rounds half-to-even to `digits` significant digits in scientific form,
/// e.g. (1.5593e-18, 3) -> "1.56e-18".
std::string round_scientific(long double value, int digits);

/// Shortest form with `digits` significant digits ("%.9Lg" without locale).
std::string format_significant(long double value, int digits = 9);

/// Table display rule: 6 decimals at or above 1e-3, 3 significant digits
/// in scientific notation below.
std::string format_table_value(long double value);

/// Numeric equality of two decimal strings ("1.3832" == "1.38320").
bool same_decimal(std::string_view a, std::string_view b);

}  // namespace primebias
