#pragma once

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace ssmud::cli {

// Fixed-point text with `significant` significant digits, e.g. 0.001234567890.
// Zero prints as 0; non-finite values print as inf, -inf or nan.
std::string format_fixed(double v, int significant = 10);

// RFC 4180 field: quoted when it holds a comma, quote, CR or LF.
std::string csv_field(std::string_view s);

void write_csv_row(std::ostream& out, const std::vector<std::string>& fields);

}  // namespace ssmud::cli
