#include "ssmud/cli/csv.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace ssmud::cli {

namespace {

constexpr int kMaxDecimals = 40;

std::string print_decimals(double v, int decimals) {
  char buf[512];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

int significant_digits(const std::string& s) {
  int count = 0;
  bool leading = true;
  for (char c : s) {
    if (c < '0' || c > '9') continue;
    if (leading && c == '0') continue;
    leading = false;
    ++count;
  }
  return count;
}

}  // namespace

std::string format_fixed(double v, int significant) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0";
  const int exponent = static_cast<int>(std::floor(std::log10(std::abs(v))));
  int decimals = std::clamp(significant - 1 - exponent, 0, kMaxDecimals);
  std::string s = print_decimals(v, decimals);
  // Rounding up across a power of ten (9.99.. -> 10.0..) adds a digit.
  if (decimals > 0 && significant_digits(s) > significant) s = print_decimals(v, decimals - 1);
  return s;
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void write_csv_row(std::ostream& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out << ',';
    out << csv_field(fields[i]);
  }
  out << '\n';
}

}  // namespace ssmud::cli
