#include "coefbound/scalar.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <string>

namespace coefbound {

namespace {

std::string trimmed(std::string_view text) {
  std::size_t b = 0;
  std::size_t e = text.size();
  while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) --e;
  return std::string(text.substr(b, e - b));
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

// decimal only: mpz's string constructor reads a leading 0 as octal
boost::multiprecision::mpz_int decimal_integer(std::string_view digits) {
  const std::size_t first = digits.find_first_not_of('0');
  return boost::multiprecision::mpz_int(first == std::string_view::npos ? std::string("0")
                                                                        : std::string(digits.substr(first)));
}

// [sign] digits [. digits] [e [sign] digits], exactly.
Rational parse_decimal(const std::string& s) {
  std::size_t i = 0;
  bool negative = false;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) negative = s[i++] == '-';

  std::string digits;
  int scale = 0;
  std::size_t start = i;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) digits += s[i++];
  if (i < s.size() && s[i] == '.') {
    ++i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      digits += s[i++];
      --scale;
    }
  }
  if (digits.empty() || i == start) throw usage_error("not a number: '" + s + "'");

  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    ++i;
    if (i < s.size() && s[i] == '+') ++i;
    int exponent = 0;
    auto [ptr, ec] = std::from_chars(s.data() + i, s.data() + s.size(), exponent);
    if (ec != std::errc() || ptr != s.data() + s.size()) throw usage_error("bad exponent in '" + s + "'");
    scale += exponent;
    i = s.size();
  }
  if (i != s.size()) throw usage_error("trailing characters in '" + s + "'");

  Rational value{decimal_integer(digits)};
  const Rational ten(10);
  value *= ipow(ten, scale);
  return negative ? Rational(-value) : value;
}

}  // namespace

double scalar_traits<double>::parse(std::string_view text) {
  const std::string s = trimmed(text);
  if (auto slash = s.find('/'); slash != std::string::npos) {
    return scalar_traits<Rational>::parse(s).convert_to<double>();
  }
  double value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    throw usage_error("not a number: '" + s + "'");
  return value;
}

std::string scalar_traits<double>::format(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Rational scalar_traits<Rational>::parse(std::string_view text) {
  const std::string s = trimmed(text);
  if (auto slash = s.find('/'); slash != std::string::npos) {
    std::string num = s.substr(0, slash);
    std::string den = s.substr(slash + 1);
    std::string num_digits = (!num.empty() && (num[0] == '-' || num[0] == '+')) ? num.substr(1) : num;
    if (!all_digits(num_digits) || !all_digits(den)) throw usage_error("not a fraction: '" + s + "'");
    const boost::multiprecision::mpz_int d = decimal_integer(den);
    if (d == 0) throw usage_error("zero denominator in '" + s + "'");
    Rational value(decimal_integer(num_digits), d);
    return (num[0] == '-') ? Rational(-value) : value;
  }
  return parse_decimal(s);
}

std::string scalar_traits<Rational>::format(const Rational& x) { return x.str(); }

}  // namespace coefbound
