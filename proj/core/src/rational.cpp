#include "qframe/rational.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace qframe {

Rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("non-finite double");
  // cpp_rational's double constructor is exact for finite values.
  return Rational(x);
}

double rational_to_double(const Rational& r) {
  return static_cast<double>(r);
}

namespace {

// cpp_int's string constructor reads a leading 0 as an octal prefix
// ("0625" -> 405); digit runs here are always decimal, so strip the
// leading zeros before handing over.
BigInt decimal_digits(const std::string& t) {
  std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
  std::size_t first = t.find_first_not_of('0', i);
  if (first == std::string::npos) return 0;
  BigInt v(t.substr(first));
  return t[0] == '-' ? BigInt(-v) : v;
}

}  // namespace

std::optional<Rational> rational_from_string(const std::string& s) {
  if (s.empty()) return std::nullopt;
  auto is_int = [](const std::string& t) {
    if (t.empty()) return false;
    std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
    return true;
  };

  auto slash = s.find('/');
  if (slash != std::string::npos) {
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!is_int(num) || !is_int(den)) return std::nullopt;
    BigInt d = decimal_digits(den);
    if (d == 0) return std::nullopt;
    return Rational(decimal_digits(num), d);
  }

  auto dot = s.find('.');
  if (dot != std::string::npos) {
    std::string whole = s.substr(0, dot), frac = s.substr(dot + 1);
    bool neg = !whole.empty() && whole[0] == '-';
    if (whole.empty() || whole == "-" || whole == "+") whole += "0";
    if (!is_int(whole)) return std::nullopt;
    if (frac.empty()) return std::nullopt;
    for (char c : frac)
      if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
    BigInt scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    BigInt w = decimal_digits(whole);
    BigInt f = decimal_digits(frac);
    BigInt num = w * scale + (neg ? -f : f);
    return Rational(num, scale);
  }

  if (!is_int(s)) return std::nullopt;
  return Rational(decimal_digits(s));
}

std::string rational_to_string(const Rational& r) {
  BigInt num = boost::multiprecision::numerator(r);
  BigInt den = boost::multiprecision::denominator(r);
  // Count factors of 2 and 5; if nothing else remains the expansion
  // terminates and we print a decimal.
  BigInt d = den;
  int twos = 0, fives = 0;
  while (d % 2 == 0) { d /= 2; ++twos; }
  while (d % 5 == 0) { d /= 5; ++fives; }
  if (d != 1 || twos > 64 || fives > 64)
    return num.str() + "/" + den.str();
  if (den == 1) return num.str();

  int digits = std::max(twos, fives);
  BigInt scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  BigInt scaled = num * scale / den;  // exact by construction
  bool neg = scaled < 0;
  if (neg) scaled = -scaled;
  std::string body = scaled.str();
  if (static_cast<int>(body.size()) <= digits)
    body.insert(0, digits + 1 - body.size(), '0');
  body.insert(body.size() - digits, ".");
  return (neg ? "-" : "") + body;
}

}  // namespace qframe
