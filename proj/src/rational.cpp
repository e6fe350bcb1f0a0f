#include "tandev/rational.hpp"

#include <cctype>
#include <cmath>

#include "tandev/error.hpp"

namespace tandev {

namespace {

Rational pow10(long e) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(e < 0 ? -e : e));
  return e < 0 ? Rational(mpz_class(1), p) : Rational(p);
}

// Decimal literal with optional fraction and exponent, no sign.
Rational parse_decimal(const std::string& s) {
  std::size_t i = 0;
  mpz_class digits = 0;
  long scale = 0;
  bool any = false;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
    digits = digits * 10 + (s[i] - '0');
    ++i;
    any = true;
  }
  if (i < s.size() && s[i] == '.') {
    ++i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      digits = digits * 10 + (s[i] - '0');
      --scale;
      ++i;
      any = true;
    }
  }
  if (!any) throw ParseError("malformed number '" + s + "'");
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    ++i;
    bool neg = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) neg = s[i++] == '-';
    long e = 0;
    bool edigits = false;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      e = e * 10 + (s[i] - '0');
      if (e > 100000) throw ParseError("exponent too large in '" + s + "'");
      ++i;
      edigits = true;
    }
    if (!edigits) throw ParseError("malformed exponent in '" + s + "'");
    scale += neg ? -e : e;
  }
  if (i != s.size()) throw ParseError("malformed number '" + s + "'");
  Rational q(digits);
  q *= pow10(scale);
  q.canonicalize();
  return q;
}

}  // namespace

Rational parse_rational(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw ParseError("empty number");
  bool neg = false;
  if (s[0] == '+' || s[0] == '-') {
    neg = s[0] == '-';
    s.erase(0, 1);
  }
  Rational q;
  if (auto slash = s.find('/'); slash != std::string::npos) {
    Rational num = parse_decimal(s.substr(0, slash));
    Rational den = parse_decimal(s.substr(slash + 1));
    if (sgn(den) == 0) throw ParseError("zero denominator in '" + text + "'");
    q = num / den;
  } else {
    q = parse_decimal(s);
  }
  return neg ? Rational(-q) : q;
}

Rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw DomainError("cannot convert a non-finite double to a rational");
  Rational q(x);  // exact: GMP converts the binary value
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

}  // namespace tandev
