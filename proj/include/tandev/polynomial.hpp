#pragma once

#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tandev/jet.hpp"
#include "tandev/rational.hpp"

namespace tandev {

// Sparse multivariate polynomial with exact rational coefficients over an
// ordered list of named variables. Zero coefficients are never stored.
class RationalPoly {
 public:
  using Exponents = std::vector<int>;

  explicit RationalPoly(std::vector<std::string> vars = {"t", "u"});

  static RationalPoly constant(const Rational& c, std::vector<std::string> vars = {"t", "u"});
  static RationalPoly variable(const std::string& name, std::vector<std::string> vars = {"t", "u"});
  static RationalPoly monomial(const Rational& c, Exponents e,
                               std::vector<std::string> vars = {"t", "u"});
  // Parses an expression such as "3/4*t^4 + 1/2*u*t^2"; throws ParseError
  // when the expression is not a polynomial in `vars`.
  static RationalPoly parse(const std::string& text, std::vector<std::string> vars = {"t", "u"});

  const std::vector<std::string>& vars() const { return vars_; }
  int var_index(const std::string& name) const;
  const std::map<Exponents, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  // Same polynomial over a different (super)set of variables.
  RationalPoly with_vars(std::vector<std::string> vars) const;

  RationalPoly operator-() const;
  RationalPoly& operator+=(const RationalPoly& o);
  RationalPoly& operator-=(const RationalPoly& o);
  RationalPoly& operator*=(const Rational& c);
  friend RationalPoly operator+(RationalPoly a, const RationalPoly& b) { return a += b; }
  friend RationalPoly operator-(RationalPoly a, const RationalPoly& b) { return a -= b; }
  friend RationalPoly operator*(const RationalPoly& a, const RationalPoly& b);
  friend RationalPoly operator*(RationalPoly a, const Rational& c) { return a *= c; }
  friend RationalPoly operator*(const Rational& c, RationalPoly a) { return a *= c; }
  friend bool operator==(const RationalPoly& a, const RationalPoly& b);

  RationalPoly pow(int n) const;
  // Antiderivative in `var` with zero integration constant.
  RationalPoly integrate(const std::string& var) const;
  RationalPoly integrate_t() const { return integrate("t"); }
  RationalPoly differentiate(const std::string& var) const;
  // Replaces every occurrence of `var` by `q` (which must share vars()).
  RationalPoly substitute(const std::string& var, const RationalPoly& q) const;
  int degree(const std::string& var) const;
  // Coefficient of var^k, as a polynomial not containing `var`.
  RationalPoly coefficient(const std::string& var, int k) const;
  // True when the polynomial only involves the listed variables.
  bool only_involves(const std::vector<std::string>& names) const;

  double evaluate(std::span<const double> values) const;
  Rational evaluate(std::span<const Rational> values) const;

  // Canonical text form, terms sorted by descending exponent vector.
  std::string to_string() const;

 private:
  void add_term(const Exponents& e, const Rational& c);
  void require_same_vars(const RationalPoly& o) const;

  std::vector<std::string> vars_;
  std::map<Exponents, Rational> terms_;
};

// Dense univariate polynomial with rational coefficients, c[k] multiplies t^k.
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<Rational> coeffs);
  static UPoly monomial(const Rational& c, int k);
  // Converts a RationalPoly that only involves `var`.
  static UPoly from(const RationalPoly& p, const std::string& var = "t");
  RationalPoly to_poly(const std::string& var = "t",
                       std::vector<std::string> vars = {"t", "u"}) const;

  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c_.empty(); }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational operator[](int k) const { return k < static_cast<int>(c_.size()) ? c_[k] : Rational(0); }
  // Lowest exponent with a nonzero coefficient (-1 for zero).
  int valuation() const;
  // Divides by t^m; requires valuation() >= m.
  UPoly shifted_down(int m) const;
  UPoly derivative() const;

  friend UPoly operator+(const UPoly& a, const UPoly& b);
  friend UPoly operator-(const UPoly& a, const UPoly& b);
  friend UPoly operator*(const UPoly& a, const UPoly& b);
  friend UPoly operator*(const UPoly& a, const Rational& c);
  friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }

  // Euclidean division: a = q*b + r with deg r < deg b.
  static std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b);
  // Monic greatest common divisor (zero if both are zero).
  static UPoly gcd(const UPoly& a, const UPoly& b);

  Rational evaluate(const Rational& t) const;
  double evaluate(double t) const;

  // Taylor expansion at t0 (Horner / repeated synthetic division).
  template <class T>
  Jet<T> jet(const T& t0, int order) const;

  std::string to_string(const std::string& var = "t") const;

 private:
  void trim();
  std::vector<Rational> c_;
};

template <class T>
Jet<T> UPoly::jet(const T& t0, int order) const {
  std::vector<T> work;
  work.reserve(c_.size());
  for (const auto& q : c_) {
    if constexpr (std::is_same_v<T, double>)
      work.push_back(q.get_d());
    else
      work.push_back(T(q));
  }
  std::vector<T> out(order + 1, T(0));
  // Repeated synthetic division by (t - t0) yields the Taylor coefficients.
  const int n = static_cast<int>(work.size());
  for (int k = 0; k <= order && k < n; ++k) {
    for (int i = n - 2; i >= k; --i) work[i] += t0 * work[i + 1];
    out[k] = work[k];
  }
  return Jet<T>(t0, std::move(out));
}

}  // namespace tandev
