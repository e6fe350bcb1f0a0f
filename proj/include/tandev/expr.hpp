#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tandev/jet.hpp"
#include "tandev/rational.hpp"

namespace tandev {

class RationalPoly;

// Immutable expression tree over named variables with exact rational
// constants. Grammar:
// 
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := ('-' | '+') unary | power
//   power   := primary ('^' integer)?
//   primary := number | variable | ('sin' | 'cos' | 'exp') '(' expr ')' | '(' expr ')'
// 
// Numbers are decimal literals ("3", "0.25", "1e-3") read exactly.
class Expr {
 public:
  enum class Kind { constant, variable, neg, add, sub, mul, div, pow, sin, cos, exp };

  // Throws ParseError carrying the 1-based column of the offending token.
  static Expr parse(const std::string& text, const std::vector<std::string>& vars = {"t"});
  static Expr constant(const Rational& c);
  static Expr variable(const std::string& name);

  Kind kind() const;

  // Taylor jet in the single variable `var` at t0. Throws DomainError when
  // the expression mentions any other variable.
  Jet<double> jet(double t0, int order, const std::string& var = "t") const;
  // Exact jet; throws ExactUnavailable for transcendental functions whose
  // argument does not vanish at t0.
  Jet<Rational> jet(const Rational& t0, int order, const std::string& var = "t") const;

  double evaluate(double t, const std::string& var = "t") const { return jet(t, 0, var)[0]; }

  // The polynomial this expression denotes, or nullopt when it uses
  // transcendental functions or divides by a non-constant.
  std::optional<RationalPoly> as_polynomial(const std::vector<std::string>& vars = {"t", "u"}) const;

  std::string to_string() const;

  friend Expr operator+(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a, const Expr& b);
  friend Expr operator*(const Expr& a, const Expr& b);
  friend Expr operator/(const Expr& a, const Expr& b);

  struct Node;

 private:
  explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

}  // namespace tandev
