#include "tandev/polynomial.hpp"

#include <algorithm>
#include <sstream>

#include "tandev/error.hpp"
#include "tandev/expr.hpp"

namespace tandev {

// ---- RationalPoly ---------------------------------------------------------

RationalPoly::RationalPoly(std::vector<std::string> vars) : vars_(std::move(vars)) {}

RationalPoly RationalPoly::constant(const Rational& c, std::vector<std::string> vars) {
  RationalPoly p(std::move(vars));
  p.add_term(Exponents(p.vars_.size(), 0), c);
  return p;
}

RationalPoly RationalPoly::variable(const std::string& name, std::vector<std::string> vars) {
  RationalPoly p(std::move(vars));
  Exponents e(p.vars_.size(), 0);
  e[p.var_index(name)] = 1;
  p.add_term(e, Rational(1));
  return p;
}

RationalPoly RationalPoly::monomial(const Rational& c, Exponents e, std::vector<std::string> vars) {
  RationalPoly p(std::move(vars));
  if (e.size() != p.vars_.size()) throw DomainError("monomial exponent count mismatch");
  p.add_term(e, c);
  return p;
}

RationalPoly RationalPoly::parse(const std::string& text, std::vector<std::string> vars) {
  auto p = Expr::parse(text, vars).as_polynomial(vars);
  if (!p) throw ParseError("'" + text + "' is not a polynomial");
  return *p;
}

int RationalPoly::var_index(const std::string& name) const {
  auto it = std::find(vars_.begin(), vars_.end(), name);
  if (it == vars_.end()) throw DomainError("unknown polynomial variable '" + name + "'");
  return static_cast<int>(it - vars_.begin());
}

RationalPoly RationalPoly::with_vars(std::vector<std::string> vars) const {
  RationalPoly r(std::move(vars));
  std::vector<int> map;
  for (const auto& v : vars_) map.push_back(r.var_index(v));
  for (const auto& [e, c] : terms_) {
    Exponents ne(r.vars_.size(), 0);
    for (std::size_t i = 0; i < e.size(); ++i) ne[map[i]] = e[i];
    r.add_term(ne, c);
  }
  return r;
}

void RationalPoly::add_term(const Exponents& e, const Rational& c) {
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

void RationalPoly::require_same_vars(const RationalPoly& o) const {
  if (vars_ != o.vars_) throw DomainError("polynomials over different variable lists");
}

RationalPoly RationalPoly::operator-() const {
  RationalPoly r = *this;
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

RationalPoly& RationalPoly::operator+=(const RationalPoly& o) {
  require_same_vars(o);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

RationalPoly& RationalPoly::operator-=(const RationalPoly& o) {
  require_same_vars(o);
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

RationalPoly& RationalPoly::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

RationalPoly operator*(const RationalPoly& a, const RationalPoly& b) {
  a.require_same_vars(b);
  RationalPoly r(a.vars_);
  RationalPoly::Exponents e(a.vars_.size());
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  return r;
}

bool operator==(const RationalPoly& a, const RationalPoly& b) {
  return a.vars_ == b.vars_ && a.terms_ == b.terms_;
}

RationalPoly RationalPoly::pow(int n) const {
  if (n < 0) throw DomainError("negative polynomial power");
  RationalPoly r = constant(Rational(1), vars_);
  RationalPoly b = *this;
  while (n > 0) {
    if (n & 1) r = r * b;
    n >>= 1;
    if (n > 0) b = b * b;
  }
  return r;
}

RationalPoly RationalPoly::integrate(const std::string& var) const {
  const int i = var_index(var);
  RationalPoly r(vars_);
  for (const auto& [key, c] : terms_) {
    Exponents e = key;
    e[i] += 1;
    r.add_term(e, c / Rational(e[i]));
  }
  return r;
}

RationalPoly RationalPoly::differentiate(const std::string& var) const {
  const int i = var_index(var);
  RationalPoly r(vars_);
  for (const auto& [key, c] : terms_) {
    Exponents e = key;
    if (e[i] == 0) continue;
    Rational k(e[i]);
    e[i] -= 1;
    r.add_term(e, c * k);
  }
  return r;
}

RationalPoly RationalPoly::substitute(const std::string& var, const RationalPoly& q) const {
  require_same_vars(q);
  const int i = var_index(var);
  const int deg = degree(var);
  std::vector<RationalPoly> powers{constant(Rational(1), vars_)};
  for (int k = 1; k <= deg; ++k) powers.push_back(powers.back() * q);
  RationalPoly r(vars_);
  for (const auto& [key, c] : terms_) {
    Exponents e = key;
    const int k = e[i];
    e[i] = 0;
    r += monomial(c, e, vars_) * powers[k];
  }
  return r;
}

int RationalPoly::degree(const std::string& var) const {
  const int i = var_index(var);
  int d = terms_.empty() ? -1 : 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e[i]);
  return d;
}

RationalPoly RationalPoly::coefficient(const std::string& var, int k) const {
  const int i = var_index(var);
  RationalPoly r(vars_);
  for (const auto& [key, c] : terms_) {
    Exponents e = key;
    if (e[i] != k) continue;
    e[i] = 0;
    r.add_term(e, c);
  }
  return r;
}

bool RationalPoly::only_involves(const std::vector<std::string>& names) const {
  for (const auto& [e, c] : terms_)
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] != 0 && std::find(names.begin(), names.end(), vars_[i]) == names.end()) return false;
  return true;
}

double RationalPoly::evaluate(std::span<const double> values) const {
  if (values.size() != vars_.size()) throw DomainError("evaluate: wrong number of values");
  double acc = 0.0;
  for (const auto& [e, c] : terms_) {
    double m = c.get_d();
    for (std::size_t i = 0; i < e.size(); ++i)
      for (int k = 0; k < e[i]; ++k) m *= values[i];
    acc += m;
  }
  return acc;
}

Rational RationalPoly::evaluate(std::span<const Rational> values) const {
  if (values.size() != vars_.size()) throw DomainError("evaluate: wrong number of values");
  Rational acc(0);
  for (const auto& [e, c] : terms_) {
    Rational m = c;
    for (std::size_t i = 0; i < e.size(); ++i)
      for (int k = 0; k < e[i]; ++k) m *= values[i];
    acc += m;
  }
  return acc;
}

std::string RationalPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    Rational mag = abs(c);
    if (first) {
      if (sgn(c) < 0) os << "-";
    } else {
      os << (sgn(c) < 0 ? " - " : " + ");
    }
    first = false;
    bool constant_term = std::all_of(e.begin(), e.end(), [](int k) { return k == 0; });
    bool wrote = false;
    if (mag != 1 || constant_term) {
      os << mag.get_str();
      wrote = true;
    }
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (wrote) os << "*";
      os << vars_[i];
      if (e[i] > 1) os << "^" << e[i];
      wrote = true;
    }
  }
  return os.str();
}

// ---- UPoly ----------------------------------------------------------------

UPoly::UPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

UPoly UPoly::monomial(const Rational& c, int k) {
  std::vector<Rational> v(k + 1, Rational(0));
  v[k] = c;
  return UPoly(std::move(v));
}

UPoly UPoly::from(const RationalPoly& p, const std::string& var) {
  if (!p.only_involves({var})) throw DomainError("polynomial is not univariate in " + var);
  const int i = p.var_index(var);
  std::vector<Rational> v(std::max(p.degree(var), 0) + 1, Rational(0));
  for (const auto& [e, c] : p.terms()) v[e[i]] += c;
  return UPoly(std::move(v));
}

RationalPoly UPoly::to_poly(const std::string& var, std::vector<std::string> vars) const {
  RationalPoly r(vars);
  const RationalPoly x = RationalPoly::variable(var, vars);
  for (int k = 0; k <= degree(); ++k)
    if (sgn(c_[k]) != 0) r += x.pow(k) * c_[k];
  return r;
}

void UPoly::trim() {
  while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
}

int UPoly::valuation() const {
  for (int k = 0; k <= degree(); ++k)
    if (sgn(c_[k]) != 0) return k;
  return -1;
}

UPoly UPoly::shifted_down(int m) const {
  if (is_zero()) return {};
  if (valuation() < m) throw DomainError("shifted_down: polynomial not divisible by t^m");
  return UPoly(std::vector<Rational>(c_.begin() + m, c_.end()));
}

UPoly UPoly::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<Rational> v(c_.size() - 1);
  for (std::size_t k = 1; k < c_.size(); ++k) v[k - 1] = c_[k] * Rational(static_cast<long>(k));
  return UPoly(std::move(v));
}

UPoly operator+(const UPoly& a, const UPoly& b) {
  std::vector<Rational> v(std::max(a.c_.size(), b.c_.size()), Rational(0));
  for (std::size_t k = 0; k < a.c_.size(); ++k) v[k] += a.c_[k];
  for (std::size_t k = 0; k < b.c_.size(); ++k) v[k] += b.c_[k];
  return UPoly(std::move(v));
}

UPoly operator-(const UPoly& a, const UPoly& b) { return a + b * Rational(-1); }

UPoly operator*(const UPoly& a, const UPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> v(a.c_.size() + b.c_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
  return UPoly(std::move(v));
}

UPoly operator*(const UPoly& a, const Rational& c) {
  std::vector<Rational> v = a.c_;
  for (auto& x : v) x *= c;
  return UPoly(std::move(v));
}

std::pair<UPoly, UPoly> UPoly::divmod(const UPoly& a, const UPoly& b) {
  if (b.is_zero()) throw ZeroDivision("polynomial division by zero");
  std::vector<Rational> r = a.c_;
  const int db = b.degree();
  std::vector<Rational> q(std::max(a.degree() - db + 1, 0), Rational(0));
  for (int k = a.degree(); k >= db; --k) {
    if (sgn(r[k]) == 0) continue;
    Rational f = r[k] / b.c_[db];
    q[k - db] = f;
    for (int j = 0; j <= db; ++j) r[k - db + j] -= f * b.c_[j];
  }
  return {UPoly(std::move(q)), UPoly(std::move(r))};
}

UPoly UPoly::gcd(const UPoly& a, const UPoly& b) {
  UPoly x = a, y = b;
  while (!y.is_zero()) {
    UPoly r = divmod(x, y).second;
    x = std::move(y);
    y = std::move(r);
  }
  if (x.is_zero()) return x;
  return x * (Rational(1) / x.c_.back());
}

Rational UPoly::evaluate(const Rational& t) const {
  Rational acc(0);
  for (int k = degree(); k >= 0; --k) acc = acc * t + c_[k];
  return acc;
}

double UPoly::evaluate(double t) const {
  double acc = 0.0;
  for (int k = degree(); k >= 0; --k) acc = acc * t + c_[k].get_d();
  return acc;
}

std::string UPoly::to_string(const std::string& var) const { return to_poly(var, {var}).to_string(); }

}  // namespace tandev
