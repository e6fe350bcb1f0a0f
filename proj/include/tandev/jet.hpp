#pragma once

// Truncated Taylor series in one variable.
//
// A Jet<T> of order K at basepoint t0 stores c_0..c_K with
//   f(t0 + d) = c_0 + c_1 d + ... + c_K d^K + O(d^{K+1}),
// i.e. Taylor coefficients f^(k)(t0)/k!, not raw derivatives. Binary
// operations truncate to the smaller of the two orders.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "tandev/error.hpp"
#include "tandev/rational.hpp"

namespace tandev {

template <class T>
struct JetScalar;

template <>
struct JetScalar<double> {
  static constexpr bool exact = false;
  static bool is_zero(double x) { return x == 0.0; }
  static double sin(double x) { return std::sin(x); }
  static double cos(double x) { return std::cos(x); }
  static double exp(double x) { return std::exp(x); }
  static bool same(double a, double b) { return a == b; }
};

template <>
struct JetScalar<Rational> {
  static constexpr bool exact = true;
  static bool is_zero(const Rational& x) { return sgn(x) == 0; }
  // Transcendental values are rational only at the origin.
  static Rational sin(const Rational& x) {
    require_zero(x, "sin");
    return Rational(0);
  }
  static Rational cos(const Rational& x) {
    require_zero(x, "cos");
    return Rational(1);
  }
  static Rational exp(const Rational& x) {
    require_zero(x, "exp");
    return Rational(1);
  }
  static bool same(const Rational& a, const Rational& b) { return a == b; }

 private:
  static void require_zero(const Rational& x, const char* fn) {
    if (sgn(x) != 0)
      throw ExactUnavailable(std::string(fn) + " of an argument with value " +
                             x.get_str() + " has no exact rational jet");
  }
};

template <class T>
class Jet {
 public:
  Jet() : base_(0), coeffs_(1, T(0)) {}
  Jet(T base, std::vector<T> coeffs)
      : base_(std::move(base)), coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw DomainError("jet needs at least one coefficient");
  }

  static Jet constant(const T& base, const T& value, int order) {
    std::vector<T> c(order + 1, T(0));
    c[0] = value;
    return Jet(base, std::move(c));
  }
  // The identity function t, expanded at `base`.
  static Jet variable(const T& base, int order) {
    std::vector<T> c(order + 1, T(0));
    c[0] = base;
    if (order >= 1) c[1] = T(1);
    return Jet(base, std::move(c));
  }
  // (t - base)^m truncated to `order`.
  static Jet monomial_at_base(const T& base, int m, int order) {
    std::vector<T> c(order + 1, T(0));
    if (m <= order) c[m] = T(1);
    return Jet(base, std::move(c));
  }

  int order() const { return static_cast<int>(coeffs_.size()) - 1; }
  const T& base() const { return base_; }
  const T& operator[](int k) const { return coeffs_[k]; }
  T& operator[](int k) { return coeffs_[k]; }
  const std::vector<T>& coeffs() const { return coeffs_; }
  const T& value() const { return coeffs_[0]; }

  // Raw derivative f^(k)(t0) = k! c_k.
  T derivative_value(int k) const {
    T fact(1);
    for (int i = 2; i <= k; ++i) fact *= T(i);
    return fact * coeffs_[k];
  }

  // Jet of f', one order lower.
  Jet derivative() const {
    if (order() == 0) return Jet::constant(base_, T(0), 0);
    std::vector<T> c(order());
    for (int k = 0; k < order(); ++k) c[k] = T(k + 1) * coeffs_[k + 1];
    return Jet(base_, std::move(c));
  }

  // Jet of the antiderivative vanishing at the basepoint, one order higher.
  Jet antiderivative() const {
    std::vector<T> c(order() + 2, T(0));
    for (int k = 0; k <= order(); ++k) c[k + 1] = coeffs_[k] / T(k + 1);
    return Jet(base_, std::move(c));
  }

  Jet truncated(int order) const {
    order = std::min(order, this->order());
    return Jet(base_, std::vector<T>(coeffs_.begin(), coeffs_.begin() + order + 1));
  }

  // Divides by (t - t0)^m. The caller guarantees c_0..c_{m-1} vanish; the
  // result has order order() - m.
  Jet shifted_down(int m) const {
    if (m > order()) throw DomainError("shift exceeds jet order");
    return Jet(base_, std::vector<T>(coeffs_.begin() + m, coeffs_.end()));
  }

  // Index of the first coefficient with |c_k| > tol (exactly nonzero for
  // rationals); order()+1 when all vanish.
  int valuation(double tol = 0.0) const {
    for (int k = 0; k <= order(); ++k) {
      if constexpr (JetScalar<T>::exact) {
        if (!JetScalar<T>::is_zero(coeffs_[k])) return k;
      } else {
        if (std::abs(coeffs_[k]) > tol) return k;
      }
    }
    return order() + 1;
  }

  // Evaluates the truncated polynomial at t0 + d.
  T evaluate_offset(const T& d) const {
    T acc = coeffs_.back();
    for (int k = order() - 1; k >= 0; --k) acc = acc * d + coeffs_[k];
    return acc;
  }

  Jet operator-() const {
    Jet r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
  }

  Jet& operator+=(const Jet& o) { return *this = *this + o; }
  Jet& operator-=(const Jet& o) { return *this = *this - o; }
  Jet& operator*=(const Jet& o) { return *this = *this * o; }
  Jet& operator/=(const Jet& o) { return *this = *this / o; }

  friend Jet operator+(const Jet& a, const Jet& b) {
    check_base(a, b);
    const int n = std::min(a.order(), b.order());
    std::vector<T> c(n + 1);
    for (int k = 0; k <= n; ++k) c[k] = a.coeffs_[k] + b.coeffs_[k];
    return Jet(a.base_, std::move(c));
  }
  friend Jet operator-(const Jet& a, const Jet& b) {
    check_base(a, b);
    const int n = std::min(a.order(), b.order());
    std::vector<T> c(n + 1);
    for (int k = 0; k <= n; ++k) c[k] = a.coeffs_[k] - b.coeffs_[k];
    return Jet(a.base_, std::move(c));
  }
  // Leibniz rule on Taylor coefficients: a plain Cauchy product.
  friend Jet operator*(const Jet& a, const Jet& b) {
    check_base(a, b);
    const int n = std::min(a.order(), b.order());
    std::vector<T> c(n + 1, T(0));
    for (int k = 0; k <= n; ++k)
      for (int j = 0; j <= k; ++j) c[k] += a.coeffs_[j] * b.coeffs_[k - j];
    return Jet(a.base_, std::move(c));
  }
  friend Jet operator/(const Jet& a, const Jet& b) {
    check_base(a, b);
    if (JetScalar<T>::is_zero(b.coeffs_[0]))
      throw ZeroDivision("division by a jet with zero value");
    const int n = std::min(a.order(), b.order());
    std::vector<T> q(n + 1);
    for (int k = 0; k <= n; ++k) {
      T acc = a.coeffs_[k];
      for (int j = 1; j <= k; ++j) acc -= b.coeffs_[j] * q[k - j];
      q[k] = acc / b.coeffs_[0];
    }
    return Jet(a.base_, std::move(q));
  }

  friend Jet operator+(const Jet& a, const T& s) {
    Jet r = a;
    r.coeffs_[0] += s;
    return r;
  }
  friend Jet operator+(const T& s, const Jet& a) { return a + s; }
  friend Jet operator-(const Jet& a, const T& s) {
    Jet r = a;
    r.coeffs_[0] -= s;
    return r;
  }
  friend Jet operator-(const T& s, const Jet& a) { return (-a) + s; }
  friend Jet operator*(const Jet& a, const T& s) {
    Jet r = a;
    for (auto& c : r.coeffs_) c *= s;
    return r;
  }
  friend Jet operator*(const T& s, const Jet& a) { return a * s; }
  friend Jet operator/(const Jet& a, const T& s) {
    if (JetScalar<T>::is_zero(s)) throw ZeroDivision("division of a jet by zero");
    Jet r = a;
    for (auto& c : r.coeffs_) c /= s;
    return r;
  }

 private:
  static void check_base(const Jet& a, const Jet& b) {
    if (!JetScalar<T>::same(a.base_, b.base_))
      throw BasepointMismatch("jets expanded at different basepoints");
  }

  T base_;
  std::vector<T> coeffs_;
};

template <class T>
using JetVector = std::vector<Jet<T>>;

template <class T>
Jet<T> pow(const Jet<T>& x, int n) {
  if (n < 0) return Jet<T>::constant(x.base(), T(1), x.order()) / pow(x, -n);
  Jet<T> result = Jet<T>::constant(x.base(), T(1), x.order());
  Jet<T> b = x;
  while (n > 0) {
    if (n & 1) result = result * b;
    n >>= 1;
    if (n > 0) b = b * b;
  }
  return result;
}

// x^alpha for real alpha; requires x(t0) > 0.
inline Jet<double> real_pow(const Jet<double>& x, double alpha) {
  const double x0 = x[0];
  if (!(x0 > 0.0)) throw ZeroDivision("real power of a jet with non-positive value");
  std::vector<double> y(x.order() + 1, 0.0);
  y[0] = std::pow(x0, alpha);
  for (int k = 1; k <= x.order(); ++k) {
    double acc = 0.0;
    for (int j = 1; j <= k; ++j) acc += (alpha * j - (k - j)) * x[j] * y[k - j];
    y[k] = acc / (k * x0);
  }
  return Jet<double>(x.base(), std::move(y));
}

inline Jet<double> sqrt(const Jet<double>& x) { return real_pow(x, 0.5); }
inline Jet<double> inv_sqrt(const Jet<double>& x) { return real_pow(x, -0.5); }

namespace detail {
// sin and cos share one recurrence: s' = c u', c' = -s u'.
template <class T>
std::pair<Jet<T>, Jet<T>> sin_cos(const Jet<T>& u) {
  const int n = u.order();
  std::vector<T> s(n + 1, T(0)), c(n + 1, T(0));
  s[0] = JetScalar<T>::sin(u[0]);
  c[0] = JetScalar<T>::cos(u[0]);
  for (int k = 1; k <= n; ++k) {
    T as(0), ac(0);
    for (int j = 1; j <= k; ++j) {
      as += T(j) * u[j] * c[k - j];
      ac += T(j) * u[j] * s[k - j];
    }
    s[k] = as / T(k);
    c[k] = -ac / T(k);
  }
  return {Jet<T>(u.base(), std::move(s)), Jet<T>(u.base(), std::move(c))};
}
}  // namespace detail

template <class T>
Jet<T> sin(const Jet<T>& u) {
  return detail::sin_cos(u).first;
}
template <class T>
Jet<T> cos(const Jet<T>& u) {
  return detail::sin_cos(u).second;
}
template <class T>
Jet<T> exp(const Jet<T>& u) {
  const int n = u.order();
  std::vector<T> e(n + 1, T(0));
  e[0] = JetScalar<T>::exp(u[0]);
  for (int k = 1; k <= n; ++k) {
    T acc(0);
    for (int j = 1; j <= k; ++j) acc += T(j) * u[j] * e[k - j];
    e[k] = acc / T(k);
  }
  return Jet<T>(u.base(), std::move(e));
}

// ---- vector helpers -------------------------------------------------------

template <class T>
Jet<T> dot(const JetVector<T>& a, const JetVector<T>& b) {
  if (a.size() != b.size() || a.empty()) throw DomainError("dot: dimension mismatch");
  Jet<T> acc = a[0] * b[0];
  for (std::size_t i = 1; i < a.size(); ++i) acc = acc + a[i] * b[i];
  return acc;
}

template <class T>
JetVector<T> scale(const JetVector<T>& v, const Jet<T>& s) {
  JetVector<T> r;
  r.reserve(v.size());
  for (const auto& c : v) r.push_back(c * s);
  return r;
}

template <class T>
JetVector<T> add(const JetVector<T>& a, const JetVector<T>& b) {
  JetVector<T> r;
  r.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r.push_back(a[i] + b[i]);
  return r;
}

template <class T>
JetVector<T> derivative(const JetVector<T>& v) {
  JetVector<T> r;
  r.reserve(v.size());
  for (const auto& c : v) r.push_back(c.derivative());
  return r;
}

template <class T>
JetVector<T> truncated(const JetVector<T>& v, int order) {
  JetVector<T> r;
  r.reserve(v.size());
  for (const auto& c : v) r.push_back(c.truncated(order));
  return r;
}

template <class T>
int order(const JetVector<T>& v) {
  int k = v.at(0).order();
  for (const auto& c : v) k = std::min(k, c.order());
  return k;
}

// Three-dimensional cross product.
template <class T>
JetVector<T> cross(const JetVector<T>& a, const JetVector<T>& b) {
  if (a.size() != 3 || b.size() != 3) throw DomainError("cross product needs dimension 3");
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

// Jet of 1/|v|.
Jet<double> inv_norm(const JetVector<double>& v);

// Jet of v/|v|.
JetVector<double> normalized(const JetVector<double>& v);

// Vector of k-th Taylor coefficients.
template <class T>
std::vector<T> coefficient(const JetVector<T>& v, int k) {
  std::vector<T> r;
  r.reserve(v.size());
  for (const auto& c : v) r.push_back(c[k]);
  return r;
}

}  // namespace tandev
