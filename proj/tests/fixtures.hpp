#pragma once

// Curves shared by several test binaries.

#include <random>
#include <string>
#include <vector>

#include "tandev/curve.hpp"

namespace fixtures {

using tandev::FrontalCurve;
using tandev::Interval;

inline FrontalCurve curve(const std::vector<std::string>& c, Interval d = {-1, 1}) {
  return FrontalCurve::from_components(c, d);
}

inline FrontalCurve mond() { return curve({"t", "t^3/6", "t^4/24"}); }
inline FrontalCurve cubic() { return curve({"t", "t^2/2", "t^3/6"}); }
inline FrontalCurve helix(Interval d = {-1, 1}) { return curve({"cos(t)", "sin(t)", "t"}, d); }
inline FrontalCurve moment(int dim) {
  std::vector<std::string> c;
  for (int i = 1; i <= dim; ++i) c.push_back("t^" + std::to_string(i));
  return curve(c);
}
inline FrontalCurve moment4_scaled() { return curve({"t", "t^2/2", "t^3/6", "t^4/24"}); }
inline FrontalCurve torus_knot() { return curve({"cos(t)", "sin(t)", "cos(2*t)/2", "sin(2*t)/2"}); }

// Polynomial fixture with prescribed primitive type b and shift m:
// h has leading monomials t^(b_i - 1) (mixed by an integer matrix with
// determinant one), c = t^m (1 + ...), f' = c h.
struct ShiftFixture {
  std::vector<int> primitive;
  int m = 0;
  std::vector<tandev::UPoly> position;
  std::vector<tandev::UPoly> direction;
};

inline ShiftFixture random_shift_fixture(std::mt19937& rng) {
  using tandev::Rational;
  using tandev::UPoly;
  std::uniform_int_distribution<int> dimd(3, 4), mdist(0, 2), gap(1, 2), coef(-3, 3);
  ShiftFixture fx;
  const int dim = dimd(rng);
  fx.m = mdist(rng);
  fx.primitive.push_back(1);
  for (int i = 1; i < dim; ++i) fx.primitive.push_back(fx.primitive.back() + gap(rng));

  std::vector<UPoly> base;
  for (int i = 0; i < dim; ++i) {
    std::vector<Rational> c(fx.primitive.back() + 3, Rational(0));
    c[fx.primitive[i] - 1] = 1;
    // Only exponents above every leading term, so the flag is unchanged.
    for (std::size_t k = fx.primitive.back(); k < c.size(); ++k) c[k] = coef(rng);
    base.emplace_back(c);
  }
  // Unipotent upper-triangular mix keeps the leading structure.
  for (int i = 0; i < dim; ++i) {
    UPoly h = base[i];
    for (int j = i + 1; j < dim; ++j) h = h + base[j] * Rational(coef(rng));
    fx.direction.push_back(h);
  }
  std::vector<Rational> cc(fx.m + 3, Rational(0));
  cc[fx.m] = 1;
  cc[fx.m + 1] = coef(rng);
  cc[fx.m + 2] = coef(rng);
  const UPoly c(cc);
  for (const auto& h : fx.direction) {
    const UPoly v = c * h;
    // Antiderivative with zero constant.
    std::vector<Rational> p(v.coeffs().size() + 1, Rational(0));
    for (std::size_t k = 0; k < v.coeffs().size(); ++k) p[k + 1] = v.coeffs()[k] / Rational(static_cast<long>(k + 1));
    fx.position.emplace_back(p);
  }
  return fx;
}

}  // namespace fixtures
