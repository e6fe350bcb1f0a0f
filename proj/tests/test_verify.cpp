#include <doctest.h>

#include <chrono>

#include "tandev/classify.hpp"
#include "tandev/error.hpp"
#include "tandev/verify.hpp"

using namespace tandev;

namespace {

// T_i evaluated directly from its defining integral, as an oracle.
Rational T_at(int i, const Rational& t, const Rational& u) {
  Rational tp(1);
  for (int k = 0; k < i + 1; ++k) tp *= t;
  Rational a(3, i + 3), b(1, i + 1);
  a.canonicalize();
  b.canonicalize();
  return a * tp * t * t + b * u * tp;
}

}  // namespace

TEST_CASE("T identity") {
  for (int j = 1; j <= 50; ++j) {
    CAPTURE(j);
    CHECK(check_T_identity(j).holds);
  }
  // Pointwise oracle at a few rational points for small j.
  for (int j = 1; j <= 6; ++j)
    for (const auto& [t, u] : std::vector<std::pair<Rational, Rational>>{{Rational(1, 3), Rational(-2)},
                                                                           {Rational(5, 7), Rational(3, 11)}}) {
      Rational c1(j + 2, 6), c2(j + 2, 3 * j);
      c1.canonicalize();
      c2.canonicalize();
      const Rational rhs = c1 * T_at(j - 1, t, u) * T_at(j - 1, t, u) - c2 * u * T_at(2 * j - 1, t, u);
      CHECK(T_at(2 * j + 1, t, u) == rhs);
    }
  const auto r1 = check_T_identity(1);
  CHECK(r1.lhs == r1.rhs);
  CHECK_THROWS_AS(check_T_identity(0), DomainError);
}

TEST_CASE("T5 expansion") {
  const T5Report r = check_T5_expansion();
  CHECK(r.two_step);
  CHECK(r.expanded);
  CHECK_FALSE(r.variant_with_T0);
}

TEST_CASE("cuspidal swallowtail envelope") {
  const auto t0 = std::chrono::steady_clock::now();
  const EnvelopeReport r = check_envelope_csw();
  CHECK(r.envelope);
  CHECK(r.locus);
  CHECK(r.normal_form);
  CHECK(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() < 5.0);
}

TEST_CASE("f_lambda elimination") {
  const std::vector<std::string> v{"t", "u"};
  for (int lam : {0, 1, 3, -2}) {
    CAPTURE(lam);
    const EliminationReport r = check_usw_elimination(Rational(lam));
    CHECK(r.elimination_identity);
    CHECK(r.reduces_to_stated);
    CHECK(r.reduced_form);
  }
  CHECK(check_usw_elimination(Rational(0)).fourth_component == "0");
  CHECK(check_usw_elimination(Rational(1)).fourth_component ==
        normal_form("USW24").map[3].to_string());
}

TEST_CASE("structure equations") {
  FrameOptions opt;
  opt.samples = 10001;
  const auto helix = FrontalCurve::from_components(std::vector<std::string>{"cos(t)", "sin(t)", "t"}, {-1, 1});
  const StructureReport h = check_structure_equation_consistency("helix", helix, opt, 1e-10);
  CHECK(h.residuals.antisymmetry < 1e-10);
  CHECK(h.passed);
  const auto circle = FrontalCurve::from_components(std::vector<std::string>{"cos(t)", "sin(t)", "0"}, {-1, 1});
  const StructureReport c = check_structure_equation_consistency("circle", circle, opt);
  CHECK(c.ell_sup < 1e-12);
  CHECK(c.passed);
  const StructureReport p = check_structure_equation_consistency("poly", random_polynomial_fixture(7), opt);
  CHECK(p.residuals.antisymmetry < 1e-8);
  CHECK(p.passed);
}

TEST_CASE("suites") {
  for (const auto& c : run_suite("all", 2)) {
    CAPTURE(c.name);
    CAPTURE(c.detail);
    CHECK(c.passed);
  }
  CHECK_THROWS_AS(run_suite("nope"), DomainError);
}
