#include <doctest.h>

#include <cmath>
#include <sstream>

#include "fixtures.hpp"
#include "tandev/error.hpp"
#include "tandev/surface.hpp"

using namespace tandev;
using namespace fixtures;

namespace {

double dist(const Vec& a, const Vec& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

std::vector<double> grid(double lo, double hi, int n) { return sample_grid({lo, hi}, n); }

}  // namespace

TEST_CASE("tangent surface of the Mond curve") {
  // F(t, s) = f + s f' with the unnormalized velocity; Tan(f)(t, s|f'|) is the same point.
  const TangentSurface tan(mond());
  for (double t : {-0.7, 0.0, 0.3, 0.9})
    for (double s : {-0.5, 0.2, 1.0}) {
      const Vec F{t + s, t * t * t / 6 + s * t * t / 2, std::pow(t, 4) / 24 + s * t * t * t / 6};
      const double speed = std::sqrt(1 + std::pow(t, 4) / 4 + std::pow(t, 6) / 36);
      CHECK(dist(tan.eval(t, s * speed), F) < 1e-13);
    }
}

TEST_CASE("jets and Jacobians agree with finite differences") {
  const TangentSurface tan(cubic());
  auto frame = make_normal_frame(helix());
  const ParallelSurface par(frame, {0.3});
  const PolynomialSurface poly({RationalPoly::parse("u"), RationalPoly::parse("t^3 + u*t"),
                                RationalPoly::parse("3/4*t^4 + 1/2*u*t^2")});
  for (const ParametricSurface* s : std::initializer_list<const ParametricSurface*>{&tan, &par, &poly}) {
    for (double t : {-0.4, 0.1, 0.6}) {
      const Eigen::MatrixXd a = s->jacobian(t, 0.35), b = fd_jacobian(*s, t, 0.35);
      CHECK((a - b).norm() < 1e-6 * std::max(1.0, a.norm()));
      const JetVector<double> j = s->jet_t(t, 0.35, 4);
      const Vec x = s->eval(t, 0.35);
      for (int i = 0; i < s->dim(); ++i) {
        CHECK(std::abs(j[i][0] - x[i]) < 1e-12);
        CHECK(std::abs(j[i][1] - a(i, 0)) < 1e-6);
      }
    }
  }
}

TEST_CASE("singular locus of a type (2,3,4) tangent surface is s = 0") {
  const TangentSurface tan(curve({"t^2", "t^3", "t^4"}));
  for (double t : {-0.6, -0.2, 0.3, 0.8}) {
    auto [lo, hi] = singular_range(tan.jacobian(t, 0.0));
    CHECK(lo < 1e-12 * hi);
    auto [lo2, hi2] = singular_range(tan.jacobian(t, 0.1));
    CHECK(lo2 > 1e-3 * hi2);
  }
}

TEST_CASE("r = 0 parallel reproduces the tangent surface exactly") {
  const FrontalCurve f = helix();
  const TangentSurface tan(f);
  const ParallelSurface par(make_normal_frame(f), {0.0});
  for (double t : grid(-1, 1, 7))
    for (double s : grid(-1, 1, 5)) CHECK(par.eval(t, s) == tan.eval(t, s));
  CHECK(par.s_star(0.2) == 0.0);
}

TEST_CASE("parallel errors") {
  auto frame = make_normal_frame(helix());
  CHECK_THROWS_AS(ParallelSurface(frame, {0.1, 0.2}), DomainError);
  CHECK_THROWS_AS(ParallelSurface(frame, {NAN}), DomainError);
  const ParallelSurface par(frame, {0.1});
  CHECK_THROWS_AS(par.eval(1.5, 0.0), DomainError);
}

TEST_CASE("helix parallel") {
  auto frame = make_normal_frame(helix());
  const double ratio = frame->state(0.0).ell[0] / frame->state(0.0).kappa;
  CHECK(std::abs(std::abs(ratio) - 1.0) < 1e-8);
  const ParallelSurface par(frame, {0.3});
  for (double t : grid(-0.9, 0.9, 7)) CHECK(std::abs(par.s_star(t) - 0.3 * ratio) < 1e-8);

  const ParallelSurface half(frame, {0.5});
  const FrontalCurve g = directrix(frame, {0.5});
  // (ell/kappa)' = 0, so b = a = sqrt(2).
  for (double t : {-0.5, 0.0, 0.7}) CHECK(std::abs(g.speed(t) - std::sqrt(2.0)) < 1e-7);
  const auto rep = parallel_equals_tangent_of_directrix(half, g, grid(-1, 1, 101), grid(-1, 1, 101), 1e-8);
  CHECK(rep.sup_error < 1e-8);
  CHECK(rep.velocity_residual < 1e-7);
  CHECK(rep.passed);
}

TEST_CASE("cubic parallel, nonconstant invariants") {
  const FrontalCurve f = moment(3);
  auto frame = make_normal_frame(f);
  const ParallelSurface par(frame, {0.2});
  const FrontalCurve g = directrix(frame, {0.2});
  const auto rep = parallel_equals_tangent_of_directrix(par, g, grid(-1, 1, 101), grid(-1, 1, 101));
  CHECK(rep.sup_error < 1e-7);
  CHECK(rep.velocity_residual < 1e-7);

  const SingularLocus loc = singular_locus(par, grid(-1, 1, 41));
  CHECK(loc.max_on_ratio() < 1e-7);
  CHECK(loc.min_off_ratio() > 1e-3);
  std::ostringstream os;
  write_locus_csv(os, loc);
  CHECK(os.str().rfind("t,s_star,min_singular_value\n", 0) == 0);
}

TEST_CASE("directrix refuses inflections") {
  auto frame = make_normal_frame(mond());
  CHECK_THROWS_AS(directrix(frame, {0.1}), InflectionError);
}

TEST_CASE("r = 0 directrix is the curve") {
  const FrontalCurve f = moment4_scaled();
  auto frame = make_normal_frame(f);
  const FrontalCurve g = directrix(frame, {0.0, 0.0});
  for (double t : {-0.8, 0.1, 0.9}) CHECK(dist(g.position(t), f.position(t)) < 1e-12);
}

TEST_CASE("Jacobian order of Tan(f) near the singular point") {
  // |d_t ^ d_s| = |s kappa| with kappa ~ t^(a2 - a1 - 1).
  struct Case {
    std::vector<std::string> c;
    double t_exp;
  };
  for (const Case& k : {Case{{"t^2", "t^3", "t^4", "t^5"}, 0.0}, Case{{"t^3", "t^4", "t^5", "t^6"}, 0.0},
                        Case{{"t", "t^3", "t^4"}, 1.0}, Case{{"t^2", "t^5", "t^6"}, 2.0}}) {
    const TangentSurface tan(curve(k.c));
    const JacobianOrderFit fit = jacobian_order_fit(tan, 0.0);
    CHECK(fit.t_exponent == doctest::Approx(k.t_exp).epsilon(0.02));
    CHECK(fit.s_exponent == doctest::Approx(1.0).epsilon(0.02));
  }
}

TEST_CASE("Mond parallels change the topology of the singular set") {
  auto frame = make_normal_frame(mond());
  auto count = [&](double r) {
    const ParallelSurface par(frame, {r});
    return sign_regions([&](double t, double s) { return normal_determinant(par, t, s); }, {-1, 1}, {-1, 1}, 201,
                        201);
  };
  CHECK(count(0.0) == 4);
  CHECK(count(0.15) == 3);
  CHECK(count(-0.15) == 3);
}

TEST_CASE("OBJ export") {
  const TangentSurface tan(curve({"t", "0", "0"}));
  const Mesh m = sample_mesh(tan, {0, 1}, {0, 1}, 2, 2);
  std::ostringstream os;
  write_obj(os, m);
  CHECK(os.str() == "v 0 0 0\nv 1 0 0\nv 1 0 0\nv 2 0 0\nf 1 3 4\nf 1 4 2\n");
  CHECK_THROWS_AS(sample_mesh(tan, {0, 1}, {0, 1}, 1, 2), DomainError);
}
