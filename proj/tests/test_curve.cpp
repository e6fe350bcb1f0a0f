#include <doctest.h>

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "tandev/curve.hpp"
#include "tandev/error.hpp"

using namespace tandev;
using namespace fixtures;

namespace {

// Oracle: raw derivatives from symbolic differentiation, ranks by
// straightforward Gaussian elimination over Q.
int rank_q(std::vector<std::vector<Rational>> rows) {
  int r = 0;
  const int ncol = rows.empty() ? 0 : static_cast<int>(rows[0].size());
  for (int c = 0; c < ncol && r < static_cast<int>(rows.size()); ++c) {
    int piv = -1;
    for (int i = r; i < static_cast<int>(rows.size()); ++i)
      if (sgn(rows[i][c]) != 0) piv = i;
    if (piv < 0) continue;
    std::swap(rows[piv], rows[r]);
    for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
      if (i == r || sgn(rows[i][c]) == 0) continue;
      const Rational f = rows[i][c] / rows[r][c];
      for (int k = 0; k < ncol; ++k) rows[i][k] -= f * rows[r][k];
    }
    ++r;
  }
  return r;
}

std::vector<int> oracle_type(const std::vector<std::string>& comps, int kmax = 10) {
  std::vector<RationalPoly> p;
  for (const auto& c : comps) p.push_back(RationalPoly::parse(c, {"t"}));
  std::vector<int> type;
  std::vector<std::vector<Rational>> rows(p.size());
  int prev = 0;
  for (int k = 1; k <= kmax && type.size() < p.size(); ++k) {
    for (std::size_t i = 0; i < p.size(); ++i) {
      p[i] = p[i].differentiate("t");
      const Rational zero(0);
      rows[i].push_back(p[i].evaluate(std::span<const Rational>(&zero, 1)));
    }
    const int r = rank_q(rows);
    if (r > prev) type.push_back(k);
    prev = r;
  }
  return type;
}

std::vector<int> ranks(const Eigen::MatrixXd& w) {
  std::vector<int> r;
  for (int k = 1; k <= w.cols(); ++k) r.push_back(static_cast<int>(w.leftCols(k).fullPivLu().rank()));
  return r;
}

}  // namespace

TEST_CASE("curve from components") {
  SUBCASE("Mond curve") {
    auto f = mond();
    CHECK(f.speed(0.0) == doctest::Approx(1.0));
    auto tau = f.tangent(0.0);
    CHECK(tau[0] == doctest::Approx(1.0));
    CHECK(tau[1] == doctest::Approx(0.0));
    CHECK(f.speed(0.5) == doctest::Approx(std::sqrt(1 + std::pow(0.125, 2) + std::pow(0.125 / 6, 2))));
  }
  SUBCASE("singular polynomial curve") {
    auto f = curve({"t^2", "t^3", "t^4", "t^6"});
    CHECK(f.speed(0.0) == doctest::Approx(0.0));
    auto a = f.speed_jet(0.0, 2);
    CHECK(a[1] == doctest::Approx(2.0));
    auto tau = f.tangent(0.0);
    CHECK(tau == std::vector<double>{1.0, 0.0, 0.0, 0.0});
    auto tm = f.tangent(-0.3), tp = f.tangent(0.3);
    CHECK(tm[0] > 0.85);
    CHECK(tp[0] > 0.85);
  }
  SUBCASE("straight line") {
    auto f = curve({"t", "0", "0"});
    for (double t : {-0.5, 0.0, 0.9}) {
      CHECK(f.speed(t) == doctest::Approx(1.0));
      CHECK(f.tangent(t) == std::vector<double>{1.0, 0.0, 0.0});
    }
  }
  SUBCASE("unit tangent everywhere") {
    for (auto f : {mond(), helix(), curve({"t^3", "t^4", "t^5", "t^6"})})
      for (double t : sample_grid(f.domain(), 41)) {
        double n = 0;
        for (double x : f.tangent(t)) n += x * x;
        CHECK(std::abs(std::sqrt(n) - 1.0) < 1e-12);
      }
  }
  SUBCASE("rejection of non-frontal input") {
    try {
      curve({"sin(t)^2", "sin(t)^3"});
      FAIL("expected rejection");
    } catch (const NotFrontalError& e) {
      CHECK(std::abs(e.t()) < 1e-12);
    }
  }
}

TEST_CASE("position by quadrature matches the closed form") {
  auto a = std::make_shared<ExprFunction>(std::vector<Expr>{Expr::parse("2")});
  auto dir = std::make_shared<ExprFunction>(
      std::vector<Expr>{Expr::parse("-sin(t)"), Expr::parse("cos(t)"), Expr::parse("1")});
  auto f = FrontalCurve::from_frontal_data(a, dir, {1.0, 0.0, 0.0}, {0.0, 3.0});
  // |dir| = sqrt 2, so f' = sqrt 2 (-sin t, cos t, 1).
  for (double t : {0.0, 0.37, 1.5, 2.999, 3.0}) {
    auto x = f.position(t);
    const double s = std::sqrt(2.0);
    CHECK(std::abs(x[0] - (1.0 + s * (std::cos(t) - 1.0))) < 1e-12);
    CHECK(std::abs(x[1] - s * std::sin(t)) < 1e-12);
    CHECK(std::abs(x[2] - s * t) < 1e-12);
  }
}

TEST_CASE("wronskian columns are raw derivatives") {
  SUBCASE("moment curve") {
    auto w = wronskian(moment(3), 0.0, 3);
    CHECK(w(0, 0) == 1.0);
    CHECK(w(1, 1) == 2.0);
    CHECK(w(2, 2) == 6.0);
    CHECK(ranks(w) == std::vector<int>{1, 2, 3});
  }
  SUBCASE("Mond curve") { CHECK(ranks(wronskian(mond(), 0.0, 4)) == std::vector<int>{1, 1, 2, 3}); }
  SUBCASE("(t^3, t^4, t^5, t^6)") {
    auto r = ranks(wronskian(curve({"t^3", "t^4", "t^5", "t^6"}), 0.0, 6));
    CHECK(r == std::vector<int>{0, 0, 1, 2, 3, 4});
  }
  SUBCASE("away from the base point") {
    auto f = cubic();
    auto w = wronskian(f, 0.4, 3);
    // f'' = (0, 1, t), f''' = (0, 0, 1)
    CHECK(w(2, 1) == doctest::Approx(0.4));
    CHECK(w(2, 2) == doctest::Approx(1.0));
  }
  CHECK_THROWS_AS(exact_wronskian(helix(), Rational(1, 2), 3), ExactUnavailable);
}

TEST_CASE("type detection agrees with the symbolic oracle") {
  const std::vector<std::vector<std::string>> cases = {
      {"t", "t^3/6", "t^4/24"}, {"t^2", "t^3", "t^4", "t^6"}, {"t^2", "t^3", "t^4", "t^6 + t^7"},
      {"t^3", "t^4", "t^5", "t^6"}, {"t", "t^2", "t^3"}, {"t", "t^2", "t^3", "t^4"},
      {"t^2", "t^3", "t^5"}, {"t", "t^2", "t^4"}, {"t^3", "t^4", "t^5"}, {"t^2 + t^3", "t^3 - t^5", "t^4 + 2*t^5"}};
  for (const auto& c : cases) {
    CAPTURE(c[0]);
    auto expected = oracle_type(c);
    auto exact = detect_type(curve(c), 0.0, {8, 1e-8, RankMode::exact});
    CHECK(exact.exact);
    CHECK(exact.entries == expected);
    for (double eps : {1e-10, 1e-8, 1e-6}) {
      auto num = detect_type(curve(c), 0.0, {8, eps, RankMode::numeric});
      CHECK_FALSE(num.exact);
      CHECK(num.entries == expected);
    }
  }
  CHECK(detect_type(mond(), 0.0).entries == std::vector<int>{1, 3, 4});
  CHECK(detect_type(curve({"t^3", "t^4", "t^5", "t^6"}), 0.0).entries == std::vector<int>{3, 4, 5, 6});
  CHECK(detect_type(mond(), 0.5).entries == std::vector<int>{1, 2, 3});
}

TEST_CASE("type detection needs enough jet order") {
  CHECK_THROWS_AS(detect_type(curve({"t^3", "t^4", "t^5", "t^6"}), 0.0, {5, 1e-8, RankMode::exact}),
                  TypeUndetermined);
  CHECK_THROWS_AS(detect_type(curve({"t", "0", "0"}), 0.0), TypeUndetermined);
  CHECK_THROWS_AS(detect_type(helix(), 0.5, {8, 1e-8, RankMode::exact}), ExactUnavailable);
  CHECK(detect_type(helix(), 0.5).entries == std::vector<int>{1, 2, 3});
  CHECK(detect_type(helix(), 0.0, {8, 1e-8, RankMode::exact}).entries == std::vector<int>{1, 2, 3});
}

TEST_CASE("rank profile is affine invariant") {
  std::mt19937 rng(2024);
  std::uniform_int_distribution<int> coef(-4, 4);
  const std::vector<std::string> base = {"t^2", "t^3", "t^4", "t^6 + t^7"};
  for (int trial = 0; trial < 10; ++trial) {
    // Random unimodular matrix as a product of elementary matrices.
    std::vector<std::vector<int>> a(4, std::vector<int>(4, 0));
    for (int i = 0; i < 4; ++i) a[i][i] = 1;
    for (int step = 0; step < 8; ++step) {
      int i = rng() % 4, j = rng() % 4;
      if (i == j) continue;
      int c = coef(rng);
      for (int k = 0; k < 4; ++k) a[i][k] += c * a[j][k];
    }
    std::vector<std::string> comps;
    for (int i = 0; i < 4; ++i) {
      std::string s = std::to_string(coef(rng));
      for (int j = 0; j < 4; ++j) s += " + (" + std::to_string(a[i][j]) + ")*(" + base[j] + ")";
      comps.push_back(s);
    }
    CHECK(detect_type(curve(comps), 0.0, {8, 1e-8, RankMode::exact}).entries == std::vector<int>{2, 3, 4, 6});
    CHECK(detect_type(curve(comps), 0.0, {8, 1e-8, RankMode::numeric}).entries == std::vector<int>{2, 3, 4, 6});
  }
}

TEST_CASE("primitive type") {
  auto tau = [](std::vector<std::string> c) {
    std::vector<Expr> e;
    for (auto& s : c) e.push_back(Expr::parse(s));
    auto raw = std::make_shared<ExprFunction>(e);
    return LambdaFunction(raw->dim(), [raw](double t, int k) { return normalized(raw->jet(t, k)); });
  };
  CHECK(detect_primitive_type(tau({"1", "t^2/2", "t^3/6"}), 0.0).entries == std::vector<int>{1, 3, 4});
  CHECK(detect_primitive_type(tau({"cos(t)", "sin(t)"}), 0.0).entries == std::vector<int>{1, 2});
  CHECK(detect_primitive_type(tau({"1", "t", "t^2/2", "t^3/6"}), 0.0).entries == std::vector<int>{1, 2, 3, 4});
  CHECK(detect_primitive_type(mond(), 0.0, {8, 1e-8, RankMode::exact}).entries == std::vector<int>{1, 3, 4});
}

TEST_CASE("type shift") {
  auto r = type_shift_check(curve({"t^2", "t^3", "t^4"}), 0.0);
  CHECK(r.m == 1);
  CHECK(r.primitive.entries == std::vector<int>{1, 2, 3});
  CHECK(r.detected.entries == std::vector<int>{2, 3, 4});
  CHECK(r.holds);
  auto r2 = type_shift_check(curve({"t^3", "t^4", "t^5", "t^6"}), 0.0);
  CHECK(r2.m == 2);
  CHECK(r2.primitive.entries == std::vector<int>{1, 2, 3, 4});
  CHECK(r2.holds);
  auto r3 = type_shift_check(helix(), 0.3);
  CHECK(r3.m == 0);
  CHECK(r3.detected == r3.primitive);

  std::mt19937 rng(4242);
  for (int i = 0; i < 50; ++i) {
    auto fx = random_shift_fixture(rng);
    auto f = FrontalCurve::from_polynomials(fx.position, {-1, 1});
    auto rep = type_shift_check(f, 0.0, {10, 1e-8, RankMode::exact});
    std::vector<int> expected;
    for (int b : fx.primitive) expected.push_back(b + fx.m);
    CHECK(rep.m == fx.m);
    CHECK(rep.primitive.entries == fx.primitive);
    CHECK(rep.detected.entries == expected);
    CHECK(rep.holds);
  }
}

TEST_CASE("inflections") {
  auto m = find_inflections(mond());
  REQUIRE(m.size() == 1);
  CHECK(std::abs(m[0]) < 1e-8);
  CHECK(find_inflections(helix()).empty());
  CHECK(find_inflections(cubic()).empty());
  // (t, t^3) has its inflection at 0; shift the window so it is off-grid.
  auto s = find_inflections(curve({"t", "t^3 - 0.3*t^2", "0"}, {-0.77, 0.91}));
  REQUIRE(s.size() == 1);
  CHECK(s[0] == doctest::Approx(0.1).epsilon(1e-9));
}

TEST_CASE("order of curvature") {
  auto chk = [](const FrontalCurve& f, int ord, bool exact = true) {
    auto r = kappa_order_check(f, 0.0);
    CHECK(r.exact == exact);
    CHECK(r.ord_kappa == ord);
    CHECK(r.expected == ord);
    CHECK(r.holds);
  };
  chk(mond(), 1);
  chk(curve({"t^2", "t^3", "t^4"}), 0);
  chk(moment(3), 0);
  chk(curve({"t", "t^4", "t^5"}), 2);
  chk(curve({"t^2", "t^5", "t^6"}), 2);
  chk(helix(), 0);
  auto r = kappa_order_check(mond(), 0.0, {8, 1e-8, RankMode::numeric});
  CHECK(r.ord_kappa == 1);
  CHECK(r.holds);
}
