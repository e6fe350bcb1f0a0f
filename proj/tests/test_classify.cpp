#include <doctest.h>

#include <set>

#include "tandev/classify.hpp"
#include "tandev/error.hpp"
#include "tandev/surface.hpp"

using namespace tandev;

TEST_CASE("p = 2 table") {
  struct Row {
    std::vector<int> type;
    const char* name;
    int codim;
  };
  const Row rows[] = {{{1, 2, 3}, "CE23", 1},
                      {{1, 2, 4}, "FU23", 2},
                      {{2, 3, 4}, "SW23", 2},
                      {{2, 3, 5}, "FP23", 3},
                      {{3, 4, 5}, "CSW23", 3}};
  for (const Row& r : rows) {
    const SingularityLabel l = classify_type(r.type, 2);
    CHECK(to_string(l.name) == r.name);
    CHECK(l.codim == r.codim);
  }
  CHECK(long_name(classify_type(std::vector<int>{2, 3, 4}, 2).name) == "swallowtail");
}

TEST_CASE("p = 3 table") {
  struct Row {
    std::vector<int> type;
    const char* name;
    int codim;
  };
  const Row rows[] = {{{1, 2, 3, 4}, "CE24", 1},
                      {{1, 2, 3, 5}, "CE24", 2},
                      {{2, 3, 4, 5}, "OSW24", 2},
                      {{2, 3, 4, 6}, "USW24", 3},
                      {{3, 4, 5, 6}, "CSW24", 3}};
  for (const Row& r : rows) {
    const SingularityLabel l = classify_type(r.type, 3);
    CHECK(to_string(l.name) == r.name);
    CHECK(l.codim == r.codim);
  }
}

TEST_CASE("general p patterns") {
  for (int p = 2; p <= 5; ++p) {
    std::vector<int> base(p);
    for (int i = 0; i < p; ++i) base[i] = i + 1;
    auto with = [&](int shift, int last) {
      std::vector<int> v;
      for (int b : base) v.push_back(b + shift);
      v.push_back(last);
      return v;
    };
    const std::pair<std::vector<int>, int> table[] = {
        {with(0, 1 + p), 0}, {with(0, 2 + p), 1}, {with(1, 2 + p), 1}, {with(1, 3 + p), 2}, {with(2, 3 + p), 2}};
    std::set<int> names;
    for (const auto& [type, codim] : table) {
      const SingularityLabel l = classify_type(type, p);
      CHECK(l.curve_codim == codim);
      CHECK(l.codim == codim + 1);
      CHECK(l.generic());
      if (p >= 4) CHECK(l.name == SingularityName::unnamed);
      names.insert(static_cast<int>(l.name));
    }
    // p = 3 repeats the cuspidal edge name on purpose.
    if (p == 2) CHECK(names.size() == 5);
  }
}

TEST_CASE("types outside the list") {
  for (const auto& t : std::vector<std::vector<int>>{{1, 3, 4}, {2, 4, 5}, {1, 2, 3, 4}}) {
    const SingularityLabel l = classify_type(t, 2);
    CHECK(l.name == SingularityName::non_generic);
    CHECK(l.codim == -1);
  }
  CHECK(classify_type(std::vector<int>{1, 2}, 1).name == SingularityName::non_generic);
  CHECK(regular_label(2).codim == 0);
}

TEST_CASE("catalog coefficients") {
  const std::vector<std::string> v{"t", "u"};
  auto P = [&](const char* s) { return RationalPoly::parse(s, v); };
  CHECK(normal_form("OSW24").map ==
        std::vector<RationalPoly>{P("u"), P("t^3 + u*t"), P("3/4*t^4 + 1/2*u*t^2"), P("3/5*t^5 + 1/3*u*t^3")});
  CHECK(normal_form("FP23").map == std::vector<RationalPoly>{P("u"), P("t^3 + u*t + 3/4*t^4 + 1/2*u*t^2"),
                                                             P("3/5*t^5 + 1/3*u*t^3 + 1/2*t^6 + 1/4*u*t^4")});
  CHECK(normal_form("SW24_embedded").map ==
        std::vector<RationalPoly>{P("u"), P("t^3 + u*t"), P("3/4*t^4 + 1/2*u*t^2"), P("0")});
  CHECK(normal_form("USW24").map[3] == P("3/7*t^7 + 1/5*u*t^5"));
  CHECK(normal_form("CSW24").map == std::vector<RationalPoly>{P("u"), P("t^4 + u*t"), P("4/5*t^5 + 1/2*u*t^2"),
                                                              P("2/3*t^6 + 1/3*u*t^3")});
  CHECK_THROWS_AS(normal_form("XYZ"), DomainError);
}

TEST_CASE("normal form consistency") {
  for (const auto& name : normal_form_names()) {
    CAPTURE(name);
    const NormalFormReport r = normal_form_consistency(name);
    CHECK(r.ruled);
    CHECK(r.directrix_matches);
    CHECK(r.passed);
    CHECK(r.recovered_type.entries == normal_form(name).expected_type);
    CHECK(r.recovered_type.exact);
  }
  CHECK(normal_form_consistency("SW23").phi == UPoly({0, 0, -3}));
  CHECK(normal_form_consistency("CSW24").phi == UPoly({0, 0, 0, -4}));
  CHECK(normal_form_consistency("USW24").directrix_type.entries == std::vector<int>{2, 3, 4, 7});
  CHECK(normal_form_consistency("CSW24").label.name == SingularityName::CSW24);
  CHECK(normal_form_consistency("OSW24").label.name == SingularityName::OSW24);
}

TEST_CASE("swallowtail forms are singular on 3t^2 + u = 0") {
  for (const char* name : {"SW23", "OSW24", "USW24"}) {
    const PolynomialSurface s(normal_form(name).map);
    for (double t : {-0.5, -0.1, 0.2, 0.6}) {
      auto [lo, hi] = singular_range(s.jacobian(t, -3 * t * t));
      CHECK(lo < 1e-14 * hi);
      auto [lo2, hi2] = singular_range(s.jacobian(t, -3 * t * t + 0.1));
      CHECK(lo2 > 1e-3 * hi2);
    }
  }
}

TEST_CASE("psi predicate") {
  const std::vector<std::string> uv{"u", "v"};
  CHECK(classify_psi(RationalPoly(uv)) == SingularityName::SW24_embedded);
  CHECK(classify_psi(RationalPoly::parse("2 + u*v", uv)) == SingularityName::USW24);
  CHECK_FALSE(classify_psi(RationalPoly::parse("u + v^2", uv)).has_value());
  CHECK(psi_family(RationalPoly::parse("1", uv)).map == normal_form("USW24").map);
  CHECK(psi_family(RationalPoly(uv)).map == normal_form("SW24_embedded").map);
  const NormalForm f = psi_family(RationalPoly::parse("v", uv));
  CHECK(f.map[3] == T(0) * T(4));
}
