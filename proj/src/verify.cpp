#include "tandev/verify.hpp"

#include <chrono>
#include <cmath>
#include <random>
#include <sstream>

#include "tandev/classify.hpp"
#include "tandev/error.hpp"
#include "tandev/format.hpp"
#include "tandev/parallel.hpp"

namespace tandev {

namespace {

Rational q(long a, long b = 1) {
  Rational r(a, b);
  r.canonicalize();
  return r;
}

const std::vector<std::string> kTU{"t", "u"};
const std::vector<std::string> kAll{"t", "u", "s", "x1", "x2", "x3", "x4"};

RationalPoly var(const std::string& v) { return RationalPoly::variable(v, kAll); }
RationalPoly lift(const RationalPoly& p) { return p.with_vars(kAll); }
RationalPoly poly(const std::string& s) { return RationalPoly::parse(s, kAll); }

}  // namespace

TIdentityReport check_T_identity(int j) {
  if (j < 1) throw DomainError("T identity needs j >= 1");
  const RationalPoly u = RationalPoly::variable("u", kTU);
  const RationalPoly lhs = T(2 * j + 1);
  const RationalPoly rhs = T(j - 1) * T(j - 1) * q(j + 2, 6) - u * T(2 * j - 1) * q(j + 2, 3 * j);
  return {j, lhs.to_string(), rhs.to_string(), lhs == rhs};
}

T5Report check_T5_expansion() {
  const RationalPoly u = RationalPoly::variable("u", kTU);
  T5Report r;
  r.two_step = T(5) == T(1) * T(1) * q(2, 3) - u * T(3) * q(2, 3);
  r.expanded = T(5) == u * T(0) * T(0) * q(-1, 3) + u * u * T(1) * q(2, 3) + T(1) * T(1) * q(2, 3);
  r.variant_with_T0 = T(5) == u * T(0) * T(0) * q(-1, 3) + u * u * T(0) * q(2, 3) + T(1) * T(1) * q(2, 3);
  return r;
}

EnvelopeReport check_envelope_csw() {
  EnvelopeReport rep;
  const RationalPoly t = var("t"), x1 = var("x1"), x2 = var("x2");
  const RationalPoly family = poly("t^6 + x1*t^3 + x2*t^2 + x3*t + x4");
  const RationalPoly zero(kAll);

  // d/dt family is x3 + (terms free of x3, x4); family is x4 + (...).
  const RationalPoly dfam = family.differentiate("t");
  if (dfam.coefficient("x3", 1) != RationalPoly::constant(1, kAll)) throw Error("envelope: unexpected family");
  const RationalPoly x3 = -dfam.substitute("x3", zero);
  const RationalPoly x4 = -family.substitute("x3", x3).substitute("x4", zero);
  const RationalPoly x3_stated = poly("-6*t^5 - 3*x1*t^2 - 2*x2*t");
  const RationalPoly x4_stated = poly("5*t^6 + 2*x1*t^3 + x2*t^2");
  const RationalPoly on_env = family.substitute("x3", x3).substitute("x4", x4);
  const RationalPoly d_on_env = dfam.substitute("x3", x3).substitute("x4", x4);
  rep.x3 = x3.to_string();
  rep.x4 = x4.to_string();
  rep.envelope = x3 == x3_stated && x4 == x4_stated && on_env.is_zero() && d_on_env.is_zero();

  // The envelope map (x1, x2, t) -> (x1, x2, x3, x4) has the identity block in
  // its first two columns, so it drops rank exactly where d/dt (x3, x4) = 0.
  const RationalPoly d3 = x3.differentiate("t"), d4 = x4.differentiate("t");
  const RationalPoly a = d3.coefficient("x2", 1), b = d3.coefficient("x2", 0);
  bool locus_ok = false;
  RationalPoly x2s(kAll);
  if (a.only_involves({}) && !a.is_zero()) {
    Rational inv = 1 / a.evaluate(std::span<const Rational>(std::vector<Rational>(kAll.size(), 0)));
    x2s = -b * inv;
    locus_ok = d4.substitute("x2", x2s).is_zero();
  }
  rep.x2_locus = x2s.to_string();
  const std::vector<RationalPoly> locus_map{x1, x2s, x3.substitute("x2", x2s), x4.substitute("x2", x2s)};
  const std::vector<RationalPoly> stated{x1, poly("-15*t^4 - 3*x1*t"), poly("24*t^5 + 3*x1*t^2"),
                                         poly("-10*t^6 - x1*t^3")};
  rep.locus = locus_ok && x2s == poly("-15*t^4 - 3*x1*t") && locus_map == stated;

  const NormalForm csw = normal_form("CSW24");
  const RationalPoly five_u = var("u") * q(5);
  const Rational scale[4] = {q(5), q(-15), q(30), q(-15)};
  rep.normal_form = true;
  for (int i = 0; i < 4; ++i)
    rep.normal_form = rep.normal_form && locus_map[i].substitute("x1", five_u) == lift(csw.map[i]) * scale[i];
  return rep;
}

EliminationReport check_usw_elimination(const Rational& lambda) {
  EliminationReport rep;
  rep.lambda = lambda;
  const RationalPoly t = var("t"), u = var("u"), s = var("s");
  const RationalPoly T0 = lift(T(0)), T1 = lift(T(1)), T3 = lift(T(3)), T4 = lift(T(4));
  rep.elimination_identity = poly("1/2*t^6 + 1/4*u*t^4") == T0 * T0 * q(1, 2) - u * T1;

  // f = (t^2, t^3, t^4, t^6 + lambda t^7), tau = f'/(2t).
  const std::vector<RationalPoly> f{t.pow(2), t.pow(3), t.pow(4), t.pow(6) + t.pow(7) * lambda};
  std::vector<RationalPoly> tan;
  for (const auto& c : f) {
    const UPoly d = UPoly::from(c.differentiate("t"), "t");
    auto [tau, rem] = UPoly::divmod(d, UPoly::monomial(q(2), 1));
    if (!rem.is_zero()) throw Error("elimination: f' not divisible by 2t");
    tan.push_back(c + s * tau.to_poly("t", kAll));
  }
  // u = -3(t^2 + s)
  const RationalPoly s_of_u = u * q(-1, 3) - t.pow(2);
  const Rational affine[4] = {q(-3), q(-2), q(-3, 4), q(-1, 4)};
  std::vector<RationalPoly> X;
  for (int i = 0; i < 4; ++i) X.push_back(tan[i].substitute("s", s_of_u) * affine[i]);
  const RationalPoly stated4 = poly("1/2*t^6 + 1/4*u*t^4") + T4 * (lambda * q(35, 24));
  rep.reduces_to_stated = X[0] == u && X[1] == T0 && X[2] == T1 && X[3] == stated4;

  // x4 - (1/2 x2^2 - x1 x3) removes T_3; then rescale.
  const RationalPoly reduced = (X[3] - (X[1] * X[1] * q(1, 2) - X[0] * X[2])) * q(24, 35);
  rep.fourth_component = reduced.to_string();
  rep.reduced_form = reduced == T4 * lambda && (T3 == T0 * T0 * q(1, 2) - u * T1);
  return rep;
}

StructureReport check_structure_equation_consistency(const std::string& name, const FrontalCurve& f,
                                                     const FrameOptions& opt, double tol) {
  StructureReport rep;
  rep.fixture = name;
  rep.tol = tol;
  auto frame = make_normal_frame(f, opt);
  rep.residuals = structure_residuals(frame->trace());
  for (const auto& st : frame->trace().states)
    for (double l : st.ell) rep.ell_sup = std::max(rep.ell_sup, std::abs(l));
  const auto& r = rep.residuals;
  rep.passed = r.antisymmetry < tol && r.tau < 1e-6 && r.mu < 1e-6 && r.nu < 1e-6;
  return rep;
}

FrontalCurve random_polynomial_fixture(unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> coef(-4, 4);
  // Moment curve plus small higher-order terms; kappa stays away from zero
  // on [-1/2, 1/2].
  std::vector<UPoly> comps;
  for (int i = 1; i <= 4; ++i) {
    std::vector<Rational> c(8, Rational(0));
    c[i] = 1;
    for (int k = 5; k < 8; ++k) c[k] = q(coef(rng), 20);
    comps.emplace_back(c);
  }
  return FrontalCurve::from_polynomials(comps, {-0.5, 0.5});
}

namespace {

using Check = std::function<CheckResult()>;

std::vector<CheckResult> run_checks(const std::vector<Check>& checks, int jobs) {
  std::vector<CheckResult> out(checks.size());
  parallel_for(static_cast<int>(checks.size()), jobs, [&](int i) {
    const auto t0 = std::chrono::steady_clock::now();
    try {
      out[i] = checks[i]();
    } catch (const std::exception& e) {
      out[i].passed = false;
      out[i].detail = std::string("exception: ") + e.what();
    }
    out[i].seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  });
  return out;
}

std::string sci(double x) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << x;
  return os.str();
}

}  // namespace

std::vector<CheckResult> run_algebra_suite(int jobs) {
  std::vector<Check> checks;
  checks.push_back([] {
    int bad = 0;
    for (int j = 1; j <= 50; ++j) bad += check_T_identity(j).holds ? 0 : 1;
    return CheckResult{"T identity j=1..50", bad == 0, std::to_string(50 - bad) + "/50 exact", 0};
  });
  checks.push_back([] {
    const T5Report r = check_T5_expansion();
    return CheckResult{"T5 expansion", r.two_step && r.expanded && !r.variant_with_T0,
                       std::string("u^2 T1 form ") + (r.expanded ? "holds" : "fails") + ", u^2 T0 form " +
                           (r.variant_with_T0 ? "holds" : "fails"),
                       0};
  });
  checks.push_back([] {
    const EnvelopeReport r = check_envelope_csw();
    return CheckResult{"CSW envelope", r.passed(),
                       std::string("envelope ") + (r.envelope ? "ok" : "FAIL") + ", locus " +
                           (r.locus ? "ok" : "FAIL") + ", normal form " + (r.normal_form ? "ok" : "FAIL"),
                       0};
  });
  for (long lam : {0L, 1L, 2L}) {
    checks.push_back([lam] {
      const EliminationReport r = check_usw_elimination(Rational(lam));
      return CheckResult{"f_lambda elimination, lambda=" + std::to_string(lam), r.passed(),
                         "x4 -> " + r.fourth_component, 0};
    });
  }
  checks.push_back([] {
    const EliminationReport r = check_usw_elimination(q(-3, 7));
    return CheckResult{"f_lambda elimination, lambda=-3/7", r.passed(), "x4 -> " + r.fourth_component, 0};
  });
  for (const std::string& name : normal_form_names()) {
    checks.push_back([name] {
      const NormalFormReport r = normal_form_consistency(name);
      return CheckResult{"normal form " + name, r.passed,
                         "directrix " + r.directrix_type.to_string() + ", type " + r.recovered_type.to_string(), 0};
    });
  }
  return run_checks(checks, jobs);
}

std::vector<CheckResult> run_frames_suite(int jobs) {
  struct Fx {
    std::string name;
    std::function<FrontalCurve()> make;
    double tol;
  };
  const std::vector<Fx> fixtures{
      {"helix", [] { return FrontalCurve::from_components(std::vector<std::string>{"cos(t)", "sin(t)", "t"}, {-1, 1}); },
       1e-10},
      {"circle", [] { return FrontalCurve::from_components(std::vector<std::string>{"cos(t)", "sin(t)", "0"}, {-1, 1}); },
       1e-10},
      {"moment3", [] { return FrontalCurve::from_components(std::vector<std::string>{"t", "t^2", "t^3"}, {-1, 1}); },
       1e-8},
      {"random-poly", [] { return random_polynomial_fixture(7); }, 1e-8},
  };
  std::vector<Check> checks;
  for (const Fx& fx : fixtures) {
    checks.push_back([fx] {
      FrameOptions opt;
      opt.samples = 10001;
      const StructureReport r = check_structure_equation_consistency(fx.name, fx.make(), opt, fx.tol);
      bool ok = r.passed && r.residuals.drift < 1e-9;
      if (fx.name == "circle") ok = ok && r.ell_sup < 1e-12;
      return CheckResult{"structure equations: " + fx.name, ok,
                         "antisym " + sci(r.residuals.antisymmetry) + ", tau " + sci(r.residuals.tau) + ", mu " +
                             sci(r.residuals.mu) + ", nu " + sci(r.residuals.nu) + ", drift " +
                             sci(r.residuals.drift) + ", sup|ell| " + sci(r.ell_sup),
                         0};
    });
  }
  return run_checks(checks, jobs);
}

std::vector<CheckResult> run_suite(const std::string& suite, int jobs) {
  if (suite == "algebra") return run_algebra_suite(jobs);
  if (suite == "frames") return run_frames_suite(jobs);
  if (suite == "all") {
    auto a = run_algebra_suite(jobs);
    auto b = run_frames_suite(jobs);
    a.insert(a.end(), b.begin(), b.end());
    return a;
  }
  throw DomainError("unknown suite '" + suite + "' (expected algebra, frames or all)");
}

}  // namespace tandev
