// One line per acceptance criterion; exit status is the number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>

#include "commands.hpp"
#include "fixtures.hpp"
#include "tandev/classify.hpp"
#include "tandev/error.hpp"
#include "tandev/frame.hpp"
#include "tandev/spec.hpp"
#include "tandev/surface.hpp"
#include "tandev/verify.hpp"

using namespace tandev;
using namespace fixtures;
namespace fs = std::filesystem;

namespace {

// Tolerances and budgets.
constexpr double kAlgebraSeconds = 5.0;
constexpr double kRankEpsLo = 1e-10, kRankEpsHi = 1e-6;
constexpr double kDriftTol = 1e-9;
constexpr double kResidualTol = 1e-6;
constexpr double kRatioConstTol = 1e-8;
constexpr double kRatioFrenetTol = 1e-6;
constexpr int kTransportSamples = 10001;  // 10^4 steps
constexpr double kEqualityTol = 1e-7;
constexpr int kEqualityGrid = 101;
constexpr double kEqualitySeconds = 60.0;
constexpr double kOnLocusRatio = 1e-7;
constexpr double kOffLocusRatio = 1e-3;
constexpr double kLocusOffset = 0.05;
constexpr double kConeSpeedTol = 1e-6;

using Clock = std::chrono::steady_clock;
double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", x);
  return buf;
}

int failures = 0;

void report(int id, bool ok, const std::string& what, const std::string& detail) {
  std::printf("criterion %2d: %s  %s (%s)\n", id, ok ? "PASS" : "FAIL", what.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

void guarded(int id, const std::string& what, const std::function<std::pair<bool, std::string>()>& fn) {
  try {
    auto [ok, detail] = fn();
    report(id, ok, what, detail);
  } catch (const std::exception& e) {
    report(id, false, what, std::string("exception: ") + e.what());
  }
}

struct Pair {
  std::string name;
  FrontalCurve curve;
  Vec r;
};

// Twenty inflection-free (fixture, r) pairs, four r per fixture.
std::vector<Pair> inflection_free_pairs() {
  std::vector<Pair> out;
  const std::vector<Vec> r2{{-0.3}, {0.1}, {0.2}, {0.5}};
  const std::vector<Vec> r3{{0.2, 0.0}, {0.0, 0.2}, {0.1, -0.15}, {-0.25, 0.1}};
  for (auto& [name, c] : std::vector<std::pair<std::string, FrontalCurve>>{
           {"helix", helix()}, {"cubic", cubic()}, {"moment3", moment(3)}})
    for (const Vec& r : r2) out.push_back({name, c, r});
  for (auto& [name, c] :
       std::vector<std::pair<std::string, FrontalCurve>>{{"moment4/k!", moment4_scaled()}, {"torus-knot", torus_knot()}})
    for (const Vec& r : r3) out.push_back({name, c, r});
  return out;
}

std::map<std::string, std::string> dir_contents(const fs::path& d) {
  std::map<std::string, std::string> m;
  for (const auto& e : fs::directory_iterator(d)) {
    std::ifstream f(e.path(), std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    m[e.path().filename().string()] = ss.str();
  }
  return m;
}

}  // namespace

int main() {
  guarded(1, "exact algebra suite", [] {
    const auto t0 = Clock::now();
    int t_ok = 0;
    for (int j = 1; j <= 50; ++j) t_ok += check_T_identity(j).holds;
    const EnvelopeReport env = check_envelope_csw();
    const EliminationReport e0 = check_usw_elimination(Rational(0));
    const EliminationReport e1 = check_usw_elimination(Rational(1));
    const double secs = since(t0);
    const bool ok = t_ok == 50 && env.envelope && env.locus && env.normal_form && e0.passed() && e1.passed() &&
                    secs < kAlgebraSeconds;
    return std::pair{ok, "T identity " + std::to_string(t_ok) + "/50, envelope " + (env.envelope ? "ok" : "FAIL") +
                             "/" + (env.locus ? "ok" : "FAIL") + "/" + (env.normal_form ? "ok" : "FAIL") +
                             ", elimination lambda=0,1 " + (e0.passed() && e1.passed() ? "ok" : "FAIL") + ", " +
                             sci(secs) + " s"};
  });

  guarded(2, "type detection, exact and numeric", [] {
    struct Case {
      std::string name;
      FrontalCurve f;
      std::vector<int> type;
    };
    const std::vector<Case> cases{
        {"mond", mond(), {1, 3, 4}},
        {"f_0", curve({"t^2", "t^3", "t^4", "t^6"}), {2, 3, 4, 6}},
        {"f_1", curve({"t^2", "t^3", "t^4", "t^6 + t^7"}), {2, 3, 4, 6}},
        {"csw", curve({"t^3", "t^4", "t^5", "t^6"}), {3, 4, 5, 6}},
        {"moment3", moment(3), {1, 2, 3}},
        {"moment4", moment(4), {1, 2, 3, 4}},
    };
    int ok = 0, total = 0;
    std::string bad;
    for (const Case& c : cases) {
      ++total;
      const CurveType e = detect_type_exact(c.f, Rational(0));
      if (e.entries == c.type && e.exact) ++ok;
      else bad += " exact:" + c.name;
      for (double eps = kRankEpsLo; eps <= kRankEpsHi * 1.0001; eps *= 10) {
        ++total;
        const CurveType n = detect_type(c.f, 0.0, {kDefaultJetOrder, eps, RankMode::numeric});
        if (n.entries == c.type && !n.exact) ++ok;
        else bad += " numeric:" + c.name + "@" + sci(eps);
      }
    }
    return std::pair{ok == total, std::to_string(ok) + "/" + std::to_string(total) + " agree" + bad};
  });

  guarded(3, "type shift on 50 randomized fixtures", [] {
    std::mt19937 rng(20260914);
    int ok = 0;
    for (int i = 0; i < 50; ++i) {
      const ShiftFixture fx = random_shift_fixture(rng);
      const FrontalCurve f = FrontalCurve::from_polynomials(fx.position, {-1, 1});
      const TypeShiftReport rep = type_shift_check(f, 0.0, {10, kDefaultRankEps, RankMode::exact});
      std::vector<int> expected;
      for (int b : fx.primitive) expected.push_back(b + fx.m);
      ok += rep.holds && rep.m == fx.m && rep.primitive.entries == fx.primitive && rep.detected.entries == expected &&
            rep.detected.exact;
    }
    return std::pair{ok == 50, std::to_string(ok) + "/50 exact"};
  });

  guarded(4, "order of curvature", [] {
    const std::vector<std::vector<std::string>> cases{
        {"t", "t^2", "t^3"},        {"t", "t^3", "t^4"},        {"t", "t^4", "t^5"},
        {"t^2", "t^3", "t^4"},      {"t^2", "t^4", "t^5"},      {"t^2", "t^5", "t^7"},
        {"t^3", "t^4", "t^5", "t^6"}, {"t", "t^3", "t^4", "t^5"}, {"t^2", "t^5", "t^6", "t^8"},
        {"t", "t^3/6", "t^4/24"}};
    int ok = 0;
    std::string seen;
    for (const auto& c : cases) {
      const KappaOrderReport r = kappa_order_check(curve(c), 0.0, {10, kDefaultRankEps, RankMode::exact});
      const int gap = r.type.entries[1] - r.type.entries[0];
      ok += r.exact && r.holds && r.ord_kappa == gap - 1 && gap >= 1 && gap <= 3;
      seen += std::to_string(gap);
    }
    return std::pair{ok == static_cast<int>(cases.size()),
                     std::to_string(ok) + "/" + std::to_string(cases.size()) + " exact, gaps " + seen};
  });

  guarded(5, "frame transport", [] {
    FrameOptions opt;
    opt.samples = kTransportSamples;
    double drift = 0, res = 0;
    for (const FrontalCurve& f : {helix(), moment(3), moment4_scaled(), torus_knot()}) {
      auto frame = make_normal_frame(f, opt);
      const StructureResiduals r = structure_residuals(frame->trace());
      drift = std::max(drift, r.drift);
      res = std::max({res, r.tau, r.mu, r.nu});
    }
    // Helix: ell/kappa along the trace and against the Frenet ratio tau_F/k_F = 1.
    auto frame = make_normal_frame(helix(), opt);
    double lo = INFINITY, hi = -INFINITY;
    for (const auto& s : frame->trace().states) {
      lo = std::min(lo, s.ell[0] / s.kappa);
      hi = std::max(hi, s.ell[0] / s.kappa);
    }
    const double frenet = std::abs(std::abs(lo) - 1.0);
    const bool ok = drift < kDriftTol && res < kResidualTol && hi - lo < kRatioConstTol && frenet < kRatioFrenetTol;
    return std::pair{ok, "drift " + sci(drift) + ", residual " + sci(res) + ", helix ratio spread " + sci(hi - lo) +
                             ", |ratio| - 1 = " + sci(frenet)};
  });

  double sup = 0, vel = 0, on = 0, off = INFINITY;
  int eq_ok = 0, loc_ok = 0;
  double eq_secs = 0;
  {
    const auto t0 = Clock::now();
    const std::vector<double> ts = sample_grid({-1, 1}, kEqualityGrid), ss = ts;
    for (const Pair& p : inflection_free_pairs()) {
      auto frame = make_normal_frame(p.curve);
      const ParallelSurface par(frame, p.r);
      const FrontalCurve g = directrix(frame, p.r);
      const EqualityReport e = parallel_equals_tangent_of_directrix(par, g, ts, ss, kEqualityTol);
      sup = std::max(sup, e.sup_error);
      vel = std::max(vel, e.velocity_residual);
      eq_ok += e.passed;
      const SingularLocus loc = singular_locus(par, ts, kLocusOffset);
      on = std::max(on, loc.max_on_ratio());
      off = std::min(off, loc.min_off_ratio());
      loc_ok += loc.max_on_ratio() < kOnLocusRatio && loc.min_off_ratio() > kOffLocusRatio;
    }
    eq_secs = since(t0);
  }
  report(6, eq_ok == 20 && sup < kEqualityTol && vel < kEqualityTol && eq_secs < kEqualitySeconds,
         "parallel equals tangent surface of the directrix",
         std::to_string(eq_ok) + "/20, sup " + sci(sup) + ", velocity " + sci(vel) + ", " + sci(eq_secs) +
             " s including loci");
  report(7, loc_ok == 20, "singular locus",
         std::to_string(loc_ok) + "/20, on-locus ratio " + sci(on) + ", off-locus ratio " + sci(off));

  guarded(8, "conical degeneration", [] {
    const CurveSpec cone = builtin_curve("cone");
    auto frame = make_normal_frame(*cone.curve);
    const Vec r{1.0};
    const double h = 1e-3;
    double gs = 0, bs = 0, as = 0;
    for (double t : sample_grid({-1 + 3 * h, 1 - 3 * h}, 401)) {
      const Vec a = directrix_point(*frame, r, t - 2 * h), b = directrix_point(*frame, r, t - h);
      const Vec c = directrix_point(*frame, r, t + h), d = directrix_point(*frame, r, t + 2 * h);
      double n = 0;
      for (int i = 0; i < 3; ++i) {
        const double v = (a[i] - 8 * b[i] + 8 * c[i] - d[i]) / (12 * h);
        n += v * v;
      }
      gs = std::max(gs, std::sqrt(n));
      bs = std::max(bs, std::abs(directrix_speed(*frame, r, t, 0)[0]));
      as = std::max(as, std::abs(cone.curve->speed(t)));
    }
    // The curve itself must move, or the check says nothing.
    return std::pair{gs < kConeSpeedTol && as > 0.1,
                     "sup|g'| " + sci(gs) + ", sup|b| " + sci(bs) + ", sup|a| " + sci(as)};
  });

  guarded(9, "classification tables and normal forms", [] {
    int ok = 0, total = 0;
    auto expect = [&](const std::vector<int>& t, int p, SingularityName n, int codim) {
      ++total;
      const SingularityLabel l = classify_type(t, p);
      ok += l.name == n && l.codim == codim;
    };
    using S = SingularityName;
    expect({1, 2, 3}, 2, S::CE23, 1);
    expect({1, 2, 4}, 2, S::FU23, 2);
    expect({2, 3, 4}, 2, S::SW23, 2);
    expect({2, 3, 5}, 2, S::FP23, 3);
    expect({3, 4, 5}, 2, S::CSW23, 3);
    expect({1, 2, 3, 4}, 3, S::CE24, 1);
    expect({1, 2, 3, 5}, 3, S::CE24, 2);
    expect({2, 3, 4, 5}, 3, S::OSW24, 2);
    expect({2, 3, 4, 6}, 3, S::USW24, 3);
    expect({3, 4, 5, 6}, 3, S::CSW24, 3);
    for (int p = 2; p <= 5; ++p) {
      const int pat_codim[5] = {0, 1, 1, 2, 2};
      const int start[5] = {1, 1, 2, 2, 3}, extra[5] = {1, 2, 1, 2, 1};
      for (int k = 0; k < 5; ++k) {
        std::vector<int> t;
        for (int i = 0; i < p; ++i) t.push_back(start[k] + i);
        t.push_back(t.back() + extra[k]);
        ++total;
        ok += classify_type(t, p).curve_codim == pat_codim[k];
      }
    }
    int nf = 0;
    for (const auto& name : normal_form_names()) {
      const NormalFormReport r = normal_form_consistency(name);
      nf += r.passed && r.recovered_type.exact;
    }
    return std::pair{ok == total && nf == 6,
                     std::to_string(ok) + "/" + std::to_string(total) + " table rows, " + std::to_string(nf) +
                         "/6 normal forms"};
  });

  guarded(10, "deterministic parallel sweep", [] {
    const fs::path base = fs::temp_directory_path() / "tandev_acceptance";
    std::vector<std::map<std::string, std::string>> runs;
    std::vector<std::string> outs;
    for (int k = 0; k < 2; ++k) {
      const fs::path d = base / ("run" + std::to_string(k));
      fs::remove_all(d);
      cli::ParallelOptions o;
      o.curve.builtin = "mond";
      o.r = {-0.15, -0.05, 0.0, 0.05, 0.15};
      o.samples = 101;
      o.jobs = k == 0 ? 1 : 0;
      o.out_dir = d.string();
      std::ostringstream out, err;
      cli::cmd_parallel(o, out, err);
      outs.push_back(out.str());
      runs.push_back(dir_contents(d));
    }
    std::size_t bytes = 0;
    for (const auto& [n, c] : runs[0]) bytes += c.size();
    return std::pair{runs[0] == runs[1] && outs[0] == outs[1] && runs[0].size() == 6,
                     std::to_string(runs[0].size()) + " files, " + std::to_string(bytes) + " bytes compared"};
  });

  std::printf("%d criteria failed\n", failures);
  return failures;
}
