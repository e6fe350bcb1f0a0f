#include "commands.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "tandev/classify.hpp"
#include "tandev/error.hpp"
#include "tandev/format.hpp"
#include "tandev/frame.hpp"
#include "tandev/parallel.hpp"
#include "tandev/surface.hpp"
#include "tandev/verify.hpp"

namespace tandev::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

class UsageError : public Error {
 public:
  using Error::Error;
};

json type_json(const CurveType& t) { return t.entries; }

std::string mode_name(const CurveType& t) { return t.exact ? "exact" : "numeric"; }

RankOptions rank_options(const CurveOptions& o) { return {o.jet_order, o.rank_eps, o.mode}; }

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw Error("cannot write " + p.string());
  f << text;
}

// name.ext -> name_007.ext when the sweep has several entries.
std::string sweep_name(const std::string& name, int k, int n) {
  if (n == 1) return name;
  const fs::path p(name);
  std::ostringstream os;
  os << p.stem().string() << '_' << std::setw(3) << std::setfill('0') << k << p.extension().string();
  return (p.parent_path() / os.str()).string();
}

// The pattern of the general table that a type belongs to, if any.
json stratum(const CurveType& t, int p) {
  const auto pats = generic_patterns(p);
  for (std::size_t i = 0; i < pats.size(); ++i)
    if (pats[i].type == t.entries) return {{"pattern", i}, {"curve_codim", pats[i].curve_codim}};
  return "non_generic";
}

// sup |g'| by central differences of the closed-form directrix.
double directrix_velocity_sup(const NormalFrame& frame, const Vec& r, const std::vector<double>& ts) {
  const double h = 1e-3;
  const Interval& d = frame.curve().domain();
  double sup = 0.0;
  for (double t : ts) {
    if (t - 2 * h < d.lo || t + 2 * h > d.hi) continue;
    const Vec a = directrix_point(frame, r, t - 2 * h), b = directrix_point(frame, r, t - h);
    const Vec c = directrix_point(frame, r, t + h), e = directrix_point(frame, r, t + 2 * h);
    double n = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      const double v = (a[i] - 8.0 * b[i] + 8.0 * c[i] - e[i]) / (12.0 * h);
      n += v * v;
    }
    sup = std::max(sup, std::sqrt(n));
  }
  return sup;
}

}  // namespace

CurveSpec load_curve(const CurveOptions& o) {
  if (o.spec_file.empty() == o.builtin.empty()) throw UsageError("give exactly one of --spec FILE or --builtin NAME");
  CurveSpec s = o.spec_file.empty() ? builtin_curve(o.builtin) : load_curve_spec(o.spec_file);
  if (o.t_range) s = with_domain(std::move(s), *o.t_range);
  return s;
}

// ---- analyze -------------------------------------------------------------------

int cmd_analyze(const AnalyzeOptions& o, std::ostream& out, std::ostream&) {
  if (o.samples < 1) throw UsageError("--samples must be positive");
  const CurveSpec spec = load_curve(o.curve);
  const FrontalCurve& f = *spec.curve;
  const RankOptions ro = rank_options(o.curve);

  json rep;
  rep["curve"] = json::parse(spec.to_json());
  rep["dim"] = f.dim();
  rep["p"] = f.p();

  json infl = json::array();
  for (double t : find_inflections(f)) {
    json e{{"t", t}};
    try {
      const KappaOrderReport k = kappa_order_check(f, t, ro);
      e["type"] = type_json(k.type);
      e["ord_kappa"] = k.ord_kappa;
      e["expected_ord_kappa"] = k.expected;
    } catch (const Error& ex) {
      e["error"] = ex.what();
    }
    infl.push_back(e);
  }
  rep["inflections"] = infl;

  std::shared_ptr<const NormalFrame> frame;
  if (f.p() >= 1) {
    try {
      frame = make_normal_frame(f);
      rep["frame"] = frame->kind();
    } catch (const InflectionError& e) {
      rep["frame"] = nullptr;
      rep["frame_error"] = e.what();
    }
  }

  json samples = json::array();
  for (double t : sample_grid(f.domain(), o.samples)) {
    json e{{"t", t}};
    try {
      const CurveType ty = detect_type(f, t, ro);
      e["type"] = type_json(ty);
      e["mode"] = mode_name(ty);
      e["stratum"] = stratum(ty, f.p());
      const TypeShiftReport sh = type_shift_check(f, t, ro);
      e["primitive_type"] = type_json(sh.primitive);
      e["shift"] = sh.m;
      e["shift_holds"] = sh.holds;
    } catch (const Error& ex) {
      e["type_error"] = ex.what();
    }
    e["kappa"] = std::sqrt(std::max(0.0, kappa_squared_jet(f, t, 0)[0]));
    if (frame) {
      try {
        const FrameState st = frame->state(t);
        e["kappa_frame"] = st.kappa;
        e["ell"] = st.ell;
        json ratio = json::array();
        for (double l : st.ell) ratio.push_back(l / st.kappa);
        if (std::abs(st.kappa) < kDirectrixKappaTol)
          e["ratio_error"] = "inflection: kappa = " + format_double(st.kappa);
        else
          e["ell_over_kappa"] = ratio;
      } catch (const InflectionError& ex) {
        e["frame_error"] = ex.what();
      }
    }
    samples.push_back(e);
  }
  rep["samples"] = samples;

  const std::string text = rep.dump(2) + "\n";
  out << text;
  if (!o.out_dir.empty()) {
    fs::create_directories(o.out_dir);
    write_file(fs::path(o.out_dir) / "analyze.json", text);
    if (frame) {
      std::ostringstream csv;
      write_trace_csv(csv, frame->trace());
      write_file(fs::path(o.out_dir) / "trace.csv", csv.str());
    }
  }
  return kOk;
}

// ---- parallel ------------------------------------------------------------------

int cmd_parallel(const ParallelOptions& o, std::ostream& out, std::ostream&) {
  if (o.samples < 2) throw UsageError("--samples must be at least 2");
  if (o.r.empty()) throw UsageError("--r needs at least one value");
  const CurveSpec spec = load_curve(o.curve);
  const FrontalCurve& f = *spec.curve;
  if (f.p() < 2) throw UsageError("parallels need a curve in R^3 or higher");
  Vec dir = o.r_dir;
  if (dir.empty()) {
    dir.assign(f.p() - 1, 0.0);
    dir[0] = 1.0;
  }
  if (static_cast<int>(dir.size()) != f.p() - 1)
    throw UsageError("--r-dir needs " + std::to_string(f.p() - 1) + " entries");

  const std::shared_ptr<const NormalFrame> frame = make_normal_frame(f);
  const fs::path dir_out(o.out_dir);
  fs::create_directories(dir_out);

  const Interval& d = f.domain();
  const std::vector<double> check_t = sample_grid(d, 101), check_s = sample_grid(o.s_range, 101);
  const int region_grid = std::min(o.samples, 201);

  const int n = static_cast<int>(o.r.size());
  std::vector<json> results(n);
  std::vector<int> failed(n, 0);
  parallel_for(n, o.jobs, [&](int k) {
    Vec rv(dir.size());
    for (std::size_t i = 0; i < dir.size(); ++i) rv[i] = o.r[k] * dir[i];
    const ParallelSurface par(frame, rv);
    json e{{"index", k}, {"r", o.r[k]}, {"r_vector", rv}};

    if (!o.mesh.empty()) {
      std::ostringstream obj;
      write_obj(obj, sample_mesh(par, d, o.s_range, o.samples, o.samples));
      const std::string name = sweep_name(o.mesh, k, n);
      write_file(dir_out / name, obj.str());
      e["mesh"] = name;
    }
    if (f.dim() == 3) {
      e["sign_regions"] = sign_regions([&](double t, double s) { return normal_determinant(par, t, s); }, d,
                                       o.s_range, region_grid, region_grid);
    }

    try {
      const FrontalCurve g = directrix(frame, rv);
      const EqualityReport eq = parallel_equals_tangent_of_directrix(par, g, check_t, check_s);
      e["equality"] = {{"sup_error", eq.sup_error},
                       {"velocity_residual", eq.velocity_residual},
                       {"tol", eq.tol},
                       {"passed", eq.passed}};
      if (!eq.passed) failed[k] = 1;

      const double gsup = directrix_velocity_sup(*frame, rv, check_t);
      double bsup = 0.0;
      for (double t : check_t) bsup = std::max(bsup, std::abs(directrix_speed(*frame, rv, t, 0)[0]));
      e["directrix_velocity_sup"] = gsup;
      e["directrix_speed_sup"] = bsup;
      e["conical_degeneration"] = gsup < 1e-7;

      json gj{{"curve", json::parse(spec.to_json())}, {"r", rv}, {"origin", g.position(d.lo)}};
      json pts = json::array();
      for (double t : check_t) pts.push_back({{"t", t}, {"position", g.position(t)}, {"speed", g.speed(t)}});
      gj["samples"] = pts;
      if (!o.directrix.empty()) {
        const std::string gname = sweep_name(o.directrix, k, n);
        write_file(dir_out / gname, gj.dump(2) + "\n");
        e["directrix"] = gname;
      }

      if (!o.locus.empty()) {
        const SingularLocus loc = singular_locus(par, sample_grid(d, 101));
        std::ostringstream csv;
        write_locus_csv(csv, loc);
        const std::string lname = sweep_name(o.locus, k, n);
        write_file(dir_out / lname, csv.str());
        e["locus"] = {{"file", lname}, {"max_on_ratio", loc.max_on_ratio()}, {"min_off_ratio", loc.min_off_ratio()}};
      }
      e["status"] = "ok";
    } catch (const InflectionError& ex) {
      e["status"] = "inflection";
      e["error"] = ex.what();
    }
    results[k] = e;
  });

  json rep{{"curve", json::parse(spec.to_json())}, {"frame", frame->kind()}, {"results", results}};
  write_file(dir_out / "report.json", rep.dump(2) + "\n");
  for (const json& e : results) {
    out << "r=" << format_double(e["r"].get<double>()) << ": " << e["status"].get<std::string>();
    if (e.contains("equality"))
      out << ", equality " << format_double(e["equality"]["sup_error"].get<double>())
          << (e["equality"]["passed"].get<bool>() ? " ok" : " FAILED");
    if (e.contains("sign_regions")) out << ", sign regions " << e["sign_regions"].get<int>();
    if (e.value("conical_degeneration", false)) out << ", conical degeneration";
    out << '\n';
  }
  for (int x : failed)
    if (x) return kCheckFailed;
  return kOk;
}

// ---- classify -------------------------------------------------------------------

int cmd_classify(const ClassifyOptions& o, std::ostream& out, std::ostream&) {
  const CurveSpec spec = load_curve(o.curve);
  const FrontalCurve& f = *spec.curve;
  if (!f.domain().contains(o.t)) throw UsageError("--t outside the curve's domain");
  Vec r = o.r;
  if (r.empty()) r.assign(std::max(f.p() - 1, 0), 0.0);
  if (static_cast<int>(r.size()) != f.p() - 1) throw UsageError("--r needs " + std::to_string(f.p() - 1) + " entries");
  bool zero = true;
  for (double x : r) zero = zero && x == 0.0;

  json rep{{"t", o.t}, {"r", r}};
  std::optional<FrontalCurve> g;
  std::optional<ParallelSurface> par;
  if (zero) {
    g = f;
  } else {
    auto frame = make_normal_frame(f);
    par.emplace(frame, r);
    g = directrix(frame, r);
  }
  const CurveType ty = detect_type(*g, o.t, rank_options(o.curve));
  SingularityLabel label = classify_type(ty, f.p());
  if (o.s) {
    const double s_star = par ? par->s_star(o.t) : 0.0;
    rep["s"] = *o.s;
    rep["s_star"] = s_star;
    if (std::abs(*o.s - s_star) > 1e-9 * std::max(1.0, std::abs(s_star))) {
      const CurveType keep = label.source_type;
      label = regular_label(f.p());
      label.source_type = keep;
    }
  }
  rep["detected_type"] = type_json(ty);
  rep["label"] = to_string(label.name);
  rep["long_name"] = long_name(label.name);
  rep["codim"] = label.codim;
  rep["curve_codim"] = label.curve_codim;
  rep["generic"] = label.generic();
  rep["mode"] = mode_name(ty);
  out << rep.dump(2) << '\n';
  return kOk;
}

// ---- mesh --------------------------------------------------------------------------

int cmd_mesh(const MeshOptions& o, std::ostream& out, std::ostream&) {
  if (o.samples < 2) throw UsageError("--samples must be at least 2");
  Mesh m;
  if (!o.normal_form.empty()) {
    const Interval t = o.curve.t_range.value_or(Interval{-1, 1});
    m = sample_mesh(PolynomialSurface(normal_form(o.normal_form).map), t, o.s_range, o.samples, o.samples);
  } else {
    const CurveSpec spec = load_curve(o.curve);
    m = sample_mesh(TangentSurface(*spec.curve), spec.curve->domain(), o.s_range, o.samples, o.samples);
  }
  std::ostringstream obj;
  write_obj(obj, m);
  if (o.out_file.empty()) {
    out << obj.str();
  } else {
    write_file(o.out_file, obj.str());
    out << "wrote " << m.vertices.size() << " vertices, " << m.faces.size() << " faces to " << o.out_file << '\n';
  }
  return kOk;
}

// ---- verify ------------------------------------------------------------------------

int cmd_verify(const VerifyOptions& o, std::ostream& out, std::ostream&) {
  const std::vector<CheckResult> res = run_suite(o.suite, o.jobs);
  bool ok = true;
  json arr = json::array();
  out << "| check | result | detail |\n|---|---|---|\n";
  for (const auto& c : res) {
    ok = ok && c.passed;
    out << "| " << c.name << " | " << (c.passed ? "pass" : "FAIL") << " | " << c.detail << " |\n";
    arr.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  }
  if (!o.out_file.empty()) write_file(o.out_file, json{{"suite", o.suite}, {"passed", ok}, {"checks", arr}}.dump(2) + "\n");
  return ok ? kOk : kCheckFailed;
}

// ---- command line ----------------------------------------------------------------

namespace {

struct RawCurve {
  std::string spec, builtin, mode = "automatic";
  std::vector<double> t_range;
  int jet_order = kDefaultJetOrder;
  double rank_eps = kDefaultRankEps;

  void add(CLI::App* app) {
    app->add_option("--spec", spec, "curve-spec JSON file");
    app->add_option("--builtin", builtin, "builtin curve name");
    app->add_option("--t-range", t_range, "parameter interval A B")->expected(2);
    app->add_option("--jet-order", jet_order, "Taylor order for type detection")->check(CLI::Range(2, 40));
    app->add_option("--rank-eps", rank_eps, "relative singular-value threshold")->check(CLI::PositiveNumber);
    app->add_option("--mode", mode, "rank mode")->check(CLI::IsMember({"exact", "numeric", "automatic"}));
  }
  CurveOptions get() const {
    CurveOptions o;
    o.spec_file = spec;
    o.builtin = builtin;
    if (!t_range.empty()) o.t_range = Interval{t_range[0], t_range[1]};
    o.jet_order = jet_order;
    o.rank_eps = rank_eps;
    o.mode = parse_rank_mode(mode);
    return o;
  }
};

Interval interval(const std::vector<double>& v) { return {v[0], v[1]}; }

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Tangent developables, parallels and their singularities", "tandev"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "tandev 1.0.0");

  RawCurve ca, cp, cc, cm;
  AnalyzeOptions ao;
  ParallelOptions po;
  ClassifyOptions co;
  MeshOptions mo;
  VerifyOptions vo;
  std::vector<double> p_srange{-1, 1}, m_srange{-1, 1};
  double ct = 0.0, cs = 0.0;

  auto* an = app.add_subcommand("analyze", "types, inflections and invariants along a curve");
  ca.add(an);
  an->add_option("--samples", ao.samples, "number of sample points");
  an->add_option("--out", ao.out_dir, "directory for analyze.json and trace.csv");

  auto* pa = app.add_subcommand("parallel", "parallels of the tangent surface for a sweep of r");
  cp.add(pa);
  pa->add_option("--r", po.r, "offsets V[,V...]")->delimiter(',');
  pa->add_option("--r-dir", po.r_dir, "normal direction for p >= 3")->delimiter(',');
  pa->add_option("--s-range", p_srange, "ruling interval A B")->expected(2);
  pa->add_option("--samples", po.samples, "mesh samples per direction");
  pa->add_option("--jobs", po.jobs, "worker threads (0: all cores)");
  pa->add_option("--out", po.out_dir, "output directory");
  bool no_mesh = false, no_locus = false;
  pa->add_option("--mesh", po.mesh, "OBJ file name inside --out");
  pa->add_option("--locus", po.locus, "singular-locus CSV name inside --out");
  pa->add_option("--directrix", po.directrix, "directrix JSON name inside --out");
  pa->add_flag("--no-mesh", no_mesh, "skip OBJ output");
  pa->add_flag("--no-locus", no_locus, "skip singular-locus CSV output");

  auto* cl = app.add_subcommand("classify", "singularity of the parallel at (t, r)");
  cc.add(cl);
  cl->add_option("--t", ct, "curve parameter");
  cl->add_option("--r", co.r, "offset vector V[,V...]")->delimiter(',');
  auto* s_opt = cl->add_option("--s", cs, "ruling parameter; off the singular locus gives 'regular'");

  auto* me = app.add_subcommand("mesh", "OBJ mesh of a tangent surface or catalog normal form");
  cm.add(me);
  me->add_option("--normal-form", mo.normal_form, "catalog name instead of a curve");
  me->add_option("--s-range", m_srange, "ruling interval A B")->expected(2);
  me->add_option("--samples", mo.samples, "samples per direction");
  me->add_option("--out", mo.out_file, "OBJ file (stdout if omitted)");

  auto* ve = app.add_subcommand("verify", "exact algebra and frame checks");
  ve->add_option("--suite", vo.suite, "algebra | frames | all");
  ve->add_option("--jobs", vo.jobs, "worker threads (0: all cores)");
  ve->add_option("--out", vo.out_file, "JSON report file");

  std::vector<std::string> rev(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (an->parsed()) {
      ao.curve = ca.get();
      return cmd_analyze(ao, out, err);
    }
    if (pa->parsed()) {
      po.curve = cp.get();
      po.s_range = interval(p_srange);
      if (no_mesh) po.mesh.clear();
      if (no_locus) po.locus.clear();
      return cmd_parallel(po, out, err);
    }
    if (cl->parsed()) {
      co.curve = cc.get();
      co.t = ct;
      if (s_opt->count() > 0) co.s = cs;
      return cmd_classify(co, out, err);
    }
    if (me->parsed()) {
      mo.curve = cm.get();
      mo.s_range = interval(m_srange);
      return cmd_mesh(mo, out, err);
    }
    if (ve->parsed()) return cmd_verify(vo, out, err);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kCheckFailed;
  }
  return kUsage;
}

}  // namespace tandev::cli
