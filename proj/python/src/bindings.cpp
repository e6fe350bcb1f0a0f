#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "commands.hpp"
#include "tandev/classify.hpp"
#include "tandev/error.hpp"
#include "tandev/frame.hpp"
#include "tandev/rational.hpp"
#include "tandev/spec.hpp"
#include "tandev/verify.hpp"

namespace py = pybind11;
using namespace tandev;

namespace {

FrontalCurve curve_from(const std::vector<std::string>& components, std::pair<double, double> domain) {
  return FrontalCurve::from_components(components, Interval{domain.first, domain.second});
}

py::dict type_dict(const CurveType& t) {
  py::dict d;
  d["type"] = t.entries;
  d["exact"] = t.exact;
  d["t"] = t.detected_at;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Frontal curves, parallels of tangent surfaces and their singularities";

  // Translators run newest first, so the base class goes in first.
  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<InflectionError>(m, "InflectionError", PyExc_ArithmeticError);

  py::class_<FrontalCurve>(m, "Curve")
      .def(py::init(&curve_from), py::arg("components"), py::arg("domain") = std::pair{-1.0, 1.0})
      .def_static(
          "builtin", [](const std::string& name) { return *builtin_curve(name).curve; }, py::arg("name"))
      .def_property_readonly("dim", &FrontalCurve::dim)
      .def_property_readonly("p", &FrontalCurve::p)
      .def_property_readonly("domain", [](const FrontalCurve& f) { return std::pair{f.domain().lo, f.domain().hi}; })
      .def("position", &FrontalCurve::position, py::arg("t"))
      .def("tangent", &FrontalCurve::tangent, py::arg("t"))
      .def("speed", &FrontalCurve::speed, py::arg("t"));

  m.def("builtin_names", &builtin_names);

  m.def(
      "detect_type",
      [](const FrontalCurve& f, py::object t, const std::string& mode, double eps, int jet_order) {
        const RankMode rm = parse_rank_mode(mode);
        if (rm == RankMode::exact)
          return type_dict(detect_type_exact(f, parse_rational(py::str(t).cast<std::string>()), jet_order));
        return type_dict(detect_type(f, t.cast<double>(), {jet_order, eps, rm}));
      },
      py::arg("curve"), py::arg("t"), py::arg("mode") = "auto", py::arg("eps") = kDefaultRankEps,
      py::arg("jet_order") = kDefaultJetOrder);

  m.def(
      "find_inflections",
      [](const FrontalCurve& f, int samples, double tol) { return find_inflections(f, {samples, tol}); },
      py::arg("curve"), py::arg("samples") = 2001, py::arg("tol") = 1e-6);

  m.def(
      "classify_type",
      [](const std::vector<int>& type, int p) {
        const SingularityLabel l = classify_type(type, p);
        py::dict d;
        d["name"] = to_string(l.name);
        d["long_name"] = long_name(l.name);
        d["codim"] = l.codim;
        d["curve_codim"] = l.curve_codim;
        d["generic"] = l.generic();
        return d;
      },
      py::arg("type"), py::arg("p"));

  m.def("normal_form_names", &normal_form_names);
  m.def(
      "normal_form_consistent", [](const std::string& name) { return normal_form_consistency(name).passed; },
      py::arg("name"));

  m.def(
      "invariants",
      [](const FrontalCurve& f, double t) {
        auto frame = make_normal_frame(f);
        const Invariants inv = frame->invariants_jet(t, 1);
        py::dict d;
        d["frame"] = frame->kind();
        d["kappa"] = inv.kappa[0];
        std::vector<double> ell, ratio;
        for (const auto& e : inv.ell) ell.push_back(e[0]);
        for (const auto& r : inv.ratio) ratio.push_back(r[0]);
        d["ell"] = ell;
        d["ell_over_kappa"] = ratio;
        return d;
      },
      py::arg("curve"), py::arg("t"));

  m.def(
      "check_T_identity", [](int j) { return check_T_identity(j).holds; }, py::arg("j"));

  m.def(
      "run_suite",
      [](const std::string& suite, int jobs) {
        py::list out;
        for (const CheckResult& r : run_suite(suite, jobs)) {
          py::dict d;
          d["name"] = r.name;
          d["passed"] = r.passed;
          d["detail"] = r.detail;
          out.append(d);
        }
        return out;
      },
      py::arg("suite") = "all", py::arg("jobs") = 0);

  // Same entry point as the executable; returns (exit code, stdout, stderr).
  m.def(
      "cli",
      [](std::vector<std::string> args) {
        args.insert(args.begin(), "tandev");
        std::ostringstream out, err;
        int code;
        {
          py::gil_scoped_release release;
          code = cli::run(args, out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"));
}
