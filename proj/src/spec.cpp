#include "tandev/spec.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "tandev/error.hpp"
#include "tandev/format.hpp"
#include "tandev/surface.hpp"

namespace tandev {

using nlohmann::json;

namespace {

struct Builtin {
  std::vector<std::string> components;
  std::vector<std::string> direction;  // conical construction
  const char* note;
};

const std::map<std::string, Builtin>& builtins() {
  static const std::map<std::string, Builtin> b{
      {"mond", {{"t", "t^3/6", "t^4/24"}, {}, "type (1,3,4) at 0, inflection at 0"}},
      {"helix", {{"cos(t)", "sin(t)", "t"}, {}, "constant kappa and ell"}},
      {"circle", {{"cos(t)", "sin(t)", "0"}, {}, "planar, ell = 0"}},
      {"cubic", {{"t", "t^2/2", "t^3/6"}, {}, "generalized helix"}},
      {"moment3", {{"t", "t^2", "t^3"}, {}, "type (1,2,3)"}},
      {"moment4", {{"t", "t^2", "t^3", "t^4"}, {}, "type (1,2,3,4)"}},
      {"folded-umbrella", {{"t", "t^2", "t^4"}, {}, "type (1,2,4) at 0"}},
      {"swallowtail", {{"t^2", "t^3", "t^4"}, {}, "type (2,3,4) at 0"}},
      {"folded-pleat", {{"t^2", "t^3", "t^5"}, {}, "type (2,3,5) at 0"}},
      {"cuspidal-swallowtail", {{"t^3", "t^4", "t^5"}, {}, "type (3,4,5) at 0"}},
      {"open-swallowtail", {{"t^2", "t^3", "t^4", "t^5"}, {}, "type (2,3,4,5) at 0"}},
      {"csw-directrix", {{"t^3", "t^4", "t^5", "t^6"}, {}, "type (3,4,5,6) at 0"}},
      {"torus-knot", {{"cos(t)", "sin(t)", "cos(2*t)/2", "sin(2*t)/2"}, {}, "curve in R^4"}},
      {"f-lambda", {{"t^2", "t^3", "t^4", "t^6 + LAMBDA*t^7"}, {}, "type (2,3,4,6) at 0"}},
      {"cone", {{}, {"cos(t)", "sin(t)", "t"}, "r = 1 parallel is a cone"}},
  };
  return b;
}

void line_col(const std::string& text, std::size_t byte, int& line, int& col) {
  line = 1;
  col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
}

std::shared_ptr<const FrontalCurve> build(const CurveSpec& s) {
  if (s.conical) {
    std::vector<Expr> e;
    for (const auto& c : s.direction) e.push_back(Expr::parse(c));
    return std::make_shared<const FrontalCurve>(conical_curve(std::make_shared<ExprFunction>(e), s.domain));
  }
  return std::make_shared<const FrontalCurve>(FrontalCurve::from_components(s.components, s.domain));
}

std::string lambda_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number()) return format_double(v.get<double>());
  throw ParseError("\"lambda\" must be a number or a rational string");
}

}  // namespace

std::vector<std::string> builtin_names() {
  std::vector<std::string> n;
  for (const auto& [k, v] : builtins()) n.push_back(k);
  return n;
}

CurveSpec builtin_curve(const std::string& name, std::optional<Interval> domain, const std::string& lambda) {
  const auto it = builtins().find(name);
  if (it == builtins().end()) {
    std::string known;
    for (const auto& n : builtin_names()) known += (known.empty() ? "" : ", ") + n;
    throw ParseError("unknown builtin '" + name + "' (known: " + known + ")");
  }
  CurveSpec s;
  s.name = name;
  s.components = it->second.components;
  s.direction = it->second.direction;
  s.conical = !s.direction.empty();
  if (domain) s.domain = *domain;
  for (auto& c : s.components) {
    const auto pos = c.find("LAMBDA");
    if (pos != std::string::npos) c.replace(pos, 6, "(" + lambda + ")");
  }
  s.curve = build(s);
  return s;
}

CurveSpec parse_curve_spec(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    int line, col;
    line_col(text, e.byte == 0 ? 0 : e.byte - 1, line, col);
    std::string msg = e.what();
    throw ParseError("malformed JSON at line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + msg,
                     line, col);
  }
  if (!j.is_object()) throw ParseError("curve spec must be a JSON object", 1, 1);

  std::optional<Interval> domain;
  if (j.contains("domain")) {
    const json& d = j["domain"];
    if (!d.is_array() || d.size() != 2 || !d[0].is_number() || !d[1].is_number())
      throw ParseError("\"domain\" must be [lo, hi]");
    domain = Interval{d[0].get<double>(), d[1].get<double>()};
    if (!(domain->lo < domain->hi)) throw ParseError("\"domain\" needs lo < hi");
  }

  if (j.contains("builtin")) {
    if (!j["builtin"].is_string()) throw ParseError("\"builtin\" must be a string");
    return builtin_curve(j["builtin"].get<std::string>(), domain, j.contains("lambda") ? lambda_text(j["lambda"]) : "1");
  }

  CurveSpec s;
  s.name = j.value("name", std::string("custom"));
  if (domain) s.domain = *domain;
  s.conical = j.value("conical", false);
  const char* key = s.conical ? "direction" : "components";
  if (!j.contains(key) || !j[key].is_array() || j[key].empty())
    throw ParseError(std::string("curve spec needs a non-empty \"") + key + "\" array (or \"builtin\")");
  std::vector<std::string>& out = s.conical ? s.direction : s.components;
  for (const auto& c : j[key]) {
    if (!c.is_string()) throw ParseError(std::string("\"") + key + "\" entries must be strings");
    out.push_back(c.get<std::string>());
  }
  if (j.contains("dim") && (!j["dim"].is_number_integer() || j["dim"].get<int>() != static_cast<int>(out.size())))
    throw ParseError("\"dim\" does not match the number of components");
  if (out.size() < 2) throw ParseError("a curve needs at least two components");

  for (const auto& c : out) {
    try {
      Expr::parse(c);
    } catch (const ParseError& e) {
      // Point into the JSON text at the offending component.
      const std::size_t at = text.find("\"" + c + "\"");
      int line = 1, col = 1;
      if (at != std::string::npos) line_col(text, at + 1 + std::max(e.column() - 1, 0), line, col);
      throw ParseError("in component \"" + c + "\" (line " + std::to_string(line) + ", column " +
                           std::to_string(col) + "): " + e.what(),
                       line, col);
    }
  }
  s.curve = build(s);
  return s;
}

CurveSpec load_curve_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read spec file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_curve_spec(ss.str());
}

CurveSpec with_domain(CurveSpec spec, Interval domain) {
  if (!(domain.lo < domain.hi)) throw DomainError("t-range needs lo < hi");
  spec.domain = domain;
  spec.curve = build(spec);
  return spec;
}

std::string CurveSpec::to_json() const {
  json j;
  j["name"] = name;
  j["domain"] = {domain.lo, domain.hi};
  if (conical) {
    j["conical"] = true;
    j["direction"] = direction;
  } else {
    j["components"] = components;
    j["dim"] = components.size();
  }
  return j.dump();
}

}  // namespace tandev
