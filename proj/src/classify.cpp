#include "tandev/classify.hpp"

#include <map>

#include "tandev/error.hpp"

namespace tandev {

std::string to_string(SingularityName n) {
  switch (n) {
    case SingularityName::CE23: return "CE23";
    case SingularityName::FU23: return "FU23";
    case SingularityName::SW23: return "SW23";
    case SingularityName::FP23: return "FP23";
    case SingularityName::CSW23: return "CSW23";
    case SingularityName::CE24: return "CE24";
    case SingularityName::OSW24: return "OSW24";
    case SingularityName::USW24: return "USW24";
    case SingularityName::CSW24: return "CSW24";
    case SingularityName::SW24_embedded: return "SW24_embedded";
    case SingularityName::regular: return "regular";
    case SingularityName::unnamed: return "unnamed";
    case SingularityName::non_generic: return "non_generic";
  }
  return "non_generic";
}

std::string long_name(SingularityName n) {
  switch (n) {
    case SingularityName::CE23:
    case SingularityName::CE24: return "cuspidal edge";
    case SingularityName::FU23: return "folded umbrella";
    case SingularityName::SW23: return "swallowtail";
    case SingularityName::FP23: return "folded pleat";
    case SingularityName::CSW23:
    case SingularityName::CSW24: return "cuspidal swallowtail";
    case SingularityName::OSW24: return "open swallowtail";
    case SingularityName::USW24: return "unfurled swallowtail";
    case SingularityName::SW24_embedded: return "embedded swallowtail";
    case SingularityName::regular: return "regular point";
    case SingularityName::unnamed: return "generic singularity";
    case SingularityName::non_generic: return "outside the generic list";
  }
  return "";
}

std::vector<GenericPattern> generic_patterns(int p) {
  auto run = [p](int start, int last) {
    std::vector<int> v;
    for (int i = 0; i < p; ++i) v.push_back(start + i);
    v.push_back(last);
    return v;
  };
  return {{run(1, 1 + p), 0}, {run(1, 2 + p), 1}, {run(2, 2 + p), 1}, {run(2, 3 + p), 2}, {run(3, 3 + p), 2}};
}

SingularityLabel classify_type(const std::vector<int>& type, int p) {
  SingularityLabel l;
  l.p = p;
  l.source_type.entries = type;
  if (p < 2 || static_cast<int>(type.size()) != p + 1) return l;
  const auto patterns = generic_patterns(p);
  int row = -1;
  for (std::size_t i = 0; i < patterns.size(); ++i)
    if (patterns[i].type == type) row = static_cast<int>(i);
  if (row < 0) return l;
  l.curve_codim = patterns[row].curve_codim;
  // One more dimension for s; the singular points sit on a curve in (t, s).
  l.codim = l.curve_codim + 1;
  static const SingularityName p2[] = {SingularityName::CE23, SingularityName::FU23, SingularityName::SW23,
                                       SingularityName::FP23, SingularityName::CSW23};
  static const SingularityName p3[] = {SingularityName::CE24, SingularityName::CE24, SingularityName::OSW24,
                                       SingularityName::USW24, SingularityName::CSW24};
  l.name = p == 2 ? p2[row] : p == 3 ? p3[row] : SingularityName::unnamed;
  return l;
}

SingularityLabel classify_type(const CurveType& type, int p) {
  SingularityLabel l = classify_type(type.entries, p);
  l.source_type = type;
  l.exact = type.exact;
  return l;
}

SingularityLabel regular_label(int p) {
  SingularityLabel l;
  l.name = SingularityName::regular;
  l.codim = 0;
  l.curve_codim = 0;
  l.p = p;
  return l;
}

// ---- catalog ---------------------------------------------------------------

namespace {

const std::vector<std::string> kVars{"t", "u"};

RationalPoly P(const std::string& s) { return RationalPoly::parse(s, kVars); }
RationalPoly u() { return RationalPoly::variable("u", kVars); }

UPoly monomials(std::initializer_list<std::pair<int, int>> terms) {
  UPoly r;
  for (auto [c, k] : terms) r = r + UPoly::monomial(Rational(c), k);
  return r;
}

}  // namespace

RationalPoly T(int i) {
  if (i < 0) throw DomainError("T_i needs i >= 0");
  const RationalPoly t = RationalPoly::variable("t", kVars);
  Rational a(3, i + 3), b(1, i + 1);
  a.canonicalize();
  b.canonicalize();
  return t.pow(i + 3) * a + u() * t.pow(i + 1) * b;
}

std::vector<std::string> normal_form_names() { return {"SW23", "FP23", "OSW24", "USW24", "SW24_embedded", "CSW24"}; }

NormalForm normal_form(const std::string& name) {
  NormalForm nf;
  nf.name = name;
  if (name == "SW23") {
    nf.label = SingularityName::SW23;
    nf.map = {u(), T(0), T(1)};
    nf.expected_type = {2, 3, 4};
  } else if (name == "FP23") {
    nf.label = SingularityName::FP23;
    nf.map = {u(), T(0) + T(1), T(2) + T(3)};
    nf.expected_type = {2, 3, 5};
  } else if (name == "OSW24") {
    nf.label = SingularityName::OSW24;
    nf.map = {u(), T(0), T(1), T(2)};
    nf.expected_type = {2, 3, 4, 5};
  } else if (name == "USW24") {
    nf.label = SingularityName::USW24;
    nf.map = {u(), T(0), T(1), T(4)};
    nf.expected_type = {2, 3, 4, 6};
    nf.directrix_type = {2, 3, 4, 7};
    nf.generating_curve = std::vector<UPoly>{monomials({{1, 2}}), monomials({{1, 3}}), monomials({{1, 4}}),
                                             monomials({{1, 6}, {1, 7}})};
  } else if (name == "SW24_embedded") {
    nf.label = SingularityName::SW24_embedded;
    nf.map = {u(), T(0), T(1), RationalPoly(kVars)};
    nf.expected_type = {2, 3, 4, 6};
    nf.directrix_type = {2, 3, 4};
    nf.generating_curve = std::vector<UPoly>{monomials({{1, 2}}), monomials({{1, 3}}), monomials({{1, 4}}),
                                             monomials({{1, 6}})};
  } else if (name == "CSW24") {
    nf.label = SingularityName::CSW24;
    nf.map = {u(), P("t^4 + u*t"), P("4/5*t^5 + 1/2*u*t^2"), P("2/3*t^6 + 1/3*u*t^3")};
    nf.expected_type = {3, 4, 5, 6};
  } else {
    throw DomainError("unknown normal form '" + name + "'");
  }
  if (nf.directrix_type.empty()) nf.directrix_type = nf.expected_type;
  return nf;
}

namespace {

CurveType exact_type_at_zero(const std::vector<UPoly>& comps) {
  // Identically zero components do not take part (embedded forms).
  std::vector<UPoly> nz;
  for (const auto& c : comps)
    if (!c.is_zero()) nz.push_back(c);
  return detect_type_exact(FrontalCurve::from_polynomials(nz, {-1, 1}), Rational(0), 10);
}

}  // namespace

NormalFormReport normal_form_consistency(const std::string& name) {
  const NormalForm nf = normal_form(name);
  NormalFormReport rep;
  rep.name = name;

  const RationalPoly d2 = nf.map[1].differentiate("t");
  if (d2.degree("u") != 1) throw DomainError(name + ": d/dt F_2 is not linear in u");
  const UPoly A = UPoly::from(d2.coefficient("u", 0)), B = UPoly::from(d2.coefficient("u", 1));
  auto [q, rem] = UPoly::divmod(A, B);
  if (!rem.is_zero()) throw DomainError(name + ": singular locus is not a graph u = phi(t)");
  rep.phi = q * Rational(-1);

  const RationalPoly phi = rep.phi.to_poly("t", kVars);
  for (const auto& c : nf.map) rep.directrix.push_back(UPoly::from(c.substitute("u", phi)));

  rep.ruled = true;
  for (std::size_t i = 0; i < nf.map.size(); ++i) {
    const RationalPoly w = nf.map[i].differentiate("u");
    if (!w.only_involves({"t"})) {
      rep.ruled = false;
      continue;
    }
    const RationalPoly rest = nf.map[i] - rep.directrix[i].to_poly("t", kVars) - (u() - phi) * w;
    rep.ruled = rep.ruled && rest.is_zero();
  }
  if (rep.ruled) {
    std::vector<UPoly> w, dg;
    for (std::size_t i = 0; i < nf.map.size(); ++i) {
      w.push_back(UPoly::from(nf.map[i].differentiate("u")));
      dg.push_back(rep.directrix[i].derivative());
    }
    for (std::size_t i = 0; i < w.size(); ++i)
      for (std::size_t j = i + 1; j < w.size(); ++j)
        rep.ruled = rep.ruled && (dg[i] * w[j] - dg[j] * w[i]).is_zero();
  }

  rep.directrix_type = exact_type_at_zero(rep.directrix);
  rep.directrix_matches = rep.directrix_type.entries == nf.directrix_type;
  rep.recovered_type = nf.generating_curve ? exact_type_at_zero(*nf.generating_curve) : rep.directrix_type;
  rep.label = classify_type(rep.recovered_type, static_cast<int>(nf.map.size()) - 1);
  rep.passed = rep.ruled && rep.directrix_matches && rep.recovered_type.entries == nf.expected_type;
  return rep;
}

std::optional<SingularityName> classify_psi(const RationalPoly& psi) {
  if (psi.is_zero()) return SingularityName::SW24_embedded;
  std::vector<Rational> zero(psi.vars().size(), Rational(0));
  if (sgn(psi.evaluate(std::span<const Rational>(zero))) != 0) return SingularityName::USW24;
  return std::nullopt;
}

NormalForm psi_family(const RationalPoly& psi) {
  const std::vector<std::string> ext{"t", "u", "v"};
  RationalPoly composed = psi.with_vars(ext).substitute("v", T(0).with_vars(ext));
  RationalPoly g(kVars);
  for (const auto& [e, c] : composed.terms()) {
    if (e[2] != 0) throw DomainError("psi substitution left the variable v");
    g += RationalPoly::monomial(c, {e[0], e[1]}, kVars);
  }
  NormalForm nf;
  nf.name = "psi_family";
  nf.label = classify_psi(psi).value_or(SingularityName::non_generic);
  nf.map = {u(), T(0), T(1), g * T(4)};
  nf.expected_type = {2, 3, 4, 6};
  return nf;
}

}  // namespace tandev
