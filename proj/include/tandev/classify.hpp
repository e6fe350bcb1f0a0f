#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tandev/curve.hpp"
#include "tandev/polynomial.hpp"

namespace tandev {

// Singularities of parallels to tangent surfaces, by the type of the
// directrix at the point.
enum class SingularityName {
  CE23,
  FU23,
  SW23,
  FP23,
  CSW23,
  CE24,
  OSW24,
  USW24,
  CSW24,
  SW24_embedded,
  regular,
  // A generic pattern for p >= 4, where no names are tabulated.
  unnamed,
  // Outside the generic list altogether.
  non_generic,
};

std::string to_string(SingularityName n);
// Human-readable name such as "swallowtail".
std::string long_name(SingularityName n);

struct SingularityLabel {
  SingularityName name = SingularityName::non_generic;
  // Codimension of the stratum in (t, s; r)-space; -1 when non-generic and 0
  // for regular points.
  int codim = -1;
  // Codimension of the directrix type in the (t, r)-plane; -1 if non-generic.
  int curve_codim = -1;
  int p = 0;
  CurveType source_type;
  // Whether source_type came from exact arithmetic.
  bool exact = false;
  bool generic() const { return name != SingularityName::non_generic; }
};

// The five generic directrix types (1..p, 1+p), (1..p, 2+p), (2..1+p, 2+p),
// (2..1+p, 3+p), (3..2+p, 3+p) with their (t, r)-codimensions 0, 1, 1, 2, 2.
struct GenericPattern {
  std::vector<int> type;
  int curve_codim;
};
std::vector<GenericPattern> generic_patterns(int p);

// Pure lookup. Unknown types give name non_generic rather than an error.
SingularityLabel classify_type(const CurveType& type, int p);
SingularityLabel classify_type(const std::vector<int>& type, int p);
SingularityLabel regular_label(int p);

struct NormalForm {
  std::string name;
  SingularityName label = SingularityName::non_generic;
  // Components in the variables (t, u).
  std::vector<RationalPoly> map;
  // Directrix type of the singularity the form stands for.
  std::vector<int> expected_type;
  // Type of the form's own cuspidal curve, where it differs from the one
  // above (the USW form is itself the tangent surface of a (2,3,4,7) curve).
  std::vector<int> directrix_type;
  // Curve whose tangent surface the form models, when the form's own
  // directrix has a different type.
  std::optional<std::vector<UPoly>> generating_curve;
};

// T_i = 3/(i+3) t^(i+3) + 1/(i+1) u t^(i+1)
RationalPoly T(int i);

std::vector<std::string> normal_form_names();
// Throws DomainError for names outside the catalog.
NormalForm normal_form(const std::string& name);

struct NormalFormReport {
  std::string name;
  // u = phi(t) solving d/dt F_2 = 0
  UPoly phi;
  // gamma(t) = F(t, phi(t))
  std::vector<UPoly> directrix;
  CurveType directrix_type;
  bool directrix_matches = false;
  // F = gamma + (u - phi) dF/du with dF/du free of u and parallel to gamma'
  bool ruled = false;
  // Type recovered for the singularity: the generating curve's type when
  // the catalog records one, the directrix type otherwise.
  CurveType recovered_type;
  SingularityLabel label;
  bool passed = false;
};

NormalFormReport normal_form_consistency(const std::string& name);

// For the (2,3,4,6) family (u, T0, T1, psi(u, T0) T4): psi = 0 gives the
// embedded swallowtail and psi(0,0) != 0 the USW form.  Nothing is claimed
// for other psi.
std::optional<SingularityName> classify_psi(const RationalPoly& psi);
// (u, T0, T1, psi(u, T0) T4) with psi in the variables (u, v), v = T0.
NormalForm psi_family(const RationalPoly& psi);

}  // namespace tandev
