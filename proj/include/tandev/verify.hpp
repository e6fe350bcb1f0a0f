#pragma once

#include <string>
#include <vector>

#include "tandev/curve.hpp"
#include "tandev/frame.hpp"
#include "tandev/polynomial.hpp"

namespace tandev {

// Exact identity T_{2j+1} = (j+2)/6 T_{j-1}^2 - (j+2)/(3j) u T_{2j-1}.
struct TIdentityReport {
  int j = 0;
  std::string lhs, rhs;
  bool holds = false;
};
TIdentityReport check_T_identity(int j);

// T_5 in terms of u, T_0, T_1 after eliminating T_3.
struct T5Report {
  bool two_step = false;  // T_5 = 2/3 T_1^2 - 2/3 u T_3
  bool expanded = false;  // T_5 = -1/3 u T_0^2 + 2/3 u^2 T_1 + 2/3 T_1^2
  // The variant with u^2 T_0 in place of u^2 T_1 (expected to fail).
  bool variant_with_T0 = false;
};
T5Report check_T5_expansion();

// Envelope of t^6 + x1 t^3 + x2 t^2 + x3 t + x4 = 0 and its singular locus.
struct EnvelopeReport {
  bool envelope = false;     // solved (x3, x4) match the stated formulas and kill the family
  bool locus = false;        // rank drop exactly at x2 = -15 t^4 - 3 x1 t, with the stated map
  bool normal_form = false;  // x1 = 5u and diag(5, -15, 30, -15) give the CSW form
  std::string x3, x4, x2_locus;
  bool passed() const { return envelope && locus && normal_form; }
};
EnvelopeReport check_envelope_csw();

// Tangent surface of (t^2, t^3, t^4, t^6 + lambda t^7) through
// u = -3(t^2 + s) and an affine map, then the elimination of T_3.
struct EliminationReport {
  Rational lambda;
  bool elimination_identity = false;  // 1/2 t^6 + 1/4 u t^4 = 1/2 T0^2 - u T1
  bool reduces_to_stated = false;     // affine image equals (u, T0, T1, T3 + 35/24 lambda T4)
  bool reduced_form = false;          // after elimination and 24/35 scaling: lambda T4
  std::string fourth_component;       // the reduced fourth component
  bool passed() const { return elimination_identity && reduces_to_stated && reduced_form; }
};
EliminationReport check_usw_elimination(const Rational& lambda);

struct StructureReport {
  std::string fixture;
  StructureResiduals residuals;
  double ell_sup = 0.0;
  double tol = 1e-8;
  // Antisymmetry within tol and the residuals within 1e-6.
  bool passed = false;
};
StructureReport check_structure_equation_consistency(const std::string& name, const FrontalCurve& f,
                                                     const FrameOptions& opt = {}, double tol = 1e-8);

// Deterministic polynomial fixture in R^4 without inflections on [-1/2, 1/2].
FrontalCurve random_polynomial_fixture(unsigned seed);

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

std::vector<CheckResult> run_algebra_suite(int jobs = 0);
std::vector<CheckResult> run_frames_suite(int jobs = 0);
// "algebra", "frames" or "all"; DomainError otherwise.
std::vector<CheckResult> run_suite(const std::string& suite, int jobs = 0);

}  // namespace tandev
