#pragma once

#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tandev/curve.hpp"

namespace tandev {

using Vec = std::vector<double>;

struct FrameState {
  double t = 0.0;
  Vec tau, mu;
  std::vector<Vec> nu;
  double kappa = 0.0;
  Vec ell;
  // Largest orthonormality defect met up to this state.
  double drift = 0.0;
};

struct FrameTrace {
  std::vector<FrameState> states;
  double drift = 0.0;
  // Grid spacing; states are equally spaced.
  double step() const { return states.size() > 1 ? states[1].t - states[0].t : 0.0; }
};

struct FrameJets {
  JetVector<double> tau, mu;
  std::vector<JetVector<double>> nu;
  Jet<double> kappa;
  std::vector<Jet<double>> ell;
};

struct Invariants {
  Jet<double> kappa;
  std::vector<Jet<double>> ell;
  std::vector<Jet<double>> ratio;             // ell_i / kappa
  std::vector<Jet<double>> ratio_derivative;  // (ell_i / kappa)', one order lower
};

inline constexpr double kInflectionTol = 1e-8;

struct PrincipalNormal {
  Vec mu;
  double kappa = 0.0;
};

// mu = tau'/|tau'|, kappa = |tau'|. Throws InflectionError when |tau'| < tol.
PrincipalNormal principal_normal(const VectorFunction& tau, double t, double tol = kInflectionTol);

struct FrameOptions {
  // Grid points per unit of t.
  double density = 2000.0;
  // Overrides density when positive.
  int samples = 0;
  double inflection_tol = kInflectionTol;
  // Initial normals (p-1 vectors) for the transported frame; empty means
  // Gram-Schmidt of the standard basis against {tau, mu}.
  std::vector<Vec> nu0;
};

// Adapted frame {tau, mu, nu_1..nu_{p-1}} along a frontal curve with
// normally parallel nu_i, so that
//   tau' = kappa mu,  mu' = -kappa tau + sum ell_i nu_i,  nu_i' = -ell_i mu.
class NormalFrame {
 public:
  virtual ~NormalFrame() = default;
  virtual std::string kind() const = 0;
  virtual FrameJets jets(double t, int order) const = 0;

  const FrontalCurve& curve() const { return curve_; }
  const FrameTrace& trace() const { return trace_; }
  FrameState state(double t) const;
  Invariants invariants_jet(double t, int order) const;

 protected:
  explicit NormalFrame(FrontalCurve c) : curve_(std::move(c)) {}
  FrontalCurve curve_;
  FrameTrace trace_;
};

// Bishop frame by RK4 transport of nu' = -(mu'.nu) mu with modified
// Gram-Schmidt after every step. Requires kappa > 0 on the whole domain.
class BishopFrame : public NormalFrame {
 public:
  explicit BishopFrame(FrontalCurve curve, const FrameOptions& opt = {});
  std::string kind() const override { return "bishop"; }
  FrameJets jets(double t, int order) const override;

 private:
  FrameOptions opt_;
};

// For p = 2 the normal line is spanned by h x h'. For polynomial h the
// common factor of its components is divided out, which yields a smooth
// frame through inflection points; kappa = tau'.mu is then signed.
class CrossNormalFrame : public NormalFrame {
 public:
  explicit CrossNormalFrame(FrontalCurve curve, const FrameOptions& opt = {});
  std::string kind() const override { return "cross"; }
  FrameJets jets(double t, int order) const override;

 private:
  FrameOptions opt_;
  std::optional<std::vector<UPoly>> reduced_;  // (h x h') / gcd
};

// CrossNormalFrame for p = 2, BishopFrame otherwise.
std::shared_ptr<const NormalFrame> make_normal_frame(const FrontalCurve& curve, const FrameOptions& opt = {});

// Taylor coefficients of a transported normal: given mu to order N+1 and
// nu(t0), returns the jet of nu to order N solving nu' = -(mu'.nu) mu.
JetVector<double> transport_jet(const JetVector<double>& mu, const Vec& nu0, int order);

struct StructureResiduals {
  double tau = 0.0;           // |tau' - kappa mu|
  double mu = 0.0;            // |mu' + kappa tau - sum ell nu|
  double nu = 0.0;            // |nu_i' + ell_i mu|
  double antisymmetry = 0.0;  // |C + C^T| for C_ab = e_a'.e_b
  double drift = 0.0;
};

// Derivatives by a five-point stencil on the trace.
StructureResiduals structure_residuals(const FrameTrace& trace);

void write_trace_csv(std::ostream& os, const FrameTrace& trace);

// Gram defect max |G - I| of a set of vectors.
double gram_defect(const std::vector<Vec>& vs);

}  // namespace tandev
