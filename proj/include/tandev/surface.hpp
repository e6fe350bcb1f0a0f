#pragma once

#include <Eigen/Dense>

#include <array>
#include <functional>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "tandev/curve.hpp"
#include "tandev/frame.hpp"
#include "tandev/polynomial.hpp"

namespace tandev {

enum class SurfaceKind { tangent_surface, parallel, normal_form, custom };
std::string to_string(SurfaceKind k);

class ParametricSurface {
 public:
  virtual ~ParametricSurface() = default;
  virtual int dim() const = 0;
  virtual SurfaceKind kind() const = 0;
  virtual Vec eval(double t, double s) const = 0;
  // Columns d/dt and d/ds.
  virtual Eigen::MatrixXd jacobian(double t, double s) const = 0;
  // Jet in t at fixed s.
  virtual JetVector<double> jet_t(double t, double s, int order) const = 0;
};

// (t, s) -> f(t) + s tau(t)
class TangentSurface : public ParametricSurface {
 public:
  explicit TangentSurface(FrontalCurve curve) : curve_(std::move(curve)) {}
  int dim() const override { return curve_.dim(); }
  SurfaceKind kind() const override { return SurfaceKind::tangent_surface; }
  Vec eval(double t, double s) const override;
  Eigen::MatrixXd jacobian(double t, double s) const override;
  JetVector<double> jet_t(double t, double s, int order) const override;
  const FrontalCurve& curve() const { return curve_; }

 private:
  FrontalCurve curve_;
};

// (t, s) -> f(t) + s tau(t) + sum r_i nu_i(t)
class ParallelSurface : public ParametricSurface {
 public:
  ParallelSurface(std::shared_ptr<const NormalFrame> frame, Vec r);
  int dim() const override { return frame_->curve().dim(); }
  SurfaceKind kind() const override { return SurfaceKind::parallel; }
  Vec eval(double t, double s) const override;
  Eigen::MatrixXd jacobian(double t, double s) const override;
  JetVector<double> jet_t(double t, double s, int order) const override;
  const NormalFrame& frame() const { return *frame_; }
  const std::shared_ptr<const NormalFrame>& frame_ptr() const { return frame_; }
  const Vec& r() const { return r_; }
  // s*(t) = sum r_i ell_i / kappa
  double s_star(double t) const;

 private:
  std::shared_ptr<const NormalFrame> frame_;
  Vec r_;
};

// Polynomial map (t, u) -> R^n with exact coefficients.
class PolynomialSurface : public ParametricSurface {
 public:
  explicit PolynomialSurface(std::vector<RationalPoly> components, SurfaceKind kind = SurfaceKind::normal_form);
  int dim() const override { return static_cast<int>(components_.size()); }
  SurfaceKind kind() const override { return kind_; }
  Vec eval(double t, double s) const override;
  Eigen::MatrixXd jacobian(double t, double s) const override;
  JetVector<double> jet_t(double t, double s, int order) const override;
  const std::vector<RationalPoly>& components() const { return components_; }

 private:
  std::vector<RationalPoly> components_;
  std::vector<RationalPoly> dt_, du_;
  SurfaceKind kind_;
};

// Five-point central differences with step h in both parameters.
Eigen::MatrixXd fd_jacobian(const ParametricSurface& surf, double t, double s, double h = 1e-3);

// Smallest and largest singular values of a Jacobian.
std::pair<double, double> singular_range(const Eigen::MatrixXd& j);

// ---- directrix and singular locus ------------------------------------------

inline constexpr double kDirectrixKappaTol = 1e-6;

// g(t) = f(t) + sum r_i (ell_i/kappa tau + nu_i)
Vec directrix_point(const NormalFrame& frame, const Vec& r, double t);
// b(t) = a(t) + sum r_i (ell_i/kappa)'
Jet<double> directrix_speed(const NormalFrame& frame, const Vec& r, double t, int order);

// Frontal curve with the same tau and speed b, integrated from the closed
// form at the start of the domain. Throws InflectionError if |kappa| < tol
// anywhere on the frame's grid.
FrontalCurve directrix(std::shared_ptr<const NormalFrame> frame, const Vec& r, double kappa_tol = kDirectrixKappaTol);

// Curve with the given direction and speed a = -(ell_1/kappa)', whose
// r = e_1 parallel degenerates to a cone: the directrix has b = 0.
FrontalCurve conical_curve(VectorFunctionPtr direction, Interval domain);

struct LocusPoint {
  double t = 0.0;
  double s_star = 0.0;
  double sigma_min = 0.0;    // at (t, s*)
  double sigma_scale = 0.0;  // largest singular value at (t, s*)
  double off_ratio = 0.0;    // min over s* +- offset of sigma_min / sigma_max
};

struct SingularLocus {
  std::vector<LocusPoint> points;
  double offset = 0.05;
  double max_on_ratio() const;
  double min_off_ratio() const;
};

SingularLocus singular_locus(const ParallelSurface& surf, const std::vector<double>& ts, double offset = 0.05,
                             double fd_step = 1e-3);

struct EqualityReport {
  double sup_error = 0.0;          // |P(t,s) - Tan(g)(t, s - s*)|
  double velocity_residual = 0.0;  // |g' - b tau| with g' from the closed form
  double tol = 1e-7;
  bool passed = false;
};

EqualityReport parallel_equals_tangent_of_directrix(const ParallelSurface& surf, const FrontalCurve& g,
                                                    const std::vector<double>& ts, const std::vector<double>& ss,
                                                    double tol = 1e-7);

struct JacobianOrderFit {
  double t_exponent = 0.0;
  double s_exponent = 0.0;
};

// Log-log slopes of |d_t ^ d_s| of Tan(f) near (t0, 0): in t at s = s_fixed
// and in s at t = t0 + t_offset.
JacobianOrderFit jacobian_order_fit(const TangentSurface& surf, double t0, double s_fixed = 0.5,
                                    double t_offset = 0.1);

// Number of connected regions of constant nonzero sign of `fn` on a grid.
int sign_regions(const std::function<double(double, double)>& fn, Interval t, Interval s, int nt, int ns);

// det(d_t P, tau, nu) for p = 2 parallels.
double normal_determinant(const ParallelSurface& surf, double t, double s);

// ---- export ---------------------------------------------------------------

struct Mesh {
  std::vector<Vec> vertices;
  std::vector<std::array<int, 3>> faces;  // 0-based
};

Mesh sample_mesh(const ParametricSurface& surf, Interval t, Interval s, int nt, int ns);
// First three coordinates only; faces counterclockwise in (t, s).
void write_obj(std::ostream& os, const Mesh& mesh);
void write_locus_csv(std::ostream& os, const SingularLocus& locus);

}  // namespace tandev
