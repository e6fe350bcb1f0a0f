#pragma once

#include <Eigen/Dense>

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tandev/expr.hpp"
#include "tandev/jet.hpp"
#include "tandev/polynomial.hpp"

namespace tandev {

inline constexpr int kDefaultJetOrder = 8;
inline constexpr double kDefaultRankEps = 1e-8;

struct Interval {
  double lo = -1.0;
  double hi = 1.0;
  double length() const { return hi - lo; }
  bool contains(double t, double slack = 0.0) const { return t >= lo - slack && t <= hi + slack; }
};

// A smooth map from an interval of R into R^n that can be expanded as a jet
// at any parameter value.
class VectorFunction {
 public:
  virtual ~VectorFunction() = default;
  virtual int dim() const = 0;
  virtual JetVector<double> jet(double t, int order) const = 0;
  // Exact expansion; nullopt when the data has no rational jet at t.
  virtual std::optional<JetVector<Rational>> exact_jet(const Rational& t, int order) const;
  std::vector<double> value(double t) const;
};

using VectorFunctionPtr = std::shared_ptr<const VectorFunction>;

class ExprFunction : public VectorFunction {
 public:
  explicit ExprFunction(std::vector<Expr> components);
  int dim() const override { return static_cast<int>(components_.size()); }
  JetVector<double> jet(double t, int order) const override;
  std::optional<JetVector<Rational>> exact_jet(const Rational& t, int order) const override;
  const std::vector<Expr>& components() const { return components_; }

 private:
  std::vector<Expr> components_;
};

class PolyFunction : public VectorFunction {
 public:
  explicit PolyFunction(std::vector<UPoly> components);
  int dim() const override { return static_cast<int>(components_.size()); }
  JetVector<double> jet(double t, int order) const override;
  std::optional<JetVector<Rational>> exact_jet(const Rational& t, int order) const override;
  const std::vector<UPoly>& components() const { return components_; }

 private:
  std::vector<UPoly> components_;
};

class LambdaFunction : public VectorFunction {
 public:
  using Fn = std::function<JetVector<double>(double, int)>;
  LambdaFunction(int dim, Fn fn) : dim_(dim), fn_(std::move(fn)) {}
  int dim() const override { return dim_; }
  JetVector<double> jet(double t, int order) const override { return fn_(t, order); }

 private:
  int dim_;
  Fn fn_;
};

// Frontal curve in R^{1+p}. The velocity is stored as
//
//   f'(t) = c(t) h(t),   h nowhere zero,
//
// so that tau = h/|h| and a = c |h| give the frontal data f' = a tau. For
// polynomial curves c is the gcd of the components of f' and h is the
// exact quotient, which keeps both factors polynomial.
class FrontalCurve {
 public:
  struct Options {
    int check_samples = 257;
    double min_direction_norm = 1e-10;
    double quadrature_tol = 1e-13;
  };

  FrontalCurve(VectorFunctionPtr speed_factor, VectorFunctionPtr direction, std::vector<double> origin,
               Interval domain, VectorFunctionPtr position = nullptr);
  FrontalCurve(VectorFunctionPtr speed_factor, VectorFunctionPtr direction, std::vector<double> origin,
               Interval domain, VectorFunctionPtr position, const Options& options);

  // f given by its components; polynomial components get exact content
  // extraction, anything else must have f' != 0 on the domain.
  static FrontalCurve from_components(const std::vector<Expr>& components, Interval domain);
  static FrontalCurve from_components(const std::vector<std::string>& components, Interval domain);
  static FrontalCurve from_polynomials(const std::vector<UPoly>& components, Interval domain);
  // f' = a * direction with f(domain.lo) = origin.
  static FrontalCurve from_frontal_data(VectorFunctionPtr a, VectorFunctionPtr direction,
                                        std::vector<double> origin, Interval domain);

  int dim() const { return direction_->dim(); }
  int p() const { return dim() - 1; }
  const Interval& domain() const { return domain_; }

  Jet<double> speed_factor_jet(double t, int order) const;
  JetVector<double> direction_jet(double t, int order) const;
  JetVector<double> velocity_jet(double t, int order) const;
  JetVector<double> tangent_jet(double t, int order) const;
  Jet<double> speed_jet(double t, int order) const;

  std::optional<Jet<Rational>> exact_speed_factor_jet(const Rational& t, int order) const;
  std::optional<JetVector<Rational>> exact_direction_jet(const Rational& t, int order) const;
  std::optional<JetVector<Rational>> exact_velocity_jet(const Rational& t, int order) const;

  std::vector<double> position(double t) const;
  std::vector<double> tangent(double t) const;
  double speed(double t) const { return speed_jet(t, 0)[0]; }

  // Exact polynomial h, when the curve was built from polynomials.
  const std::optional<std::vector<UPoly>>& polynomial_direction() const { return poly_direction_; }
  const VectorFunctionPtr& direction_function() const { return direction_; }
  const VectorFunctionPtr& speed_factor_function() const { return speed_factor_; }

 private:
  std::vector<double> integrate(double a, double b) const;
  void build_position_table();

  VectorFunctionPtr speed_factor_;
  VectorFunctionPtr direction_;
  VectorFunctionPtr position_;
  std::vector<double> origin_;
  Interval domain_;
  Options options_;
  std::optional<std::vector<UPoly>> poly_direction_;
  // Cumulative positions at equally spaced nodes, used when no closed-form
  // position is available.
  std::shared_ptr<const std::vector<std::vector<double>>> table_;
};

enum class RankMode { exact, numeric, automatic };

std::string to_string(RankMode m);
RankMode parse_rank_mode(const std::string& s);

struct CurveType {
  std::vector<int> entries;
  double detected_at = 0.0;
  double tolerance_used = 0.0;
  bool exact = false;

  std::string to_string() const;
  friend bool operator==(const CurveType& a, const CurveType& b) { return a.entries == b.entries; }
};

struct RankOptions {
  int jet_order = kDefaultJetOrder;
  double eps = kDefaultRankEps;
  RankMode mode = RankMode::automatic;
};

// Raw derivatives f^(1)..f^(k) at t as columns.
Eigen::MatrixXd wronskian(const FrontalCurve& f, double t, int k);
std::vector<std::vector<Rational>> exact_wronskian(const FrontalCurve& f, const Rational& t, int k);

// Rank of the first k columns for k = 1..n, exactly.
std::vector<int> rank_profile(const std::vector<std::vector<Rational>>& columns);
// Same with rank = #{sigma > eps * sigma_ref}, sigma_ref the largest
// singular value of the full column set.
std::vector<int> rank_profile(const std::vector<Eigen::VectorXd>& columns, double eps);

// a_i = min{k : profile[k-1] = i}; throws TypeUndetermined if the profile
// stops short of `dim` or skips a rank.
std::vector<int> type_from_profile(const std::vector<int>& profile, int dim, int order);

CurveType detect_type(const FrontalCurve& f, double t, const RankOptions& opt = {});
CurveType detect_type_exact(const FrontalCurve& f, const Rational& t, int jet_order = kDefaultJetOrder);

// Type of the augmented Wronskian (tau, tau', ..., tau^(k-1)).
CurveType detect_primitive_type(const VectorFunction& tau, double t, const RankOptions& opt = {});
CurveType detect_primitive_type(const FrontalCurve& f, double t, const RankOptions& opt = {});

struct TypeShiftReport {
  int m = 0;
  CurveType primitive;
  CurveType detected;
  bool holds = false;
};

TypeShiftReport type_shift_check(const FrontalCurve& f, double t, const RankOptions& opt = {});

struct InflectionOptions {
  int samples = 2001;
  double tol = 1e-6;
};

std::vector<double> find_inflections(const FrontalCurve& f, const InflectionOptions& opt = {});

// |tau'|^2 as a jet.
Jet<double> kappa_squared_jet(const FrontalCurve& f, double t, int order);

struct KappaOrderReport {
  int ord_kappa = 0;
  int expected = 0;
  CurveType type;
  bool exact = false;
  bool holds = false;
};

KappaOrderReport kappa_order_check(const FrontalCurve& f, double t, const RankOptions& opt = {});

std::vector<double> sample_grid(const Interval& d, int n);

}  // namespace tandev
