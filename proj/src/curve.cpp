#include "tandev/curve.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tandev/error.hpp"

namespace tandev {

std::optional<JetVector<Rational>> VectorFunction::exact_jet(const Rational&, int) const { return std::nullopt; }

std::vector<double> VectorFunction::value(double t) const {
  const JetVector<double> j = jet(t, 0);
  std::vector<double> v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v[i] = j[i][0];
  return v;
}

ExprFunction::ExprFunction(std::vector<Expr> components) : components_(std::move(components)) {
  if (components_.empty()) throw DomainError("vector function needs at least one component");
}

JetVector<double> ExprFunction::jet(double t, int order) const {
  JetVector<double> out;
  out.reserve(components_.size());
  for (const auto& e : components_) out.push_back(e.jet(t, order));
  return out;
}

std::optional<JetVector<Rational>> ExprFunction::exact_jet(const Rational& t, int order) const {
  JetVector<Rational> out;
  out.reserve(components_.size());
  try {
    for (const auto& e : components_) out.push_back(e.jet(t, order));
  } catch (const ExactUnavailable&) {
    return std::nullopt;
  }
  return out;
}

PolyFunction::PolyFunction(std::vector<UPoly> components) : components_(std::move(components)) {
  if (components_.empty()) throw DomainError("vector function needs at least one component");
}

JetVector<double> PolyFunction::jet(double t, int order) const {
  JetVector<double> out;
  out.reserve(components_.size());
  for (const auto& p : components_) out.push_back(p.jet(t, order));
  return out;
}

std::optional<JetVector<Rational>> PolyFunction::exact_jet(const Rational& t, int order) const {
  JetVector<Rational> out;
  out.reserve(components_.size());
  for (const auto& p : components_) out.push_back(p.jet(t, order));
  return out;
}

namespace {

// d/dt of another function.
class DerivativeFunction : public VectorFunction {
 public:
  explicit DerivativeFunction(VectorFunctionPtr inner) : inner_(std::move(inner)) {}
  int dim() const override { return inner_->dim(); }
  JetVector<double> jet(double t, int order) const override { return derivative(inner_->jet(t, order + 1)); }
  std::optional<JetVector<Rational>> exact_jet(const Rational& t, int order) const override {
    auto j = inner_->exact_jet(t, order + 1);
    if (!j) return std::nullopt;
    return derivative(*j);
  }

 private:
  VectorFunctionPtr inner_;
};

VectorFunctionPtr constant_one() { return std::make_shared<PolyFunction>(std::vector<UPoly>{UPoly::monomial(1, 0)}); }

double norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

// Five-point Gauss-Legendre rule on [a, b].
std::vector<double> gauss5(const FrontalCurve& f, double a, double b) {
  static const double x[5] = {0.0, -0.5384693101056831, 0.5384693101056831, -0.9061798459386640,
                              0.9061798459386640};
  static const double w[5] = {0.5688888888888889, 0.4786286704993665, 0.4786286704993665,
                              0.2369268850561891, 0.2369268850561891};
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  std::vector<double> acc(f.dim(), 0.0);
  for (int k = 0; k < 5; ++k) {
    const JetVector<double> v = f.velocity_jet(c + h * x[k], 0);
    for (int i = 0; i < f.dim(); ++i) acc[i] += w[k] * v[i][0];
  }
  for (double& q : acc) q *= h;
  return acc;
}

std::vector<double> adaptive(const FrontalCurve& f, double a, double b, const std::vector<double>& whole,
                             double tol, int depth) {
  const double m = 0.5 * (a + b);
  std::vector<double> left = gauss5(f, a, m), right = gauss5(f, m, b);
  double err = 0.0;
  for (std::size_t i = 0; i < whole.size(); ++i) err = std::max(err, std::abs(left[i] + right[i] - whole[i]));
  if (err <= tol || depth >= 40) {
    for (std::size_t i = 0; i < left.size(); ++i) left[i] += right[i];
    return left;
  }
  std::vector<double> l = adaptive(f, a, m, left, 0.5 * tol, depth + 1);
  const std::vector<double> r = adaptive(f, m, b, right, 0.5 * tol, depth + 1);
  for (std::size_t i = 0; i < l.size(); ++i) l[i] += r[i];
  return l;
}

constexpr int kTableIntervals = 256;

}  // namespace

FrontalCurve::FrontalCurve(VectorFunctionPtr speed_factor, VectorFunctionPtr direction, std::vector<double> origin,
                           Interval domain, VectorFunctionPtr position)
    : FrontalCurve(std::move(speed_factor), std::move(direction), std::move(origin), domain, std::move(position),
                   Options{}) {}

FrontalCurve::FrontalCurve(VectorFunctionPtr speed_factor, VectorFunctionPtr direction, std::vector<double> origin,
                           Interval domain, VectorFunctionPtr position, const Options& options)
    : speed_factor_(std::move(speed_factor)),
      direction_(std::move(direction)),
      position_(std::move(position)),
      origin_(std::move(origin)),
      domain_(domain),
      options_(options) {
  if (!speed_factor_ || !direction_) throw DomainError("frontal curve needs a speed factor and a direction");
  if (speed_factor_->dim() != 1) throw DomainError("speed factor must be scalar");
  if (direction_->dim() < 2) throw DomainError("frontal curve needs dimension at least 2");
  if (static_cast<int>(origin_.size()) != direction_->dim()) throw DomainError("origin has the wrong dimension");
  if (position_ && position_->dim() != direction_->dim()) throw DomainError("position has the wrong dimension");
  if (!(domain_.hi > domain_.lo)) throw DomainError("empty parameter domain");

  for (double t : sample_grid(domain_, options_.check_samples)) {
    if (!(norm(direction_->value(t)) >= options_.min_direction_norm)) {
      std::ostringstream os;
      os << "curve is not frontal: no continuous unit tangent at t = " << t;
      throw NotFrontalError(t, os.str());
    }
  }
  if (!position_) build_position_table();
}

FrontalCurve FrontalCurve::from_polynomials(const std::vector<UPoly>& components, Interval domain) {
  std::vector<UPoly> d;
  for (const auto& c : components) d.push_back(c.derivative());
  UPoly g;
  for (const auto& q : d) g = UPoly::gcd(g, q);
  if (g.is_zero()) throw NotFrontalError(domain.lo, "constant curve has no tangent direction");
  std::vector<UPoly> h;
  for (const auto& q : d) h.push_back(UPoly::divmod(q, g).first);
  std::vector<double> origin;
  for (const auto& c : components) origin.push_back(c.evaluate(domain.lo));
  FrontalCurve f(std::make_shared<PolyFunction>(std::vector<UPoly>{g}), std::make_shared<PolyFunction>(h),
                 std::move(origin), domain, std::make_shared<PolyFunction>(components));
  f.poly_direction_ = h;
  return f;
}

FrontalCurve FrontalCurve::from_components(const std::vector<Expr>& components, Interval domain) {
  std::vector<UPoly> polys;
  for (const auto& e : components) {
    auto p = e.as_polynomial({"t"});
    if (!p) break;
    polys.push_back(UPoly::from(*p, "t"));
  }
  if (polys.size() == components.size()) return from_polynomials(polys, domain);

  auto pos = std::make_shared<ExprFunction>(components);
  return FrontalCurve(constant_one(), std::make_shared<DerivativeFunction>(pos), pos->value(domain.lo), domain, pos);
}

FrontalCurve FrontalCurve::from_components(const std::vector<std::string>& components, Interval domain) {
  std::vector<Expr> e;
  for (const auto& s : components) e.push_back(Expr::parse(s, {"t"}));
  return from_components(e, domain);
}

FrontalCurve FrontalCurve::from_frontal_data(VectorFunctionPtr a, VectorFunctionPtr direction,
                                             std::vector<double> origin, Interval domain) {
  if (a->dim() != 1) throw DomainError("speed must be scalar");
  // f' = a * h/|h|, so the stored speed factor is a/|h|.
  auto factor = std::make_shared<LambdaFunction>(1, [a, direction](double t, int order) {
    return JetVector<double>{a->jet(t, order)[0] * inv_norm(direction->jet(t, order))};
  });
  return FrontalCurve(factor, std::move(direction), std::move(origin), domain);
}

Jet<double> FrontalCurve::speed_factor_jet(double t, int order) const { return speed_factor_->jet(t, order)[0]; }

JetVector<double> FrontalCurve::direction_jet(double t, int order) const { return direction_->jet(t, order); }

JetVector<double> FrontalCurve::velocity_jet(double t, int order) const {
  return scale(direction_jet(t, order), speed_factor_jet(t, order));
}

JetVector<double> FrontalCurve::tangent_jet(double t, int order) const { return normalized(direction_jet(t, order)); }

Jet<double> FrontalCurve::speed_jet(double t, int order) const {
  const JetVector<double> h = direction_jet(t, order);
  return speed_factor_jet(t, order) * sqrt(dot(h, h));
}

std::optional<Jet<Rational>> FrontalCurve::exact_speed_factor_jet(const Rational& t, int order) const {
  auto j = speed_factor_->exact_jet(t, order);
  if (!j) return std::nullopt;
  return (*j)[0];
}

std::optional<JetVector<Rational>> FrontalCurve::exact_direction_jet(const Rational& t, int order) const {
  return direction_->exact_jet(t, order);
}

std::optional<JetVector<Rational>> FrontalCurve::exact_velocity_jet(const Rational& t, int order) const {
  auto c = exact_speed_factor_jet(t, order);
  auto h = exact_direction_jet(t, order);
  if (!c || !h) return std::nullopt;
  return scale(*h, *c);
}

std::vector<double> FrontalCurve::integrate(double a, double b) const {
  if (a == b) return std::vector<double>(dim(), 0.0);
  return adaptive(*this, a, b, gauss5(*this, a, b), options_.quadrature_tol * std::max(1.0, std::abs(b - a)), 0);
}

void FrontalCurve::build_position_table() {
  auto table = std::make_shared<std::vector<std::vector<double>>>();
  table->reserve(kTableIntervals + 1);
  table->push_back(origin_);
  const double step = domain_.length() / kTableIntervals;
  for (int i = 0; i < kTableIntervals; ++i) {
    const double a = domain_.lo + step * i;
    const double b = i + 1 == kTableIntervals ? domain_.hi : domain_.lo + step * (i + 1);
    std::vector<double> next = table->back();
    const std::vector<double> inc = integrate(a, b);
    for (int k = 0; k < dim(); ++k) next[k] += inc[k];
    table->push_back(std::move(next));
  }
  table_ = std::move(table);
}

std::vector<double> FrontalCurve::position(double t) const {
  if (position_) return position_->value(t);
  const double step = domain_.length() / kTableIntervals;
  const int i = std::clamp(static_cast<int>(std::lround((t - domain_.lo) / step)), 0, kTableIntervals);
  const double node = i == kTableIntervals ? domain_.hi : domain_.lo + step * i;
  std::vector<double> x = (*table_)[i];
  const std::vector<double> inc = integrate(node, t);
  for (int k = 0; k < dim(); ++k) x[k] += inc[k];
  return x;
}

std::vector<double> FrontalCurve::tangent(double t) const {
  const JetVector<double> tau = tangent_jet(t, 0);
  std::vector<double> v(tau.size());
  for (std::size_t i = 0; i < tau.size(); ++i) v[i] = tau[i][0];
  return v;
}

// ---- types ----------------------------------------------------------------

std::string to_string(RankMode m) {
  switch (m) {
    case RankMode::exact:
      return "exact";
    case RankMode::numeric:
      return "numeric";
    case RankMode::automatic:
      return "auto";
  }
  return "auto";
}

RankMode parse_rank_mode(const std::string& s) {
  if (s == "exact") return RankMode::exact;
  if (s == "numeric") return RankMode::numeric;
  if (s == "auto" || s == "automatic") return RankMode::automatic;
  throw ParseError("unknown rank mode '" + s + "' (expected exact, numeric or auto)");
}

std::string CurveType::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (i) s += ", ";
    s += std::to_string(entries[i]);
  }
  return s + ")";
}

Eigen::MatrixXd wronskian(const FrontalCurve& f, double t, int k) {
  if (k < 1) throw DomainError("wronskian needs k >= 1");
  const JetVector<double> v = f.velocity_jet(t, k - 1);
  Eigen::MatrixXd w(f.dim(), k);
  double fact = 1.0;
  for (int j = 0; j < k; ++j) {
    if (j > 0) fact *= j;
    for (int i = 0; i < f.dim(); ++i) w(i, j) = fact * v[i][j];
  }
  return w;
}

std::vector<std::vector<Rational>> exact_wronskian(const FrontalCurve& f, const Rational& t, int k) {
  if (k < 1) throw DomainError("wronskian needs k >= 1");
  auto v = f.exact_velocity_jet(t, k - 1);
  if (!v) throw ExactUnavailable("curve has no exact jet at t = " + t.get_str());
  std::vector<std::vector<Rational>> cols(k, std::vector<Rational>(f.dim()));
  Rational fact(1);
  for (int j = 0; j < k; ++j) {
    if (j > 0) fact *= j;
    for (int i = 0; i < f.dim(); ++i) cols[j][i] = fact * (*v)[i][j];
  }
  return cols;
}

std::vector<int> rank_profile(const std::vector<std::vector<Rational>>& columns) {
  std::vector<std::pair<std::size_t, std::vector<Rational>>> basis;
  std::vector<int> profile;
  for (auto v : columns) {
    for (const auto& [pivot, b] : basis) {
      if (sgn(v[pivot]) == 0) continue;
      const Rational factor = v[pivot] / b[pivot];
      for (std::size_t i = 0; i < v.size(); ++i) v[i] -= factor * b[i];
    }
    auto it = std::find_if(v.begin(), v.end(), [](const Rational& q) { return sgn(q) != 0; });
    if (it != v.end()) basis.emplace_back(static_cast<std::size_t>(it - v.begin()), std::move(v));
    profile.push_back(static_cast<int>(basis.size()));
  }
  return profile;
}

std::vector<int> rank_profile(const std::vector<Eigen::VectorXd>& columns, double eps) {
  std::vector<int> profile;
  if (columns.empty()) return profile;
  const int n = static_cast<int>(columns[0].size());
  Eigen::MatrixXd all(n, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) all.col(j) = columns[j];
  const double ref = Eigen::JacobiSVD<Eigen::MatrixXd>(all).singularValues()(0);
  for (std::size_t k = 1; k <= columns.size(); ++k) {
    if (ref == 0.0) {
      profile.push_back(0);
      continue;
    }
    const Eigen::VectorXd s = Eigen::JacobiSVD<Eigen::MatrixXd>(all.leftCols(k)).singularValues();
    profile.push_back(static_cast<int>((s.array() > eps * ref).count()));
  }
  return profile;
}

std::vector<int> type_from_profile(const std::vector<int>& profile, int dim, int order) {
  std::vector<int> entries;
  int prev = 0;
  for (std::size_t k = 0; k < profile.size() && static_cast<int>(entries.size()) < dim; ++k) {
    if (profile[k] > prev + 1) throw TypeUndetermined("numerical rank jumped by more than one at k = " + std::to_string(k + 1));
    if (profile[k] == prev + 1) entries.push_back(static_cast<int>(k + 1));
    prev = profile[k];
  }
  if (static_cast<int>(entries.size()) < dim)
    throw TypeUndetermined("type undetermined at order " + std::to_string(order) + ": rank reaches only " +
                           std::to_string(entries.size()) + " of " + std::to_string(dim));
  return entries;
}

namespace {

std::vector<std::vector<Rational>> exact_columns(const JetVector<Rational>& v, int k) {
  std::vector<std::vector<Rational>> cols(k, std::vector<Rational>(v.size()));
  for (int j = 0; j < k; ++j)
    for (std::size_t i = 0; i < v.size(); ++i) cols[j][i] = v[i][j];
  return cols;
}

std::vector<Eigen::VectorXd> numeric_columns(const JetVector<double>& v, int k) {
  std::vector<Eigen::VectorXd> cols(k, Eigen::VectorXd(v.size()));
  for (int j = 0; j < k; ++j)
    for (std::size_t i = 0; i < v.size(); ++i) cols[j](i) = v[i][j];
  return cols;
}

// Shared driver: `exact` and `numeric` produce the order-(K-1) jet whose
// Taylor columns make up the Wronskian.
template <class ExactFn, class NumericFn>
CurveType detect(int dim, double t, const RankOptions& opt, ExactFn exact, NumericFn numeric) {
  const int K = opt.jet_order;
  CurveType ct;
  ct.detected_at = t;
  if (opt.mode != RankMode::numeric) {
    std::optional<JetVector<Rational>> v = exact(rational_from_double(t), K - 1);
    if (v) {
      ct.entries = type_from_profile(rank_profile(exact_columns(*v, K)), dim, K);
      ct.exact = true;
      return ct;
    }
    if (opt.mode == RankMode::exact) throw ExactUnavailable("no exact jet available at t = " + std::to_string(t));
  }
  ct.entries = type_from_profile(rank_profile(numeric_columns(numeric(t, K - 1), K), opt.eps), dim, K);
  ct.tolerance_used = opt.eps;
  return ct;
}

}  // namespace

CurveType detect_type(const FrontalCurve& f, double t, const RankOptions& opt) {
  return detect(
      f.dim(), t, opt, [&](const Rational& q, int k) { return f.exact_velocity_jet(q, k); },
      [&](double x, int k) { return f.velocity_jet(x, k); });
}

CurveType detect_type_exact(const FrontalCurve& f, const Rational& t, int jet_order) {
  auto v = f.exact_velocity_jet(t, jet_order - 1);
  if (!v) throw ExactUnavailable("no exact jet available at t = " + t.get_str());
  CurveType ct;
  ct.detected_at = t.get_d();
  ct.exact = true;
  ct.entries = type_from_profile(rank_profile(exact_columns(*v, jet_order)), f.dim(), jet_order);
  return ct;
}

CurveType detect_primitive_type(const VectorFunction& tau, double t, const RankOptions& opt) {
  return detect(
      tau.dim(), t, opt, [&](const Rational& q, int k) { return tau.exact_jet(q, k); },
      [&](double x, int k) { return tau.jet(x, k); });
}

CurveType detect_primitive_type(const FrontalCurve& f, double t, const RankOptions& opt) {
  // tau = h/|h| spans the same osculating flags as h.
  return detect(
      f.dim(), t, opt, [&](const Rational& q, int k) { return f.exact_direction_jet(q, k); },
      [&](double x, int k) { return f.tangent_jet(x, k); });
}

TypeShiftReport type_shift_check(const FrontalCurve& f, double t, const RankOptions& opt) {
  TypeShiftReport r;
  r.detected = detect_type(f, t, opt);
  r.primitive = detect_primitive_type(f, t, opt);
  std::optional<Jet<Rational>> c;
  if (opt.mode != RankMode::numeric) c = f.exact_speed_factor_jet(rational_from_double(t), opt.jet_order);
  if (c) {
    r.m = c->valuation();
  } else {
    const Jet<double> a = f.speed_factor_jet(t, opt.jet_order);
    double scale = 0.0;
    for (double x : a.coeffs()) scale = std::max(scale, std::abs(x));
    r.m = a.valuation(opt.eps * std::max(1.0, scale));
  }
  r.holds = r.detected.entries.size() == r.primitive.entries.size();
  for (std::size_t i = 0; r.holds && i < r.detected.entries.size(); ++i)
    r.holds = r.detected.entries[i] == r.primitive.entries[i] + r.m;
  return r;
}

Jet<double> kappa_squared_jet(const FrontalCurve& f, double t, int order) {
  const JetVector<double> dtau = derivative(f.tangent_jet(t, order + 1));
  return dot(dtau, dtau);
}

std::vector<double> find_inflections(const FrontalCurve& f, const InflectionOptions& opt) {
  const std::vector<double> grid = sample_grid(f.domain(), std::max(opt.samples, 3));
  const int n = static_cast<int>(grid.size());
  std::vector<double> q(n);
  double qmax = 0.0;
  for (int i = 0; i < n; ++i) {
    q[i] = kappa_squared_jet(f, grid[i], 0)[0];
    qmax = std::max(qmax, q[i]);
  }
  auto dq = [&](double t) { return kappa_squared_jet(f, t, 1)[1]; };

  std::vector<int> candidates;
  for (int i = 0; i < n; ++i) {
    const bool left = i == 0 || q[i] <= q[i - 1];
    const bool right = i == n - 1 || q[i] <= q[i + 1];
    if (left && right && q[i] <= 1e-3 * qmax + opt.tol * opt.tol) candidates.push_back(i);
  }

  std::vector<double> out;
  for (std::size_t c = 0; c < candidates.size();) {
    // A run of adjacent candidates is one flat minimum; keep its lowest point.
    std::size_t e = c;
    int best = candidates[c];
    while (e + 1 < candidates.size() && candidates[e + 1] == candidates[e] + 1) {
      ++e;
      if (q[candidates[e]] < q[best]) best = candidates[e];
    }
    c = e + 1;

    double lo = grid[std::max(best - 1, 0)], hi = grid[std::min(best + 1, n - 1)];
    double t = grid[best];
    double dlo = dq(lo), dhi = dq(hi);
    if (dlo < 0.0 && dhi > 0.0) {
      for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(lo)); ++it) {
        const double mid = 0.5 * (lo + hi);
        const double dm = dq(mid);
        if (dm == 0.0) {
          lo = hi = mid;
          break;
        }
        (dm < 0.0 ? lo : hi) = mid;
      }
      t = 0.5 * (lo + hi);
    }
    double kappa = std::sqrt(std::max(0.0, kappa_squared_jet(f, t, 0)[0]));
    // Prefer a nearby round value (0 rather than 4e-16) when it is just as
    // good; exact type detection at the reported point depends on it.
    const double tr = std::round(t * 1e10) / 1e10;
    const double kr = std::sqrt(std::max(0.0, kappa_squared_jet(f, tr, 0)[0]));
    if (kr <= kappa || kr < 1e-3 * opt.tol) {
      t = tr;
      kappa = kr;
    }
    if (kappa < opt.tol) out.push_back(t);
  }
  return out;
}

KappaOrderReport kappa_order_check(const FrontalCurve& f, double t, const RankOptions& opt) {
  KappaOrderReport r;
  r.type = detect_type(f, t, opt);
  r.expected = r.type.entries.at(1) - r.type.entries.at(0) - 1;
  const int K = opt.jet_order;
  int ord2 = -1;
  if (opt.mode != RankMode::numeric) {
    // |tau'|^2 = (|h|^2 |h'|^2 - (h.h')^2) / |h|^4 and |h| does not vanish.
    if (auto h = f.exact_direction_jet(rational_from_double(t), K)) {
      const JetVector<Rational> dh = derivative(*h);
      const JetVector<Rational> h0 = truncated(*h, K - 1);
      const Jet<Rational> hh = dot(h0, dh);
      const Jet<Rational> num = dot(h0, h0) * dot(dh, dh) - hh * hh;
      ord2 = num.valuation();
      r.exact = true;
    }
  }
  if (!r.exact) {
    const Jet<double> k2 = kappa_squared_jet(f, t, K);
    double scale = 0.0;
    for (double x : k2.coeffs()) scale = std::max(scale, std::abs(x));
    ord2 = k2.valuation(opt.eps * std::max(1.0, scale));
  }
  r.ord_kappa = ord2 / 2;
  r.holds = ord2 % 2 == 0 && r.ord_kappa == r.expected;
  return r;
}

std::vector<double> sample_grid(const Interval& d, int n) {
  if (n < 2) return {d.lo};
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = d.lo + d.length() * static_cast<double>(i) / (n - 1);
  g.back() = d.hi;
  return g;
}

}  // namespace tandev
