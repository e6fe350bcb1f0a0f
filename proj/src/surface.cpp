#include "tandev/surface.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <queue>

#include "tandev/error.hpp"
#include "tandev/format.hpp"

namespace tandev {

std::string to_string(SurfaceKind k) {
  switch (k) {
    case SurfaceKind::tangent_surface:
      return "tangent_surface";
    case SurfaceKind::parallel:
      return "parallel";
    case SurfaceKind::normal_form:
      return "normal_form";
    case SurfaceKind::custom:
      return "custom";
  }
  return "custom";
}

namespace {

JetVector<double> position_jet(const FrontalCurve& f, double t, int order) {
  const Vec x = f.position(t);
  JetVector<double> out;
  if (order == 0) {
    for (double v : x) out.push_back(Jet<double>::constant(t, v, 0));
    return out;
  }
  const JetVector<double> v = f.velocity_jet(t, order - 1);
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(v[i].antiderivative() + x[i]);
  return out;
}

double norm(const Vec& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

}  // namespace

// ---- tangent surface ---------------------------------------------------------

Vec TangentSurface::eval(double t, double s) const {
  Vec x = curve_.position(t);
  const Vec tau = curve_.tangent(t);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] += s * tau[i];
  return x;
}

Eigen::MatrixXd TangentSurface::jacobian(double t, double s) const {
  const JetVector<double> v = curve_.velocity_jet(t, 0);
  const JetVector<double> tau = curve_.tangent_jet(t, 1);
  Eigen::MatrixXd j(dim(), 2);
  for (int i = 0; i < dim(); ++i) {
    j(i, 0) = v[i][0] + s * tau[i][1];
    j(i, 1) = tau[i][0];
  }
  return j;
}

JetVector<double> TangentSurface::jet_t(double t, double s, int order) const {
  return add(position_jet(curve_, t, order), scale(curve_.tangent_jet(t, order), Jet<double>::constant(t, s, order)));
}

// ---- parallel surface --------------------------------------------------------

ParallelSurface::ParallelSurface(std::shared_ptr<const NormalFrame> frame, Vec r)
    : frame_(std::move(frame)), r_(std::move(r)) {
  if (static_cast<int>(r_.size()) != frame_->curve().p() - 1)
    throw DomainError("parallel needs p-1 = " + std::to_string(frame_->curve().p() - 1) + " coefficients, got " +
                      std::to_string(r_.size()));
  for (double x : r_)
    if (!std::isfinite(x)) throw DomainError("parallel coefficients must be finite");
}

Vec ParallelSurface::eval(double t, double s) const {
  const FrontalCurve& f = frame_->curve();
  if (!f.domain().contains(t, 1e-9 * std::max(1.0, f.domain().length())))
    throw DomainError("t outside the frame's range");
  // Same arithmetic as TangentSurface::eval, so r = 0 reproduces it bit for bit.
  Vec x = f.position(t);
  const Vec tau = f.tangent(t);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] += s * tau[i];
  bool any = false;
  for (double ri : r_) any = any || ri != 0.0;
  if (!any) return x;
  const FrameState st = frame_->state(t);
  for (std::size_t a = 0; a < r_.size(); ++a) {
    if (r_[a] == 0.0) continue;
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += r_[a] * st.nu[a][i];
  }
  return x;
}

JetVector<double> ParallelSurface::jet_t(double t, double s, int order) const {
  const FrontalCurve& f = frame_->curve();
  JetVector<double> x =
      add(position_jet(f, t, order), scale(f.tangent_jet(t, order), Jet<double>::constant(t, s, order)));
  const FrameJets fj = frame_->jets(t, order);
  for (std::size_t a = 0; a < r_.size(); ++a)
    x = add(x, scale(fj.nu[a], Jet<double>::constant(t, r_[a], order)));
  return x;
}

Eigen::MatrixXd ParallelSurface::jacobian(double t, double s) const {
  const JetVector<double> x = jet_t(t, s, 1);
  const Vec tau = frame_->curve().tangent(t);
  Eigen::MatrixXd j(dim(), 2);
  for (int i = 0; i < dim(); ++i) {
    j(i, 0) = x[i][1];
    j(i, 1) = tau[i];
  }
  return j;
}

double ParallelSurface::s_star(double t) const {
  const FrameState st = frame_->state(t);
  double s = 0.0;
  for (std::size_t a = 0; a < r_.size(); ++a) s += r_[a] * st.ell[a] / st.kappa;
  return s;
}

// ---- polynomial surface --------------------------------------------------------------

PolynomialSurface::PolynomialSurface(std::vector<RationalPoly> components, SurfaceKind kind)
    : components_(std::move(components)), kind_(kind) {
  for (auto& c : components_) {
    c = c.with_vars({"t", "u"});
    dt_.push_back(c.differentiate("t"));
    du_.push_back(c.differentiate("u"));
  }
}

Vec PolynomialSurface::eval(double t, double s) const {
  const double x[2] = {t, s};
  Vec out;
  for (const auto& c : components_) out.push_back(c.evaluate(std::span<const double>(x, 2)));
  return out;
}

Eigen::MatrixXd PolynomialSurface::jacobian(double t, double s) const {
  const double x[2] = {t, s};
  Eigen::MatrixXd j(dim(), 2);
  for (int i = 0; i < dim(); ++i) {
    j(i, 0) = dt_[i].evaluate(std::span<const double>(x, 2));
    j(i, 1) = du_[i].evaluate(std::span<const double>(x, 2));
  }
  return j;
}

JetVector<double> PolynomialSurface::jet_t(double t, double s, int order) const {
  const double x[2] = {t, s};
  JetVector<double> out;
  for (const auto& c : components_) {
    std::vector<double> coeffs(order + 1);
    RationalPoly d = c;
    double fact = 1.0;
    for (int k = 0; k <= order; ++k) {
      if (k > 0) {
        d = d.differentiate("t");
        fact *= k;
      }
      coeffs[k] = d.evaluate(std::span<const double>(x, 2)) / fact;
    }
    out.emplace_back(t, std::move(coeffs));
  }
  return out;
}

// ---- numerics ------------------------------------------------------------------------------

Eigen::MatrixXd fd_jacobian(const ParametricSurface& surf, double t, double s, double h) {
  Eigen::MatrixXd j(surf.dim(), 2);
  for (int col = 0; col < 2; ++col) {
    auto at = [&](double d) { return col == 0 ? surf.eval(t + d, s) : surf.eval(t, s + d); };
    const Vec a = at(-2 * h), b = at(-h), c = at(h), d = at(2 * h);
    for (int i = 0; i < surf.dim(); ++i) j(i, col) = (a[i] - 8.0 * b[i] + 8.0 * c[i] - d[i]) / (12.0 * h);
  }
  return j;
}

std::pair<double, double> singular_range(const Eigen::MatrixXd& j) {
  const Eigen::VectorXd s = Eigen::JacobiSVD<Eigen::MatrixXd>(j).singularValues();
  return {s(s.size() - 1), s(0)};
}

Vec directrix_point(const NormalFrame& frame, const Vec& r, double t) {
  const FrameState st = frame.state(t);
  Vec x = frame.curve().position(t);
  for (std::size_t a = 0; a < r.size(); ++a) {
    const double q = st.ell[a] / st.kappa;
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += r[a] * (q * st.tau[i] + st.nu[a][i]);
  }
  return x;
}

Jet<double> directrix_speed(const NormalFrame& frame, const Vec& r, double t, int order) {
  Jet<double> b = frame.curve().speed_jet(t, order);
  bool any = false;
  for (double x : r) any = any || x != 0.0;
  if (!any) return b;
  const Invariants inv = frame.invariants_jet(t, order + 1);
  for (std::size_t a = 0; a < r.size(); ++a) b = b + inv.ratio_derivative[a] * r[a];
  return b;
}

FrontalCurve directrix(std::shared_ptr<const NormalFrame> frame, const Vec& r, double kappa_tol) {
  const FrontalCurve& f = frame->curve();
  if (static_cast<int>(r.size()) != f.p() - 1) throw DomainError("directrix needs p-1 coefficients");
  for (const FrameState& s : frame->trace().states)
    if (std::abs(s.kappa) < kappa_tol)
      throw InflectionError(s.t, "directrix undefined: |kappa| = " + format_double(std::abs(s.kappa)) +
                                     " at t = " + format_double(s.t) + " (the curve has an inflection point)");
  auto factor = std::make_shared<LambdaFunction>(1, [frame, r](double t, int order) {
    const JetVector<double> h = frame->curve().direction_jet(t, order);
    return JetVector<double>{directrix_speed(*frame, r, t, order) * inv_norm(h)};
  });
  return FrontalCurve(factor, f.direction_function(), directrix_point(*frame, r, f.domain().lo), f.domain());
}

FrontalCurve conical_curve(VectorFunctionPtr direction, Interval domain) {
  const int dim = direction->dim();
  auto one = std::make_shared<LambdaFunction>(
      1, [](double t, int order) { return JetVector<double>{Jet<double>::constant(t, 1.0, order)}; });
  // The frame depends on the direction only, so a unit-speed curve with the
  // same direction carries the invariants we need.
  auto frame = make_normal_frame(FrontalCurve(one, direction, Vec(dim, 0.0), domain));
  auto factor = std::make_shared<LambdaFunction>(1, [frame, direction](double t, int order) {
    const Invariants inv = frame->invariants_jet(t, order + 1);
    return JetVector<double>{-inv.ratio_derivative[0] * inv_norm(direction->jet(t, order))};
  });
  return FrontalCurve(factor, direction, Vec(dim, 0.0), domain);
}

double SingularLocus::max_on_ratio() const {
  double m = 0.0;
  for (const auto& p : points) m = std::max(m, p.sigma_min / p.sigma_scale);
  return m;
}

double SingularLocus::min_off_ratio() const {
  double m = points.empty() ? 0.0 : INFINITY;
  for (const auto& p : points) m = std::min(m, p.off_ratio);
  return m;
}

SingularLocus singular_locus(const ParallelSurface& surf, const std::vector<double>& ts, double offset,
                             double fd_step) {
  SingularLocus loc;
  loc.offset = offset;
  const Interval& d = surf.frame().curve().domain();
  for (double t : ts) {
    // Keep the stencil inside the frame's range.
    const double tc = std::clamp(t, d.lo + 2 * fd_step, d.hi - 2 * fd_step);
    LocusPoint p;
    p.t = tc;
    p.s_star = surf.s_star(tc);
    auto [lo, hi] = singular_range(fd_jacobian(surf, tc, p.s_star, fd_step));
    p.sigma_min = lo;
    p.sigma_scale = hi;
    p.off_ratio = INFINITY;
    for (double sgn : {-1.0, 1.0}) {
      auto [l2, h2] = singular_range(fd_jacobian(surf, tc, p.s_star + sgn * offset, fd_step));
      p.off_ratio = std::min(p.off_ratio, l2 / h2);
    }
    loc.points.push_back(p);
  }
  return loc;
}

EqualityReport parallel_equals_tangent_of_directrix(const ParallelSurface& surf, const FrontalCurve& g,
                                                    const std::vector<double>& ts, const std::vector<double>& ss,
                                                    double tol) {
  EqualityReport rep;
  rep.tol = tol;
  const NormalFrame& frame = surf.frame();
  for (double t : ts) {
    const double shift = surf.s_star(t);
    const Vec gt = g.position(t), tau = g.tangent(t);
    for (double s : ss) {
      const Vec p = surf.eval(t, s);
      Vec diff(p.size());
      for (std::size_t i = 0; i < p.size(); ++i) diff[i] = p[i] - (gt[i] + (s - shift) * tau[i]);
      rep.sup_error = std::max(rep.sup_error, norm(diff));
    }
  }
  const Interval& d = frame.curve().domain();
  const double h = 1e-3;
  for (double t : ts) {
    if (t - 2 * h < d.lo || t + 2 * h > d.hi) continue;
    const Vec a = directrix_point(frame, surf.r(), t - 2 * h), b = directrix_point(frame, surf.r(), t - h);
    const Vec c = directrix_point(frame, surf.r(), t + h), e = directrix_point(frame, surf.r(), t + 2 * h);
    const double speed = directrix_speed(frame, surf.r(), t, 0)[0];
    const Vec tau = frame.curve().tangent(t);
    Vec res(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
      res[i] = (a[i] - 8.0 * b[i] + 8.0 * c[i] - e[i]) / (12.0 * h) - speed * tau[i];
    rep.velocity_residual = std::max(rep.velocity_residual, norm(res));
  }
  rep.passed = rep.sup_error < tol && rep.velocity_residual < tol;
  return rep;
}

JacobianOrderFit jacobian_order_fit(const TangentSurface& surf, double t0, double s_fixed, double t_offset) {
  auto wedge = [&](double t, double s) {
    const Eigen::MatrixXd j = surf.jacobian(t, s);
    const double a = j.col(0).squaredNorm(), b = j.col(1).squaredNorm(), c = j.col(0).dot(j.col(1));
    return std::sqrt(std::max(0.0, a * b - c * c));
  };
  auto slope = [](const std::vector<double>& x, const std::vector<double>& y) {
    const int n = static_cast<int>(x.size());
    double mx = 0, my = 0;
    for (int i = 0; i < n; ++i) {
      mx += x[i] / n;
      my += y[i] / n;
    }
    double sxy = 0, sxx = 0;
    for (int i = 0; i < n; ++i) {
      sxy += (x[i] - mx) * (y[i] - my);
      sxx += (x[i] - mx) * (x[i] - mx);
    }
    return sxy / sxx;
  };
  std::vector<double> lx, lt, ls;
  for (int k = 0; k < 8; ++k) {
    const double e = 1e-2 * std::pow(0.5, k);
    lx.push_back(std::log(e));
    lt.push_back(std::log(wedge(t0 + e, s_fixed)));
    ls.push_back(std::log(wedge(t0 + t_offset, e)));
  }
  return {slope(lx, lt), slope(lx, ls)};
}

int sign_regions(const std::function<double(double, double)>& fn, Interval t, Interval s, int nt, int ns) {
  const std::vector<double> tg = sample_grid(t, nt), sg = sample_grid(s, ns);
  std::vector<int> sign(nt * ns);
  for (int i = 0; i < nt; ++i)
    for (int j = 0; j < ns; ++j) {
      const double v = fn(tg[i], sg[j]);
      sign[i * ns + j] = v > 0 ? 1 : (v < 0 ? -1 : 0);
    }
  std::vector<char> seen(nt * ns, 0);
  int regions = 0;
  for (int start = 0; start < nt * ns; ++start) {
    if (seen[start] || sign[start] == 0) continue;
    ++regions;
    std::queue<int> q;
    q.push(start);
    seen[start] = 1;
    while (!q.empty()) {
      const int c = q.front();
      q.pop();
      const int i = c / ns, j = c % ns;
      const int nb[4][2] = {{i - 1, j}, {i + 1, j}, {i, j - 1}, {i, j + 1}};
      for (const auto& n : nb) {
        if (n[0] < 0 || n[0] >= nt || n[1] < 0 || n[1] >= ns) continue;
        const int k = n[0] * ns + n[1];
        if (!seen[k] && sign[k] == sign[start]) {
          seen[k] = 1;
          q.push(k);
        }
      }
    }
  }
  return regions;
}

double normal_determinant(const ParallelSurface& surf, double t, double s) {
  if (surf.dim() != 3) throw DomainError("normal determinant needs a surface in R^3");
  const Eigen::MatrixXd j = surf.jacobian(t, s);
  const FrameState st = surf.frame().state(t);
  Eigen::Matrix3d m;
  for (int i = 0; i < 3; ++i) {
    m(i, 0) = j(i, 0);
    m(i, 1) = st.tau[i];
    m(i, 2) = st.nu[0][i];
  }
  return m.determinant();
}

// ---- export ----------------------------------------------------------------------------------

Mesh sample_mesh(const ParametricSurface& surf, Interval t, Interval s, int nt, int ns) {
  if (nt < 2 || ns < 2) throw DomainError("mesh needs at least 2x2 samples");
  Mesh m;
  const std::vector<double> tg = sample_grid(t, nt), sg = sample_grid(s, ns);
  m.vertices.reserve(nt * ns);
  for (double tv : tg)
    for (double sv : sg) m.vertices.push_back(surf.eval(tv, sv));
  for (int i = 0; i + 1 < nt; ++i)
    for (int j = 0; j + 1 < ns; ++j) {
      const int v00 = i * ns + j, v10 = (i + 1) * ns + j, v11 = (i + 1) * ns + j + 1, v01 = i * ns + j + 1;
      m.faces.push_back({v00, v10, v11});
      m.faces.push_back({v00, v11, v01});
    }
  return m;
}

void write_obj(std::ostream& os, const Mesh& mesh) {
  for (const Vec& v : mesh.vertices) {
    os << 'v';
    for (int i = 0; i < 3; ++i) os << ' ' << format_double(i < static_cast<int>(v.size()) ? v[i] : 0.0);
    os << '\n';
  }
  for (const auto& f : mesh.faces) os << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << '\n';
}

void write_locus_csv(std::ostream& os, const SingularLocus& locus) {
  os << "t,s_star,min_singular_value\n";
  for (const auto& p : locus.points)
    os << format_double(p.t) << ',' << format_double(p.s_star) << ',' << format_double(p.sigma_min) << '\n';
}

}  // namespace tandev
