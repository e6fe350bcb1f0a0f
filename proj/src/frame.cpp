#include "tandev/frame.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

#include "tandev/error.hpp"
#include "tandev/format.hpp"

namespace tandev {

namespace {

double dotv(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double normv(const Vec& a) { return std::sqrt(dotv(a, a)); }

Vec values(const JetVector<double>& v) {
  Vec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i][0];
  return out;
}

[[noreturn]] void inflection(double t, double kappa) {
  std::ostringstream os;
  os << "inflection point: |tau'| = " << kappa << " at t = " << t;
  throw InflectionError(t, os.str());
}

// tau to order N+1 and mu = tau'/|tau'|, kappa = |tau'| to order N.
struct TangentData {
  JetVector<double> tau, mu;
  Jet<double> kappa;
};

TangentData tangent_data(const FrontalCurve& f, double t, int order, double tol) {
  TangentData d;
  d.tau = f.tangent_jet(t, order + 1);
  const JetVector<double> dtau = derivative(d.tau);
  const Jet<double> k2 = dot(dtau, dtau);
  const double kappa0 = std::sqrt(std::max(0.0, k2[0]));
  if (kappa0 < tol) inflection(t, kappa0);
  d.kappa = sqrt(k2);
  d.mu = scale(dtau, Jet<double>::constant(t, 1.0, order) / d.kappa);
  return d;
}

// Modified Gram-Schmidt of `v` against an orthonormal list.
Vec orthonormalize(Vec v, const std::vector<const Vec*>& against) {
  for (const Vec* e : against) {
    const double c = dotv(v, *e);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] -= c * (*e)[i];
  }
  const double n = normv(v);
  if (n == 0.0) throw DomainError("normal vector collapsed during re-orthonormalization");
  for (double& x : v) x /= n;
  return v;
}

std::vector<Vec> reorthonormalize(const Vec& tau, const Vec& mu, const std::vector<Vec>& nu) {
  std::vector<Vec> out;
  for (const Vec& v : nu) {
    std::vector<const Vec*> against{&tau, &mu};
    for (const Vec& e : out) against.push_back(&e);
    out.push_back(orthonormalize(v, against));
  }
  return out;
}

FrameState state_from_jets(double t, const FrameJets& j) {
  FrameState s;
  s.t = t;
  s.tau = values(j.tau);
  s.mu = values(j.mu);
  for (const auto& n : j.nu) s.nu.push_back(values(n));
  s.kappa = j.kappa[0];
  for (const auto& l : j.ell) s.ell.push_back(l[0]);
  return s;
}

std::vector<double> frame_grid(const Interval& d, const FrameOptions& opt) {
  const int n = opt.samples > 0 ? opt.samples : std::max(3, static_cast<int>(std::lround(d.length() * opt.density)) + 1);
  return sample_grid(d, n);
}

double state_defect(const FrameState& s) {
  std::vector<Vec> e{s.tau, s.mu};
  e.insert(e.end(), s.nu.begin(), s.nu.end());
  return gram_defect(e);
}

}  // namespace

double gram_defect(const std::vector<Vec>& vs) {
  double d = 0.0;
  for (std::size_t a = 0; a < vs.size(); ++a)
    for (std::size_t b = a; b < vs.size(); ++b) d = std::max(d, std::abs(dotv(vs[a], vs[b]) - (a == b ? 1.0 : 0.0)));
  return d;
}

PrincipalNormal principal_normal(const VectorFunction& tau, double t, double tol) {
  const JetVector<double> j = tau.jet(t, 1);
  Vec d(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) d[i] = j[i][1];
  const double k = normv(d);
  if (k < tol) inflection(t, k);
  for (double& x : d) x /= k;
  return {d, k};
}

JetVector<double> transport_jet(const JetVector<double>& mu, const Vec& nu0, int order) {
  const int dim = static_cast<int>(mu.size());
  const JetVector<double> dmu = derivative(mu);
  if (tandev::order(dmu) < order) throw DomainError("transport_jet: mu jet too short");
  std::vector<Vec> n(order + 1, Vec(dim, 0.0));
  n[0] = nu0;
  std::vector<double> ell(order + 1, 0.0);
  for (int k = 0; k < order; ++k) {
    double l = 0.0;
    for (int j = 0; j <= k; ++j)
      for (int i = 0; i < dim; ++i) l += dmu[i][j] * n[k - j][i];
    ell[k] = l;
    for (int i = 0; i < dim; ++i) {
      double acc = 0.0;
      for (int j = 0; j <= k; ++j) acc += ell[j] * mu[i][k - j];
      n[k + 1][i] = -acc / (k + 1);
    }
  }
  JetVector<double> out;
  for (int i = 0; i < dim; ++i) {
    std::vector<double> c(order + 1);
    for (int k = 0; k <= order; ++k) c[k] = n[k][i];
    out.emplace_back(mu[i].base(), std::move(c));
  }
  return out;
}

FrameState NormalFrame::state(double t) const {
  FrameState s = state_from_jets(t, jets(t, 0));
  s.drift = state_defect(s);
  return s;
}

Invariants NormalFrame::invariants_jet(double t, int order) const {
  const FrameJets j = jets(t, order);
  if (std::abs(j.kappa[0]) < kInflectionTol) inflection(t, std::abs(j.kappa[0]));
  Invariants inv;
  inv.kappa = j.kappa;
  inv.ell = j.ell;
  for (const auto& l : j.ell) {
    inv.ratio.push_back(l / j.kappa);
    inv.ratio_derivative.push_back(inv.ratio.back().derivative());
  }
  return inv;
}

// ---- Bishop frame -----------------------------------------------------------

BishopFrame::BishopFrame(FrontalCurve curve, const FrameOptions& opt) : NormalFrame(std::move(curve)), opt_(opt) {
  const int dim = curve_.dim();
  const int nnu = curve_.p() - 1;
  const std::vector<double> grid = frame_grid(curve_.domain(), opt_);

  struct Sample {
    Vec tau, mu, dmu;
    double kappa;
  };
  auto sample = [&](double t) {
    const TangentData d = tangent_data(curve_, t, 1, opt_.inflection_tol);
    Sample s{values(d.tau), values(d.mu), Vec(dim), d.kappa[0]};
    for (int i = 0; i < dim; ++i) s.dmu[i] = d.mu[i][1];
    return s;
  };

  Sample cur = sample(grid[0]);
  std::vector<Vec> nu;
  if (opt_.nu0.empty()) {
    for (int e = 0; e < dim && static_cast<int>(nu.size()) < nnu; ++e) {
      Vec v(dim, 0.0);
      v[e] = 1.0;
      std::vector<const Vec*> against{&cur.tau, &cur.mu};
      for (const Vec& w : nu) against.push_back(&w);
      for (const Vec* w : against) {
        const double c = dotv(v, *w);
        for (int i = 0; i < dim; ++i) v[i] -= c * (*w)[i];
      }
      const double n = normv(v);
      if (n < 1e-8) continue;
      for (double& x : v) x /= n;
      nu.push_back(v);
    }
  } else {
    nu = opt_.nu0;
    if (static_cast<int>(nu.size()) != nnu) throw DomainError("nu0 must hold p-1 vectors");
    std::vector<Vec> all{cur.tau, cur.mu};
    for (const Vec& v : nu) {
      if (static_cast<int>(v.size()) != dim) throw DomainError("nu0 vector has the wrong dimension");
      all.push_back(v);
    }
    if (gram_defect(all) > 1e-9) throw DomainError("nu0 is not orthonormal and orthogonal to tau and mu");
  }

  auto make_state = [&](double t, const Sample& s, const std::vector<Vec>& n, double drift) {
    FrameState st;
    st.t = t;
    st.tau = s.tau;
    st.mu = s.mu;
    st.nu = n;
    st.kappa = s.kappa;
    for (const Vec& v : n) st.ell.push_back(dotv(s.dmu, v));
    st.drift = drift;
    return st;
  };

  double drift = state_defect(make_state(grid[0], cur, nu, 0.0));
  trace_.states.reserve(grid.size());
  trace_.states.push_back(make_state(grid[0], cur, nu, drift));
  for (std::size_t k = 0; k + 1 < grid.size(); ++k) {
    const double t = grid[k], h = grid[k + 1] - grid[k];
    const Sample mid = sample(t + 0.5 * h);
    const Sample next = sample(grid[k + 1]);
    auto rhs = [](const Sample& s, const Vec& v) {
      const double l = dotv(s.dmu, v);
      Vec r(v.size());
      for (std::size_t i = 0; i < v.size(); ++i) r[i] = -l * s.mu[i];
      return r;
    };
    for (Vec& v : nu) {
      const Vec k1 = rhs(cur, v);
      Vec y(dim);
      for (int i = 0; i < dim; ++i) y[i] = v[i] + 0.5 * h * k1[i];
      const Vec k2 = rhs(mid, y);
      for (int i = 0; i < dim; ++i) y[i] = v[i] + 0.5 * h * k2[i];
      const Vec k3 = rhs(mid, y);
      for (int i = 0; i < dim; ++i) y[i] = v[i] + h * k3[i];
      const Vec k4 = rhs(next, y);
      for (int i = 0; i < dim; ++i) v[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    std::vector<Vec> all{next.tau, next.mu};
    all.insert(all.end(), nu.begin(), nu.end());
    drift = std::max(drift, gram_defect(all));
    nu = reorthonormalize(next.tau, next.mu, nu);
    FrameState st = make_state(grid[k + 1], next, nu, 0.0);
    drift = std::max(drift, state_defect(st));
    st.drift = drift;
    trace_.states.push_back(std::move(st));
    cur = next;
  }
  trace_.drift = drift;
}

FrameJets BishopFrame::jets(double t, int order) const {
  const Interval& d = curve_.domain();
  const double h = trace_.step();
  if (!d.contains(t, 1e-9 * std::max(1.0, d.length()))) throw DomainError("t outside the frame's domain");
  const int n = static_cast<int>(trace_.states.size());
  const int i = std::clamp(static_cast<int>(std::lround((t - d.lo) / h)), 0, n - 1);
  const FrameState& g = trace_.states[i];

  constexpr int kPropagationOrder = 10;
  const TangentData at_t = tangent_data(curve_, t, order + 1, opt_.inflection_tol);
  std::vector<Vec> nu;
  if (t == g.t) {
    nu = g.nu;
  } else {
    const TangentData at_g = tangent_data(curve_, g.t, kPropagationOrder + 1, opt_.inflection_tol);
    for (const Vec& v : g.nu) {
      const JetVector<double> nj = transport_jet(at_g.mu, v, kPropagationOrder);
      Vec x(v.size());
      for (std::size_t c = 0; c < v.size(); ++c) x[c] = nj[c].evaluate_offset(t - g.t);
      nu.push_back(x);
    }
    nu = reorthonormalize(values(at_t.tau), values(at_t.mu), nu);
  }

  FrameJets j;
  j.tau = truncated(at_t.tau, order);
  j.mu = truncated(at_t.mu, order);
  j.kappa = at_t.kappa.truncated(order);
  const JetVector<double> dmu = derivative(at_t.mu);
  for (const Vec& v : nu) {
    JetVector<double> nj = transport_jet(at_t.mu, v, order);
    j.ell.push_back(dot(dmu, nj));
    j.nu.push_back(std::move(nj));
  }
  return j;
}

// ---- cross-product frame ----------------------------------------------------

CrossNormalFrame::CrossNormalFrame(FrontalCurve curve, const FrameOptions& opt)
    : NormalFrame(std::move(curve)), opt_(opt) {
  if (curve_.p() != 2) throw DomainError("the cross-product frame needs a curve in R^3");
  if (const auto& h = curve_.polynomial_direction()) {
    std::vector<UPoly> dh;
    for (const auto& q : *h) dh.push_back(q.derivative());
    std::vector<UPoly> w = {(*h)[1] * dh[2] - (*h)[2] * dh[1], (*h)[2] * dh[0] - (*h)[0] * dh[2],
                            (*h)[0] * dh[1] - (*h)[1] * dh[0]};
    UPoly g;
    for (const auto& q : w) g = UPoly::gcd(g, q);
    if (g.is_zero()) throw InflectionError(curve_.domain().lo, "straight line: every point is an inflection");
    for (auto& q : w) q = UPoly::divmod(q, g).first;
    reduced_ = std::move(w);
  }
  const std::vector<double> grid = frame_grid(curve_.domain(), opt_);
  double drift = 0.0;
  trace_.states.reserve(grid.size());
  for (double t : grid) {
    FrameState s = state(t);
    drift = std::max(drift, s.drift);
    s.drift = drift;
    trace_.states.push_back(std::move(s));
  }
  trace_.drift = drift;
}

FrameJets CrossNormalFrame::jets(double t, int order) const {
  const JetVector<double> h = curve_.direction_jet(t, order + 2);
  const JetVector<double> tau = normalized(h);
  const JetVector<double> dtau = derivative(tau);
  JetVector<double> nu;
  if (reduced_) {
    JetVector<double> w;
    for (const auto& q : *reduced_) w.push_back(q.jet(t, order + 1));
    nu = normalized(w);
  } else {
    const JetVector<double> w = cross(truncated(h, order + 1), derivative(h));
    const double hh = dot(h, h)[0];
    double ww = 0.0;
    for (const auto& c : w) ww += c[0] * c[0];
    // |h x h'| = |h|^2 |tau'|.
    if (std::sqrt(ww) < opt_.inflection_tol * hh) inflection(t, std::sqrt(ww) / hh);
    nu = normalized(w);
  }
  const JetVector<double> mu = cross(nu, truncated(tau, order + 1));
  FrameJets j;
  j.tau = truncated(tau, order);
  j.mu = truncated(mu, order);
  j.kappa = dot(dtau, mu).truncated(order);
  j.ell.push_back(dot(derivative(mu), truncated(nu, order)));
  j.nu.push_back(truncated(nu, order));
  return j;
}

std::shared_ptr<const NormalFrame> make_normal_frame(const FrontalCurve& curve, const FrameOptions& opt) {
  if (curve.p() == 2) return std::make_shared<CrossNormalFrame>(curve, opt);
  return std::make_shared<BishopFrame>(curve, opt);
}

// ---- checks and export ------------------------------------------------------

StructureResiduals structure_residuals(const FrameTrace& trace) {
  StructureResiduals r;
  r.drift = trace.drift;
  const auto& s = trace.states;
  const int n = static_cast<int>(s.size());
  if (n < 5) return r;
  const double h = trace.step();
  auto stencil = [&](int i, auto get) {
    const Vec a = get(s[i - 2]), b = get(s[i - 1]), c = get(s[i + 1]), d = get(s[i + 2]);
    Vec out(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) out[k] = (a[k] - 8.0 * b[k] + 8.0 * c[k] - d[k]) / (12.0 * h);
    return out;
  };
  const int dim = static_cast<int>(s[0].tau.size());
  const int nnu = static_cast<int>(s[0].nu.size());
  for (int i = 2; i < n - 2; ++i) {
    const FrameState& x = s[i];
    std::vector<Vec> e{x.tau, x.mu}, de;
    de.push_back(stencil(i, [](const FrameState& q) { return q.tau; }));
    de.push_back(stencil(i, [](const FrameState& q) { return q.mu; }));
    for (int a = 0; a < nnu; ++a) {
      e.push_back(x.nu[a]);
      de.push_back(stencil(i, [a](const FrameState& q) { return q.nu[a]; }));
    }
    Vec rt(dim), rm(dim);
    for (int k = 0; k < dim; ++k) {
      rt[k] = de[0][k] - x.kappa * x.mu[k];
      rm[k] = de[1][k] + x.kappa * x.tau[k];
      for (int a = 0; a < nnu; ++a) rm[k] -= x.ell[a] * x.nu[a][k];
    }
    r.tau = std::max(r.tau, normv(rt));
    r.mu = std::max(r.mu, normv(rm));
    for (int a = 0; a < nnu; ++a) {
      Vec rn(dim);
      for (int k = 0; k < dim; ++k) rn[k] = de[2 + a][k] + x.ell[a] * x.mu[k];
      r.nu = std::max(r.nu, normv(rn));
    }
    for (std::size_t a = 0; a < e.size(); ++a)
      for (std::size_t b = a; b < e.size(); ++b)
        r.antisymmetry = std::max(r.antisymmetry, std::abs(dotv(de[a], e[b]) + dotv(de[b], e[a])));
  }
  return r;
}

void write_trace_csv(std::ostream& os, const FrameTrace& trace) {
  if (trace.states.empty()) return;
  const int dim = static_cast<int>(trace.states[0].tau.size());
  const int nnu = static_cast<int>(trace.states[0].nu.size());
  os << "t,kappa";
  for (int a = 1; a <= nnu; ++a) os << ",ell_" << a;
  for (int k = 1; k <= dim; ++k) os << ",tau_" << k;
  for (int k = 1; k <= dim; ++k) os << ",mu_" << k;
  for (int a = 1; a <= nnu; ++a)
    for (int k = 1; k <= dim; ++k) os << ",nu_" << a << "_" << k;
  os << ",drift\n";
  for (const FrameState& s : trace.states) {
    os << format_double(s.t) << ',' << format_double(s.kappa);
    for (double l : s.ell) os << ',' << format_double(l);
    for (double x : s.tau) os << ',' << format_double(x);
    for (double x : s.mu) os << ',' << format_double(x);
    for (const Vec& v : s.nu)
      for (double x : v) os << ',' << format_double(x);
    os << ',' << format_double(s.drift) << '\n';
  }
}

}  // namespace tandev
