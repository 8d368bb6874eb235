#include "penrose/initial_data.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <boost/numeric/odeint.hpp>

#include "penrose/errors.hpp"

namespace penrose {

namespace {

struct Block {
  int mult;
  Jet sigma;  // log of the block scale relative to rho
};

Jet log_jet(const Jet& c) {
  const double l1 = c.d1 / c.v;
  return {std::log(c.v), l1, c.d2 / c.v - l1 * l1};
}

Jet scaled(const Jet& j, double a) { return {a * j.v, a * j.d1, a * j.d2}; }

std::vector<Block> blocks(const InitialDataSet& data, double s) {
  std::vector<Block> out;
  switch (data.kind) {
    case OrbitKind::berger: {
      const Jet b = data.shape[0].jet(s);
      out.push_back({1, scaled(b, -2.0 * data.n)});
      out.push_back({2 * data.n, b});
      break;
    }
    case OrbitKind::su2:
      for (const auto& c : data.shape) out.push_back({1, log_jet(c.jet(s))});
      break;
    case OrbitKind::sp:
      for (const auto& c : data.shape) out.push_back({1, scaled(log_jet(c.jet(s)), 0.5)});
      if (data.n > 0) out.push_back({4 * data.n, Jet{}});
      break;
    case OrbitKind::spin9:
      out.push_back({7, scaled(log_jet(data.shape[0].jet(s)), 0.5)});
      out.push_back({8, Jet{}});
      break;
  }
  return out;
}

double component(const std::vector<RadialProfile>& v, std::size_t i, double s) {
  return i < v.size() ? v[i](s) : 0.0;
}

Jet component_jet(const std::vector<RadialProfile>& v, std::size_t i, double s) {
  return i < v.size() ? v[i].jet(s) : Jet{};
}

std::size_t shape_count(OrbitKind kind) {
  switch (kind) {
    case OrbitKind::berger: return 1;
    case OrbitKind::su2: return 3;
    case OrbitKind::sp: return 3;
    case OrbitKind::spin9: return 1;
  }
  return 0;
}

}  // namespace

int InitialDataSet::dimension() const {
  switch (kind) {
    case OrbitKind::berger: return 2 * n + 2;
    case OrbitKind::su2: return 4;
    case OrbitKind::sp: return 4 * n + 4;
    case OrbitKind::spin9: return 16;
  }
  return 0;
}

bool InitialDataSet::time_symmetric() const {
  auto zero = [](const RadialProfile& p) { return p.is_zero(); };
  return k_a.is_zero() && std::all_of(k_tan.begin(), k_tan.end(), zero) &&
         std::all_of(k_cross.begin(), k_cross.end(), zero);
}

OrbitClass InitialDataSet::orbit(double s) const {
  switch (kind) {
    case OrbitKind::berger: return Berger{n, shape[0](s)};
    case OrbitKind::su2: return SU2{shape[0](s), shape[1](s), shape[2](s)};
    case OrbitKind::sp: return SpTriple{n, shape[0](s), shape[1](s), shape[2](s)};
    case OrbitKind::spin9: return Spin9{shape[0](s)};
  }
  fail(ErrorKind::domain, "unknown orbit kind");
}

std::vector<int> InitialDataSet::multiplicities() const {
  std::vector<int> m;
  for (const auto& b : blocks(*this, 0.0)) m.push_back(b.mult);
  return m;
}

void validate(const InitialDataSet& data) {
  if (data.n < (data.kind == OrbitKind::sp ? 0 : 1))
    fail(ErrorKind::domain, "group index n out of range");
  if (data.kind == OrbitKind::su2 && data.n != 1) fail(ErrorKind::domain, "SU(2) data requires n = 1");
  if (data.shape.size() != shape_count(data.kind))
    fail(ErrorKind::domain, "wrong number of shape profiles for the orbit kind");
  const int d = data.dimension();
  std::visit(
      [d](const auto& a) {
        using A = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<A, Flat>) {
          if (!(a.tau > 0.5 * (d - 2))) fail(ErrorKind::domain, "flat decay rate tau must exceed (d-2)/2");
        } else {
          if (!(a.q > 0.5 * d)) fail(ErrorKind::domain, "hyperbolic decay rate q must exceed d/2");
        }
      },
      data.asymptotic);
  const double S = data.s_max();
  auto same_domain = [S](const RadialProfile& p) {
    if (std::abs(p.s_max() - S) > 1e-9 * std::max(1.0, S))
      fail(ErrorKind::domain, "profiles must share the domain [0, S_max]");
  };
  for (const auto& p : data.shape) same_domain(p);
  same_domain(data.k_a);
  for (const auto& p : data.k_tan) same_domain(p);
  for (const auto& p : data.k_cross) same_domain(p);
  const auto mult = data.multiplicities();
  if (data.k_tan.size() > mult.size()) fail(ErrorKind::domain, "too many tangential k components");
  for (std::size_t i = 0; i < data.k_cross.size(); ++i)
    if (i >= mult.size() || mult[i] != 1)
      fail(ErrorKind::domain, "cross k components exist only on one-dimensional blocks");
  for (double s : data.rho.grid(512)) {
    if (s <= 0.0) continue;
    if (!(data.rho(s) > 0.0)) fail(ErrorKind::domain, "rho must be positive on (0, S_max]");
  }
  validate(data.orbit(S));
}

InitialDataSet make_berger(int n, AsymptoticClass asym, RadialProfile rho, RadialProfile B,
                           RadialProfile k_a, RadialProfile k_b, RadialProfile k_c,
                           RadialProfile k_s) {
  InitialDataSet d;
  d.n = n;
  d.kind = OrbitKind::berger;
  d.asymptotic = asym;
  d.rho = std::move(rho);
  d.shape = {std::move(B)};
  d.k_a = std::move(k_a);
  d.k_tan = {std::move(k_b), std::move(k_c)};
  d.k_cross = {std::move(k_s)};
  validate(d);
  return d;
}

InitialDataSet make_time_symmetric(int n, OrbitKind kind, AsymptoticClass asym,
                                   RadialProfile rho, std::vector<RadialProfile> shape) {
  InitialDataSet d;
  d.n = n;
  d.kind = kind;
  d.asymptotic = asym;
  d.k_a = RadialProfile::zero(rho.s_max());
  d.rho = std::move(rho);
  d.shape = std::move(shape);
  validate(d);
  return d;
}

InitialDataSet solve_scalar_flat(int n, OrbitKind kind, AsymptoticClass asym, double rho0,
                                 std::vector<RadialProfile> shape, std::size_t nodes) {
  namespace odeint = boost::numeric::odeint;
  using State = std::array<double, 2>;  // (rho, rho')
  if (!(rho0 > 0.0)) fail(ErrorKind::domain, "rho0 must be positive");
  const double S = shape.at(0).s_max();
  InitialDataSet probe;
  probe.n = n;
  probe.kind = kind;
  probe.asymptotic = asym;
  probe.shape = shape;
  const int d = probe.dimension();

  // R = R_S - 2H' - H^2 - |II|^2 = 0 solved for (log rho)''.
  auto accel = [&](double s, double r, double r1) {
    const double l1 = r1 / r;
    double S1 = 0, S2 = 0, II2 = 0;
    for (const auto& b : blocks(probe, s)) {
      S1 += b.mult * b.sigma.d1;
      S2 += b.mult * b.sigma.d2;
      II2 += b.mult * (l1 + b.sigma.d1) * (l1 + b.sigma.d1);
    }
    const double H = (d - 1) * l1 + S1;
    const double Rs = orbit_scalar_curvature(probe.orbit(s), r);
    const double l2 = (Rs - 2.0 * S2 - H * H - II2) / (2.0 * (d - 1));
    return r * (l2 + l1 * l1);
  };
  auto sys = [&](const State& x, State& dx, double s) {
    dx[0] = x[1];
    dx[1] = accel(s, x[0], x[1]);
  };

  // rho'(0) chosen so that H(0) = 0.
  double S1_0 = 0;
  for (const auto& b : blocks(probe, 0.0)) S1_0 += b.mult * b.sigma.d1;
  const double drho0 = -rho0 * S1_0 / (d - 1);

  std::vector<double> grid(nodes);
  const double top = std::log1p(S / rho0);
  for (std::size_t i = 0; i < nodes; ++i) grid[i] = rho0 * std::expm1(top * double(i) / double(nodes - 1));
  grid.back() = S;
  std::vector<double> v(nodes), d1(nodes), d2(nodes);
  State x{rho0, drho0};
  std::size_t i = 0;
  odeint::integrate_times(
      odeint::make_dense_output(1e-15 * rho0, 1e-14, odeint::runge_kutta_dopri5<State>()), sys, x,
      grid.begin(), grid.end(), 1e-3 * rho0, [&](const State& y, double s) {
        v[i] = y[0];
        d1[i] = y[1];
        d2[i] = accel(s, y[0], y[1]);
        ++i;
      });
  return make_time_symmetric(n, kind, asym, RadialProfile::sampled(grid, v, d1, d2), std::move(shape));
}

LevelSet level_set(const InitialDataSet& data, double s) {
  const Jet r = data.rho.jet(s);
  if (!(r.v > 0.0)) fail(ErrorKind::domain, "rho must be positive");
  const int d = data.dimension();
  const double l1 = r.d1 / r.v;
  const double l2 = r.d2 / r.v - l1 * l1;
  LevelSet ls;
  ls.rho = r.v;
  double sum1 = 0.0, sum2 = 0.0;
  for (const auto& b : blocks(data, s)) {
    const double kappa = l1 + b.sigma.d1;
    const double dkappa = l2 + b.sigma.d2;
    ls.kappa.push_back(kappa);
    ls.H += b.mult * kappa;
    ls.dH += b.mult * dkappa;
    ls.II2 += b.mult * kappa * kappa;
    sum1 += b.mult * b.sigma.v;
    sum2 += b.mult * b.sigma.d2;
  }
  const OrbitClass orbit = data.orbit(s);
  ls.R_sigma = orbit_scalar_curvature(orbit, r.v);
  ls.area = orbit_volume(orbit, r.v);
  const double L1 = ls.H / (d - 1);
  const double L2 = l2 + sum2 / (d - 1);
  const double RA = r.v * std::exp(sum1 / (d - 1));
  ls.areal = {RA, RA * L1, RA * (L2 + L1 * L1)};
  ls.R = ls.R_sigma - 2.0 * ls.dH - ls.H * ls.H - ls.II2;
  return ls;
}

double scalar_curvature(const InitialDataSet& data, double s) { return level_set(data, s).R; }
double mean_curvature(const InitialDataSet& data, double s) { return level_set(data, s).H; }

Jet trace_sigma_k(const InitialDataSet& data, double s) {
  const auto mult = data.multiplicities();
  Jet t;
  for (std::size_t i = 0; i < data.k_tan.size(); ++i) {
    const Jet k = data.k_tan[i].jet(s);
    t.v += mult[i] * k.v;
    t.d1 += mult[i] * k.d1;
    t.d2 += mult[i] * k.d2;
  }
  return t;
}

std::pair<double, double> null_expansions(const InitialDataSet& data, double s) {
  const double H = mean_curvature(data, s);
  const double tr = trace_sigma_k(data, s).v;
  return {H + tr, H - tr};
}

double MomentumDensity::norm() const { return std::hypot(J1, J2); }

MomentumDensity energy_momentum_density(const InitialDataSet& data, double s) {
  const LevelSet ls = level_set(data, s);
  const auto mult = data.multiplicities();
  const double ka = data.k_a(s);
  double tr = ka, k2 = ka * ka, radial = 0.0, tangential2 = 0.0;
  for (std::size_t i = 0; i < mult.size(); ++i) {
    const Jet kt = component_jet(data.k_tan, i, s);
    tr += mult[i] * kt.v;
    k2 += mult[i] * kt.v * kt.v;
    radial += -mult[i] * kt.d1 + mult[i] * ls.kappa[i] * (ka - kt.v);
  }
  for (std::size_t i = 0; i < data.k_cross.size(); ++i) {
    const Jet kx = data.k_cross[i].jet(s);
    k2 += 2.0 * kx.v * kx.v;
    const double j = kx.d1 + (ls.H + ls.kappa[i]) * kx.v;
    tangential2 += j * j;
  }
  const int d = data.dimension();
  const double lambda_term = data.hyperbolic() ? double(d) * (d - 1) : 0.0;
  MomentumDensity m;
  m.mu = (ls.R + tr * tr - k2 + lambda_term) / (16.0 * std::numbers::pi);
  m.J1 = radial / (8.0 * std::numbers::pi);
  m.J2 = std::sqrt(tangential2) / (8.0 * std::numbers::pi);
  return m;
}

double dec_margin(const InitialDataSet& data) {
  const auto g = data.rho.grid();
  double worst = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i + 1 < g.size(); ++i) {
    const auto m = energy_momentum_density(data, g[i]);
    worst = std::min(worst, m.mu - m.norm());
  }
  return worst;
}

double horizon_area(const InitialDataSet& data) { return level_set(data, 0.0).area; }

double radial_hawking_mass(double R, double dR, int d, bool hyperbolic) {
  const double base = 1.0 - dR * dR + (hyperbolic ? R * R : 0.0);
  return 0.5 * std::pow(R, d - 2) * base;
}

namespace {

// Samples of f along the grid tail, extrapolated in 1/R_A (flat) or e^{-2s}
// (hyperbolic). `capped` drops samples whose cancellation error in
// 1 - R'^2 (+ R^2) would exceed 1e-10 of the scale (1e-7 for the plateau).
double tail_limit(const InitialDataSet& data, double (*f)(const InitialDataSet&, const LevelSet&, double),
                  bool capped, const char* what) {
  const int d = data.dimension();
  const bool hyp = data.hyperbolic();
  const auto g = data.rho.grid();
  const double scale = std::max(1.0, std::abs(f(data, level_set(data, 0.0), 0.0)));
  std::vector<double> x, y, xw, yw;
  for (double s : g) {
    if (s <= 0.0) continue;
    const LevelSet ls = level_set(data, s);
    const double R = ls.areal.v;
    const double err = std::pow(R, hyp ? d : d - 2) * 2.2e-16;
    if (capped && err > 1e-7 * scale) continue;
    const double xs = hyp ? std::exp(-2.0 * s) : 1.0 / R;
    const double ys = f(data, ls, s);
    xw.push_back(xs);
    yw.push_back(ys);
    if (capped && err > 1e-10 * scale) continue;
    x.push_back(xs);
    y.push_back(ys);
  }
  return settled_limit(x, y, xw, yw, hyp ? 100.0 : 10.0, 1e-5 * scale, what);
}

double hawking_sample(const InitialDataSet& data, const LevelSet& ls, double) {
  return radial_hawking_mass(ls.areal.v, ls.areal.d1, data.dimension(), data.hyperbolic());
}

double angular_sample(const InitialDataSet& data, const LevelSet& ls, double s) {
  const int n = data.n;
  return data.k_cross[0](s) * std::pow(ls.rho, 2 * n + 2) * std::exp(-2.0 * n * data.shape[0](s)) /
         (2.0 * (n + 1));
}

}  // namespace

double adm_energy(const InitialDataSet& data) {
  return tail_limit(data, hawking_sample, true, "Hawking mass");
}

DecayExponents momentum_decay_exponents(const InitialDataSet& data) {
  if (data.hyperbolic()) fail(ErrorKind::precondition, "decay exponents are defined for flat data");
  const double S = data.s_max();
  std::vector<double> s;
  for (double x : data.rho.grid())
    if (x >= 0.5 * S) s.push_back(x);
  auto fit = [&](auto&& value) {
    std::vector<double> y;
    for (double x : s) y.push_back(value(x));
    return loglog_slope(s, y);
  };
  DecayExponents p;
  p.p_a = data.k_a.is_zero() ? kNegInf : fit([&](double x) { return data.k_a(x); });
  const bool cross_zero = std::all_of(data.k_cross.begin(), data.k_cross.end(),
                                      [](const RadialProfile& k) { return k.is_zero(); });
  p.p_s = cross_zero ? kNegInf : fit([&](double x) {
    double sq = 0.0;
    for (std::size_t i = 0; i < data.k_cross.size(); ++i) sq += std::pow(component(data.k_cross, i, x), 2);
    return std::sqrt(sq);
  });
  return p;
}

bool momentum_vanishes(const InitialDataSet& data, const DecayExponents& p) {
  const double tau = std::get<Flat>(data.asymptotic).tau;
  const double limit = -(2.0 * tau + 2.0) + 0.3;
  return p.p_a <= limit && p.p_s <= limit;
}

double angular_momentum(const InitialDataSet& data) {
  if (data.kind != OrbitKind::berger) fail(ErrorKind::precondition, "angular momentum needs Berger data");
  if (data.k_cross.empty() || data.k_cross[0].is_zero()) return 0.0;
  return tail_limit(data, angular_sample, false, "angular momentum");
}

}  // namespace penrose
