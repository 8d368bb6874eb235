#include "penrose/conformal_flow.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>

#include "penrose/errors.hpp"
#include "penrose/numerics.hpp"

namespace penrose {

namespace {

using boost::math::quadrature::gauss_kronrod;

constexpr double kMismatch = 1e-6;
constexpr int kMaxHalvings = 24;

std::shared_ptr<const ConformalBase> prepare(const InitialDataSet& data) {
  validate(data);
  if (!data.time_symmetric()) fail(ErrorKind::precondition, "conformal flow needs time-symmetric data");
  if (data.hyperbolic()) fail(ErrorKind::precondition, "conformal flow needs asymptotically flat data");
  auto b = std::make_shared<ConformalBase>();
  b->data = data;
  b->d = data.dimension();
  const int d = b->d;
  b->s = data.rho.grid();
  const auto& g = b->s;
  const std::size_t N = g.size();
  b->area.resize(N);
  b->H.resize(N);
  std::vector<LevelSet> ls(N);
  for (std::size_t i = 0; i < N; ++i) {
    ls[i] = level_set(data, g[i]);
    b->area[i] = ls[i].area;
    b->H[i] = ls[i].H;
  }
  const double scale = 1.0 / std::max(ls[0].areal.v, 1e-300);
  if (std::abs(b->H[0]) > 1e-8 * scale)
    fail(ErrorKind::precondition, "conformal flow needs a minimal boundary (H(0) = 0)");
  for (std::size_t i = 1; i < N; ++i)
    if (!(b->H[i] > 0.0)) fail(ErrorKind::precondition, "boundary is not outer-minimizing: H <= 0 at s = " + std::to_string(g[i]));

  // Q from the outside in; past S the orbits are round to leading order.
  const LevelSet& end = ls.back();
  std::vector<double> q(N), q1(N), q2(N);
  q[N - 1] = 1.0 / ((d - 2) * sphere_volume(d - 1) * std::pow(end.areal.v, d - 2) * end.areal.d1);
  auto inv_area = [&](double s) { return 1.0 / level_set(data, s).area; };
  for (std::size_t i = N - 1; i-- > 0;)
    q[i] = q[i + 1] + gauss_kronrod<double, 15>::integrate(inv_area, g[i], g[i + 1], 0);
  for (std::size_t i = 0; i < N; ++i) {
    q1[i] = -1.0 / b->area[i];
    q2[i] = b->H[i] / b->area[i];
  }

  // lim Q R^{d-2}: least squares of Q R^{d-2} = c + e / R^{d-2} over the last decade.
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < N; ++i)
    if (g[i] >= 0.1 * g.back()) idx.push_back(i);
  Eigen::MatrixXd A(idx.size(), 2);
  Eigen::VectorXd y(idx.size());
  for (std::size_t k = 0; k < idx.size(); ++k) {
    const double Rp = std::pow(ls[idx[k]].areal.v, d - 2);
    A(k, 0) = 1.0;
    A(k, 1) = 1.0 / Rp;
    y(k) = q[idx[k]] * Rp;
  }
  b->tail = A.colPivHouseholderQr().solve(y)(0);
  b->Q = RadialProfile::sampled(g, std::move(q), std::move(q1), std::move(q2));
  b->mass = adm_energy(data);
  return b;
}

double exponent_area(int d) { return 2.0 * (d - 1) / (d - 2); }

// g_t mean curvature of Sigma_s times u^{d/(d-2)}: H u + 2(d-1)/(d-2) u'.
double horizon_function(const ConformalBase& b, double a, double beta, double s) {
  const LevelSet ls = level_set(b.data, s);
  const Jet Q = b.Q.jet(s);
  return ls.H * (a + beta * Q.v) + exponent_area(b.d) * beta * Q.d1;
}

double horizon_function_node(const ConformalBase& b, double a, double beta, std::size_t i) {
  const double Q = b.Q(b.s[i]);
  return b.H[i] * (a + beta * Q) - exponent_area(b.d) * beta / b.area[i];
}

// Outermost zero of the horizon function at or beyond `floor`.
double locate(const ConformalBase& b, double a, double beta, double floor) {
  const auto& g = b.s;
  const std::size_t N = g.size();
  if (!(horizon_function_node(b, a, beta, N - 1) > 0.0))
    fail(ErrorKind::flow, "horizon left the computational domain");
  std::size_t i = N - 1;
  while (i > 0 && g[i - 1] > floor && horizon_function_node(b, a, beta, i - 1) > 0.0) --i;
  // g[i] is the innermost node above floor with F > 0 all the way out.
  double lo = (i > 0 && g[i - 1] > floor) ? g[i - 1] : floor;
  const double hi = g[i];
  if (lo >= hi) return floor;
  const double f_lo = horizon_function(b, a, beta, lo);
  if (f_lo >= 0.0) return lo == floor ? floor : lo;
  const double f_hi = horizon_function(b, a, beta, hi);
  if (!(f_hi > 0.0)) fail(ErrorKind::flow, "mean curvature zero could not be bracketed");
  std::uintmax_t iters = 200;
  auto r = boost::math::tools::toms748_solve([&](double s) { return horizon_function(b, a, beta, s); },
                                             lo, hi, f_lo, f_hi,
                                             boost::math::tools::eps_tolerance<double>(50), iters);
  return 0.5 * (r.first + r.second);
}

void finish(ConformalState& st) {
  const ConformalBase& b = *st.base;
  const double a = std::exp(-st.t);
  const double u = a + st.beta * b.Q(st.s_t);
  st.area = std::pow(u, exponent_area(b.d)) * level_set(b.data, st.s_t).area;
  st.mass_estimate = a * a * b.mass + 2.0 * a * st.beta * b.tail;
}

double increment(double t, double h, double Q) { return std::exp(-t) * -std::expm1(-h) / Q; }

// One accepted substep from (t, beta, sigma); appends to history.
void advance(ConformalState& st, double h, int depth) {
  const ConformalBase& b = *st.base;
  const double Q0 = b.Q(0.0);
  const double t = st.t;
  const double full = st.beta + increment(t, h, b.Q(st.s_t));
  const double mid = st.beta + increment(t, 0.5 * h, b.Q(st.s_t));
  const double s_mid = locate(b, std::exp(-(t + 0.5 * h)), mid, st.s_t);
  const double half = mid + increment(t + 0.5 * h, 0.5 * h, b.Q(s_mid));
  if (std::abs(half - full) * Q0 > kMismatch) {
    if (depth >= kMaxHalvings) fail(ErrorKind::stiffness, "conformal step underflow");
    advance(st, 0.5 * h, depth + 1);
    advance(st, 0.5 * h, depth + 1);
    return;
  }
  st.beta = 2.0 * half - full;
  st.t = t + h;
  st.s_t = locate(b, std::exp(-st.t), st.beta, s_mid);
  st.history.push_back({st.s_t, std::exp(-st.t), st.beta});
}

}  // namespace

double ConformalState::u(double s) const {
  const ConformalBase& b = *base;
  if (s >= s_t) return std::exp(-t) + beta * b.Q(s);
  // Frozen region: interpolate (a, beta) at the time the horizon passed s.
  auto it = std::upper_bound(history.begin(), history.end(), s,
                             [](double x, const std::array<double, 3>& h) { return x < h[0]; });
  if (it == history.begin()) return (*it)[1] + (*it)[2] * b.Q(s);
  const auto& p = *(it - 1);
  const auto& q = *it;
  const double w = q[0] > p[0] ? (s - p[0]) / (q[0] - p[0]) : 1.0;
  const double a = p[1] + w * (q[1] - p[1]);
  const double be = p[2] + w * (q[2] - p[2]);
  return a + be * b.Q(s);
}

namespace {

std::vector<double> nodes_with(const std::vector<double>& g, double x) {
  std::vector<double> out;
  out.reserve(g.size() + 1);
  const double gap = 1e-9 * (1.0 + x);
  bool placed = false;
  for (double s : g) {
    if (!placed && s >= x - gap) {
      out.push_back(x);
      placed = true;
      if (std::abs(s - x) <= gap) continue;
    }
    out.push_back(s);
  }
  if (!placed) out.back() = x;
  return out;
}

}  // namespace

RadialProfile ConformalState::factor() const {
  const ConformalBase& b = *base;
  const auto g = nodes_with(b.s, s_t);
  std::vector<double> v(g.size()), d1(g.size()), d2(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double s = g[i];
    const Jet Q = b.Q.jet(s);
    v[i] = u(s);
    // Inside, beta is the value at the crossing; u' = beta Q' there as well.
    double be = beta;
    double dbe = 0.0;
    if (s < s_t) {
      auto it = std::upper_bound(history.begin(), history.end(), s,
                                 [](double x, const std::array<double, 3>& h) { return x < h[0]; });
      if (it == history.begin()) {
        be = (*it)[2];
      } else {
        const auto& p = *(it - 1);
        const auto& q = *it;
        const double w = q[0] > p[0] ? (s - p[0]) / (q[0] - p[0]) : 1.0;
        be = p[2] + w * (q[2] - p[2]);
        dbe = q[0] > p[0] ? (q[2] - p[2]) / (q[0] - p[0]) : 0.0;
      }
    }
    d1[i] = be * Q.d1;
    d2[i] = be * Q.d2 + dbe * Q.d1;
  }
  return RadialProfile::sampled(g, std::move(v), std::move(d1), std::move(d2));
}

ConformalState initial_state(const InitialDataSet& base) {
  ConformalState st;
  st.base = prepare(base);
  st.t = 0.0;
  st.beta = 0.0;
  st.s_t = 0.0;
  st.history.push_back({0.0, 1.0, 0.0});
  finish(st);
  return st;
}

RadialProfile harmonic_radial(const ConformalState& st) {
  const ConformalBase& b = *st.base;
  const auto g = nodes_with(b.s, st.s_t);
  const double Qt = b.Q(st.s_t);
  const double c = std::exp(-st.t) / Qt;
  std::vector<double> v(g.size(), 0.0), d1(g.size(), 0.0), d2(g.size(), 0.0);
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g[i] < st.s_t) continue;
    const Jet Q = b.Q.jet(g[i]);
    v[i] = -c * (Qt - Q.v);
    d1[i] = c * Q.d1;
    d2[i] = c * Q.d2;
  }
  return RadialProfile::sampled(g, std::move(v), std::move(d1), std::move(d2));
}

double harmonicity_residual(const ConformalState& st) {
  const ConformalBase& b = *st.base;
  const double Qt = b.Q(st.s_t);
  const double c = std::exp(-st.t) / Qt;
  auto v = [&](double s) { return -c * (Qt - b.Q(s)); };
  const double S = b.s.back();
  double worst = 0.0;
  for (std::size_t i = 0; i < b.s.size(); ++i) {
    const double s = b.s[i];
    const double h = 1e-3 * (1.0 + s);
    if (s - 2 * h <= st.s_t || s + 2 * h >= S) continue;
    const double f[5] = {v(s - 2 * h), v(s - h), v(s), v(s + h), v(s + 2 * h)};
    const double d1 = (f[0] - 8 * f[1] + 8 * f[3] - f[4]) / (12 * h);
    const double d2 = (-f[0] + 16 * f[1] - 30 * f[2] + 16 * f[3] - f[4]) / (12 * h * h);
    worst = std::max(worst, std::abs(d2 + b.H[i] * d1));
  }
  return worst;
}

ConformalState conformal_step(const ConformalState& state, double dt) {
  if (!(dt >= 0.0) || dt > 1e-2 * (1 + 1e-12)) fail(ErrorKind::domain, "conformal step needs 0 <= dt <= 1e-2");
  ConformalState st = state;
  if (dt == 0.0) return st;
  advance(st, dt, 0);
  finish(st);
  return st;
}

ConformalRun run_conformal(const InitialDataSet& base, double t_stop, double dt, double target,
                           bool stop_at_target) {
  if (!(t_stop >= 0.0)) fail(ErrorKind::domain, "t_stop must be nonnegative");
  ConformalRun run;
  run.states.push_back(initial_state(base));
  auto reached = [&](const ConformalState& s) { return target >= 0.0 && s.s_t >= target; };
  if (reached(run.states.back())) {
    run.t_reach = 0.0;
    if (stop_at_target) return run;
  }
  const auto steps = static_cast<std::size_t>(std::ceil(t_stop / dt - 1e-9));
  for (std::size_t k = 0; k < steps; ++k) {
    const double h = std::min(dt, t_stop - run.states.back().t);
    if (h <= 0.0) break;
    run.states.push_back(conformal_step(run.states.back(), h));
    if (run.t_reach < 0.0 && reached(run.states.back())) {
      run.t_reach = run.states.back().t;
      if (stop_at_target) break;
    }
  }
  return run;
}

InitialDataSet conformal_data(const ConformalState& st) {
  const ConformalBase& b = *st.base;
  const InitialDataSet& data = b.data;
  const int d = b.d;
  const double p = 2.0 / (d - 2);
  std::vector<double> g;
  g.push_back(st.s_t);
  for (double s : b.s)
    if (s > st.s_t + 1e-9 * (1.0 + st.s_t)) g.push_back(s);
  if (g.size() < 256) fail(ErrorKind::flow, "too few grid nodes beyond the conformal horizon");
  const double a = std::exp(-st.t);
  auto uj = [&](double s) {
    const Jet Q = b.Q.jet(s);
    return Jet{a + st.beta * Q.v, st.beta * Q.d1, st.beta * Q.d2};
  };
  auto w = [&](double s) { return std::pow(uj(s).v, p); };

  const std::size_t N = g.size();
  std::vector<double> sn(N, 0.0);
  for (std::size_t i = 1; i < N; ++i)
    sn[i] = sn[i - 1] + gauss_kronrod<double, 15>::integrate(w, g[i - 1], g[i], 0);

  std::vector<double> r(N), r1(N), r2(N);
  std::vector<std::vector<double>> c(data.shape.size(), std::vector<double>(N)),
      c1 = c, c2 = c;
  for (std::size_t i = 0; i < N; ++i) {
    const double s = g[i];
    const Jet u = uj(s);
    const double wi = std::pow(u.v, p);
    const double lu = u.d1 / u.v;
    const Jet rho = data.rho.jet(s);
    r[i] = wi * rho.v;
    r1[i] = rho.d1 + p * rho.v * lu;
    r2[i] = (rho.d2 + p * rho.d1 * lu + p * rho.v * (u.d2 / u.v - lu * lu)) / wi;
    for (std::size_t k = 0; k < data.shape.size(); ++k) {
      const Jet ck = data.shape[k].jet(s);
      c[k][i] = ck.v;
      c1[k][i] = ck.d1 / wi;
      c2[k][i] = (ck.d2 - p * ck.d1 * lu) / (wi * wi);
    }
  }
  std::vector<RadialProfile> shapes;
  for (std::size_t k = 0; k < data.shape.size(); ++k)
    shapes.push_back(RadialProfile::sampled(sn, c[k], c1[k], c2[k]));
  return make_time_symmetric(data.n, data.kind, data.asymptotic, RadialProfile::sampled(sn, r, r1, r2),
                             std::move(shapes));
}

double defect_threshold(const InitialDataSet& data) {
  const auto g = data.rho.grid();
  double s0 = 0.0;
  for (std::size_t i = g.size(); i-- > 0;) {
    if (monotonicity_bracket(data.orbit(g[i])) < -1e-12) {
      s0 = i + 1 < g.size() ? g[i + 1] : g[i];
      break;
    }
  }
  return s0;
}

}  // namespace penrose
