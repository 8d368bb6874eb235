#include "penrose/jang_solver.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include <boost/numeric/odeint.hpp>

#include "penrose/errors.hpp"
#include "penrose/numerics.hpp"

namespace penrose {

namespace {

namespace odeint = boost::numeric::odeint;
using State = std::array<double, 2>;  // (v or w, sbar)
using Dopri = odeint::runge_kutta_dopri5<State>;

constexpr double kEdge = 1.0 - 1e-12;
constexpr int kMaxClamps = 10;

template <class... Ts>
struct overloaded : Ts... { using Ts::operator()...; };

struct Coeffs {
  double R, R1, R2, H, T, ka;
};

Coeffs coeffs(const InitialDataSet& data, double s) {
  const LevelSet ls = level_set(data, s);
  return {ls.areal.v, ls.areal.d1, ls.areal.d2, ls.H, trace_sigma_k(data, s).v, data.k_a(s)};
}

double checked_ratio(const Coeffs& c, double s) {
  if (!(c.R1 > 0.0))
    fail(ErrorKind::singularity, "R_A' vanishes at s = " + std::to_string(s) + " away from the boundary");
  return c.R2 / c.R1;
}

double v_rhs(const InitialDataSet& data, double s, double v) {
  const Coeffs c = coeffs(data, s);
  v = std::clamp(v, -kEdge, kEdge);
  return (c.T - c.H * v) / (1.0 - v * v) - v * checked_ratio(c, s) + c.ka;
}

// Drives a dense-output Dormand-Prince stepper over [t0, t1], reporting the
// state at every grid node in (t0, t1].
struct Marcher {
  const std::vector<double>& nodes;
  std::size_t next = 0;
  double atol, rtol;
  int clamps = 0;

  template <class Sys, class Clamp, class Emit>
  State run(Sys sys, State x, double t0, double t1, Clamp clamp, Emit emit) {
    auto st = odeint::make_dense_output(atol, rtol, Dopri());
    const double span = t1 - t0;
    st.initialize(x, t0, 1e-4 * span);
    try {
      while (t1 - st.current_time() > 1e-13 * (1.0 + std::abs(t1))) {
        if (st.current_time() + st.current_time_step() > t1)
          st.initialize(st.current_state(), st.current_time(), t1 - st.current_time());
        const auto [a, b] = st.do_step(sys);
        State y;
        while (next < nodes.size() && nodes[next] <= b) {
          st.calc_state(std::max(nodes[next], a), y);
          emit(next, nodes[next], y);
          ++next;
        }
        State cur = st.current_state();
        if (!std::isfinite(cur[0]) || !std::isfinite(cur[1]))
          fail(ErrorKind::blowup, "Jang state became non-finite at s = " + std::to_string(b));
        if (clamp(cur)) {
          if (++clamps > kMaxClamps)
            fail(ErrorKind::blowup, "|v| reached 1 in the interior near s = " + std::to_string(b));
          st.initialize(cur, b, st.current_time_step());
        }
        if (st.current_time_step() < 1e-14 * (1.0 + std::abs(b)))
          fail(ErrorKind::stiffness, "step size underflow at s = " + std::to_string(b));
      }
    } catch (const odeint::step_adjustment_error& e) {
      fail(ErrorKind::stiffness, std::string("step adjustment failed: ") + e.what());
    } catch (const odeint::no_progress_error& e) {
      fail(ErrorKind::stiffness, std::string("no progress: ") + e.what());
    }
    // Nodes coinciding with t1 up to roundoff.
    while (next < nodes.size() && nodes[next] <= t1 * (1.0 + 1e-14)) {
      emit(next, nodes[next], st.current_state());
      ++next;
    }
    return st.current_state();
  }
};

struct Raw {
  std::vector<double> v, sb;
  int clamps = 0;
  double dv0 = 0;  // v'(0)
};

bool clamp_v(State& x) {
  if (std::abs(x[0]) <= kEdge) return false;
  x[0] = std::copysign(kEdge, x[0]);
  return true;
}

// v from v(s0) = v0, sbar(s0) = sb0 with the regular v-equation.
void march_v(const InitialDataSet& data, const std::vector<double>& g, std::size_t first, double s0,
             double v0, double sb0, double atol, double rtol, Raw& raw) {
  Marcher m{g, first, atol, rtol};
  auto sys = [&](const State& x, State& dx, double s) {
    dx[0] = v_rhs(data, s, x[0]);
    const double v = std::clamp(x[0], -kEdge, kEdge);
    dx[1] = 1.0 / std::sqrt(1.0 - v * v);
  };
  m.run(sys, State{v0, sb0}, s0, g.back(), clamp_v,
        [&](std::size_t i, double, const State& y) { raw.v[i] = y[0]; raw.sb[i] = y[1]; });
  raw.clamps += m.clamps;
}

Raw solve_past(const InitialDataSet& data, const std::vector<double>& g, double atol, double rtol) {
  const Coeffs c0 = coeffs(data, 0.0);
  const LevelSet ls0 = level_set(data, 0.0);
  const Jet T0 = trace_sigma_k(data, 0.0);
  const double F0 = -0.5 * c0.H + c0.R2 / c0.R1 - c0.ka;  // F_- at v = 1
  const double dtheta = ls0.dH - T0.d1;
  const double disc = 4.0 * F0 * F0 + 8.0 * dtheta;
  if (disc < 0.0) fail(ErrorKind::precondition, "no real starting slope for the unit boundary condition");
  const double dv0 = (-2.0 * F0 - std::sqrt(disc)) / 4.0;
  if (!(dv0 < 0.0))
    fail(ErrorKind::singularity, "starting slope v'(0) = 0: the Jang reparametrization diverges");

  const double r0 = c0.R;
  const double h0 = 1e-6 * r0;
  const double s_switch = std::min(1e-2 * r0, 0.5 * g.back());
  Raw raw;
  raw.v.assign(g.size(), 0.0);
  raw.sb.assign(g.size(), 0.0);
  raw.dv0 = dv0;
  std::size_t i = 0;
  for (; i < g.size() && g[i] <= h0; ++i) {
    raw.v[i] = 1.0 + dv0 * g[i];
    raw.sb[i] = std::sqrt(2.0 * g[i] / -dv0);
  }
  const double v_start = 1.0 + dv0 * h0;
  const double w_start = v_start - 0.5 * v_start * v_start;
  const double sb_start = std::sqrt(2.0 * h0 / -dv0);

  // w = v - v^2/2 keeps the equation regular at v = 1.
  const double w_edge = kEdge - 0.5 * kEdge * kEdge;
  auto wsys = [&](const State& x, State& dx, double s) {
    const double root = std::sqrt(std::max(1.0 - 2.0 * std::min(x[0], w_edge), 0.0));
    const double v = 1.0 - root;
    const Coeffs c = coeffs(data, s);
    const double F = -c.H / (1.0 + v) + v * checked_ratio(c, s) - c.ka;
    dx[0] = -(c.H - c.T) / (1.0 + v) - F * root;
    dx[1] = 1.0 / std::sqrt(root * (1.0 + v));
  };
  auto clamp_w = [&](State& x) {
    if (x[0] <= w_edge) return false;
    x[0] = w_edge;
    return true;
  };
  Marcher m{g, i, atol, rtol};
  const State end = m.run(wsys, State{w_start, sb_start}, h0, s_switch, clamp_w,
                          [&](std::size_t k, double, const State& y) {
                            raw.v[k] = 1.0 - std::sqrt(std::max(1.0 - 2.0 * y[0], 0.0));
                            raw.sb[k] = y[1];
                          });
  raw.clamps += m.clamps;
  const double v_sw = 1.0 - std::sqrt(std::max(1.0 - 2.0 * end[0], 0.0));
  march_v(data, g, m.next, s_switch, v_sw, end[1], atol, rtol, raw);
  return raw;
}

InitialDataSet negate_k(const InitialDataSet& data) {
  InitialDataSet out = data;
  out.k_a = data.k_a.scaled(-1.0);
  for (auto& k : out.k_tan) k = k.scaled(-1.0);
  for (auto& k : out.k_cross) k = k.scaled(-1.0);
  return out;
}

Raw solve_degenerate(const InitialDataSet& data, const std::vector<double>& g, double atol, double rtol) {
  const double r0 = level_set(data, 0.0).areal.v;
  const double eps[3] = {1e-3 * r0, 1e-4 * r0, 1e-5 * r0};
  Raw sol[3];
  for (int k = 0; k < 3; ++k) {
    Raw& raw = sol[k];
    raw.v.assign(g.size(), 0.0);
    raw.sb.assign(g.size(), 0.0);
    std::size_t i = 0;
    for (; i < g.size() && g[i] <= eps[k]; ++i) raw.sb[i] = g[i];
    march_v(data, g, i, eps[k], 0.0, eps[k], atol, rtol, raw);
  }
  // The error of v_eps is O(eps^2); extrapolate with ratio 10.
  auto extrapolate = [](double coarse, double fine) { return fine + (fine - coarse) / 99.0; };
  Raw out;
  out.v.resize(g.size());
  out.sb.resize(g.size());
  out.clamps = sol[0].clamps + sol[1].clamps + sol[2].clamps;
  double gap = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double x1 = extrapolate(sol[0].v[i], sol[1].v[i]);
    const double x2 = extrapolate(sol[1].v[i], sol[2].v[i]);
    if (g[i] >= 1e-2 * r0) gap = std::max(gap, std::abs(x2 - x1));
    out.v[i] = x2;
    out.sb[i] = extrapolate(sol[1].sb[i], sol[2].sb[i]);
  }
  if (!(gap < 1e-8))
    fail(ErrorKind::numeric, "epsilon extrapolation did not settle (gap " + std::to_string(gap) + ")");
  const Coeffs c0 = coeffs(data, 0.0);
  out.dv0 = 0.5 * (c0.T + c0.ka);
  return out;
}

std::vector<double> derivative_column(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  std::vector<double> d(n);
  auto three = [&](std::size_t a, std::size_t b, std::size_t c, double at) {
    // Derivative at `at` of the parabola through three points.
    const double xa = x[a], xb = x[b], xc = x[c];
    return y[a] * (2 * at - xb - xc) / ((xa - xb) * (xa - xc)) +
           y[b] * (2 * at - xa - xc) / ((xb - xa) * (xb - xc)) +
           y[c] * (2 * at - xa - xb) / ((xc - xa) * (xc - xb));
  };
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t a = i == 0 ? 0 : (i + 1 == n ? n - 3 : i - 1);
    d[i] = three(a, a + 1, a + 2, x[i]);
  }
  return d;
}

}  // namespace

std::string to_string(const JangBC& bc) {
  return std::visit(overloaded{
                        [](const Interior& b) { return "interior(" + std::to_string(b.alpha) + ")"; },
                        [](const PastHorizonUnit&) { return std::string("past-unit"); },
                        [](const FutureHorizonUnit&) { return std::string("future-unit"); },
                        [](const DegenerateZero&) { return std::string("degenerate-zero"); },
                    },
                    bc);
}

JangBC boundary_rule(const InitialDataSet& data, double tol) {
  const double H = mean_curvature(data, 0.0);
  const auto [tp, tm] = null_expansions(data, 0.0);
  const double scale = tol * std::max(1.0, std::abs(trace_sigma_k(data, 0.0).v));
  if (std::abs(H) <= scale) return DegenerateZero{};
  if (std::abs(tm) <= scale) return PastHorizonUnit{};
  if (std::abs(tp) <= scale) return FutureHorizonUnit{};
  fail(ErrorKind::precondition, "boundary is not an apparent horizon (theta_+ = " + std::to_string(tp) +
                                    ", theta_- = " + std::to_string(tm) + ")");
}

double jang_rhs(const InitialDataSet& data, double s, double v, int branch) {
  if (!(std::abs(v) <= 1.0)) fail(ErrorKind::domain, "|v| must not exceed 1");
  const Coeffs c = coeffs(data, s);
  const double ratio = checked_ratio(c, s);
  const double one = 1.0 - v * v;
  if (branch < 0) {
    const double F = -c.H / (1.0 + v) + v * ratio - c.ka;
    return -F - (c.H - c.T) / one;
  }
  const double F = c.H / (1.0 - v) + v * ratio - c.ka;
  return -F + (c.H + c.T) / one;
}

JangSolution solve_jang(const InitialDataSet& data, const JangBC& bc, const JangOptions& opt) {
  const double shrink = std::pow(32.0, opt.refine);
  const double atol = opt.atol / shrink, rtol = opt.rtol / shrink;
  const std::vector<double> g = data.rho.grid();
  const double H0 = mean_curvature(data, 0.0);
  const auto [tp0, tm0] = null_expansions(data, 0.0);
  const double tol = 1e-9 * std::max(1.0, std::abs(trace_sigma_k(data, 0.0).v));

  Raw raw;
  double sign = 1.0;
  std::visit(overloaded{
                 [&](const Interior& b) {
                   if (!(std::abs(b.alpha) < 1.0)) fail(ErrorKind::domain, "interior alpha must lie in (-1, 1)");
                   if (std::abs(H0) <= tol)
                     fail(ErrorKind::precondition, "interior boundary values need H(0) != 0");
                   raw.v.assign(g.size(), 0.0);
                   raw.sb.assign(g.size(), 0.0);
                   raw.v[0] = b.alpha;
                   march_v(data, g, 1, 0.0, b.alpha, 0.0, atol, rtol, raw);
                   raw.dv0 = v_rhs(data, 0.0, b.alpha);
                 },
                 [&](const PastHorizonUnit&) {
                   if (std::abs(H0) <= tol || std::abs(tm0) > tol)
                     fail(ErrorKind::precondition, "v(0) = +1 needs theta_-(0) = 0 and H(0) != 0");
                   raw = solve_past(data, g, atol, rtol);
                 },
                 [&](const FutureHorizonUnit&) {
                   if (std::abs(H0) <= tol || std::abs(tp0) > tol)
                     fail(ErrorKind::precondition, "v(0) = -1 needs theta_+(0) = 0 and H(0) != 0");
                   raw = solve_past(negate_k(data), g, atol, rtol);
                   sign = -1.0;
                 },
                 [&](const DegenerateZero&) {
                   if (std::abs(H0) > tol) fail(ErrorKind::precondition, "v(0) = 0 needs H(0) = 0");
                   raw = solve_degenerate(data, g, atol, rtol);
                 },
             },
             bc);

  JangSolution sol;
  sol.bc = bc;
  sol.clamps = raw.clamps;
  sol.s = g;
  const std::size_t n = g.size();
  sol.vs.resize(n);
  sol.dv.resize(n);
  sol.ph.resize(n);
  sol.sb = raw.sb;
  for (std::size_t i = 0; i < n; ++i) {
    const double v = sign * raw.v[i];
    sol.vs[i] = v;
    sol.dv[i] = i == 0 ? sign * raw.dv0 : v_rhs(data, g[i], v);
    const double R1 = level_set(data, g[i]).areal.d1;
    sol.ph[i] = std::sqrt(std::max(1.0 - v * v, 0.0)) * R1;
    if (i > 0 && std::abs(v) >= 1.0)
      fail(ErrorKind::blowup, "|v| = 1 at interior node s = " + std::to_string(g[i]));
  }
  sol.v = RadialProfile::sampled(g, sol.vs, sol.dv, derivative_column(g, sol.dv));
  sol.sbar = RadialProfile::sampled(g, sol.sb);
  sol.phi = RadialProfile::sampled(g, sol.ph);

  // Tail fit over the outer half of the range where the solution is above the
  // integration noise floor.
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i)
    y[i] = std::abs(sol.vs[i]) + (data.hyperbolic() ? 1.0 : g[i]) * std::abs(sol.dv[i]);
  const double floor = 1e3 * opt.atol * std::pow(32.0, -opt.refine);
  double s_end = 0.0;
  for (std::size_t i = n; i-- > 1;)
    if (y[i] >= floor) {
      s_end = g[i];
      break;
    }
  std::vector<double> ts, ys;
  for (std::size_t i = 1; i < n && s_end > 0.0; ++i) {
    if (g[i] < 0.5 * s_end || g[i] > s_end || y[i] < floor) continue;
    ts.push_back(g[i]);
    ys.push_back(y[i]);
  }
  if (data.hyperbolic()) {
    const double slope = semilog_slope(ts, ys);
    sol.decay = slope == kNegInf ? std::numeric_limits<double>::infinity() : -slope;
  } else {
    sol.decay = loglog_slope(ts, ys);
  }
  return sol;
}

InitialDataSet jang_metric(const InitialDataSet& data, const JangSolution& sol) {
  const std::size_t n = sol.s.size();
  auto lift = [&](const RadialProfile& f) {
    std::vector<double> v(n), d1(n), d2(n);
    for (std::size_t i = 0; i < n; ++i) {
      const Jet j = f.jet(sol.s[i]);
      const double w = sol.vs[i], one = std::max(1.0 - w * w, 0.0);
      v[i] = j.v;
      d1[i] = std::sqrt(one) * j.d1;
      d2[i] = -w * sol.dv[i] * j.d1 + one * j.d2;
    }
    return RadialProfile::sampled(sol.sb, std::move(v), std::move(d1), std::move(d2));
  };
  InitialDataSet out;
  out.n = data.n;
  out.kind = data.kind;
  out.asymptotic = data.asymptotic;
  out.rho = lift(data.rho);
  for (const auto& f : data.shape) out.shape.push_back(f.is_zero() ? RadialProfile::zero(sol.sb.back()) : lift(f));
  out.k_a = RadialProfile::zero(sol.sb.back());
  validate(out);
  return out;
}

double boundary_flux(const InitialDataSet& data, const JangSolution& sol, double s) {
  const Coeffs c = coeffs(data, s);
  const double v = sol.v(s);
  return v * c.R1 * (c.T - v * c.H);
}

double boundary_flux_flat_form(const InitialDataSet& data, const JangSolution& sol, double s) {
  const Coeffs c = coeffs(data, s);
  const double v = sol.v(s);
  return v * c.R1 * ((1.0 - v) * c.H - (c.H - c.T));
}

}  // namespace penrose
