#include "penrose/penrose_verifier.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "penrose/conformal_flow.hpp"
#include "penrose/errors.hpp"
#include "penrose/imcf_hawking.hpp"

namespace penrose {

namespace {

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// Runs f, prefixing any error message with the stage name.
template <class F>
auto stage(const char* name, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    throw Error(e.kind(), std::string(name) + ": " + e.what());
  }
}

PenroseReport base_report(const InitialDataSet& data, const char* pipeline) {
  PenroseReport r;
  r.pipeline = pipeline;
  r.n = data.n;
  r.d = data.dimension();
  r.area = horizon_area(data);
  r.bound = penrose_bound(r.area, r.d, data.hyperbolic());
  return r;
}

void add_trace_notes(PenroseReport& r, const FlowTrace& tr) {
  r.notes.emplace_back("flow_start_mass", num(tr.records.front().mH));
  r.notes.emplace_back("area_law_error", num(tr.max_area_law_error));
  r.notes.emplace_back("min_mass_increment", num(tr.min_increment));
}

// Radial outermost check: both expansions positive beyond the boundary.
void require_outermost(const InitialDataSet& data) {
  const auto g = data.rho.grid();
  for (std::size_t i = 1; i < g.size(); ++i) {
    const auto [tp, tm] = null_expansions(data, g[i]);
    if (tp < -1e-9 || tm < -1e-9)
      fail(ErrorKind::precondition, "horizon is not outermost: trapped level set at s = " + num(g[i]));
  }
}

}  // namespace

std::string PenroseReport::note(const std::string& key) const {
  for (const auto& [k, v] : notes)
    if (k == key) return v;
  return {};
}

PenroseReport verify_spacetime(const InitialDataSet& data, const VerifyOptions& opt) {
  validate(data);
  if (data.kind != OrbitKind::berger && data.kind != OrbitKind::su2)
    fail(ErrorKind::precondition, "spacetime pipeline needs SU(n+1) or SU(2) orbits");
  require_outermost(data);
  PenroseReport r = base_report(data, "jang-imcf");
  r.dec_margin = dec_margin(data);
  if (r.dec_margin < -1e-7)
    fail(ErrorKind::precondition, "dominant energy condition fails (margin " + num(r.dec_margin) + ")");

  if (!data.hyperbolic()) {
    const DecayExponents p = momentum_decay_exponents(data);
    r.notes.emplace_back("momentum_exponent_k_a", num(p.p_a));
    r.notes.emplace_back("momentum_exponent_cross", num(p.p_s));
    r.notes.emplace_back("linear_momentum_vanishes", momentum_vanishes(data, p) ? "yes" : "no");
    // Weaker test: the momentum flux k |Sigma| itself decays.
    const double flux = -(r.d - 1.0);
    r.notes.emplace_back("momentum_flux_decays", p.p_a < flux && p.p_s < flux ? "yes" : "no");
  }

  const JangBC bc = opt.bc ? *opt.bc : stage("boundary rule", [&] { return boundary_rule(data); });
  const JangSolution sol = stage("jang", [&] { return solve_jang(data, bc, opt.jang); });
  const InitialDataSet jm = stage("jang metric", [&] { return jang_metric(data, sol); });
  const FlowTrace tr = stage("imcf", [&] { return flow_trace(jm); });
  r.energy = stage("energy limit", [&] { return energy_limit(tr); });
  r.margin = r.energy - r.bound;
  r.rigidity_gap = rigidity_gap(tr);
  r.decay_exponent = sol.decay;
  r.notes.emplace_back("bc", to_string(bc));
  r.notes.emplace_back("clamps", std::to_string(sol.clamps));
  r.notes.emplace_back("boundary_flux", num(boundary_flux(data, sol, 0.0)));
  add_trace_notes(r, tr);
  return r;
}

PenroseReport verify_riemannian(const InitialDataSet& data, const VerifyOptions& opt) {
  validate(data);
  if (!data.time_symmetric()) fail(ErrorKind::precondition, "Riemannian pipeline needs k = 0");
  // R >= 0, or R >= -d(d-1) for hyperbolic data.
  const int d = data.dimension();
  const double floor = data.hyperbolic() ? -double(d) * (d - 1) : 0.0;
  double R_min = INFINITY;
  for (double s : data.rho.grid()) R_min = std::min(R_min, scalar_curvature(data, s));
  if (R_min - floor < -1e-7 * std::max(1.0, -floor))
    fail(ErrorKind::precondition, "scalar curvature below " + num(floor) + " (min " + num(R_min) + ")");
  require_outermost(data);

  const bool su = data.kind == OrbitKind::berger || data.kind == OrbitKind::su2;
  PenroseReport r = base_report(data, su ? "imcf-only" : "conformal-then-imcf");
  r.dec_margin = dec_margin(data);
  r.decay_exponent = data.hyperbolic() ? INFINITY : -INFINITY;
  r.notes.emplace_back("min_scalar_curvature", num(R_min));

  if (su) {
    const FlowTrace tr = stage("imcf", [&] { return flow_trace(data); });
    r.energy = stage("energy limit", [&] { return energy_limit(tr); });
    r.rigidity_gap = rigidity_gap(tr);
    add_trace_notes(r, tr);
  } else {
    const double s0 = opt.conformal_target >= 0 ? opt.conformal_target : defect_threshold(data);
    r.notes.emplace_back("defect_threshold", num(s0));
    FlowTrace tr;
    if (s0 <= 0.0) {
      tr = stage("imcf", [&] { return flow_trace(data); });
      r.energy = stage("energy limit", [&] { return energy_limit(tr); });
      r.notes.emplace_back("conformal_time", num(0.0));
    } else {
      const ConformalRun run = stage("conformal", [&] {
        return run_conformal(data, opt.conformal_t_max, opt.conformal_dt, s0, true);
      });
      if (run.t_reach < 0.0) fail(ErrorKind::flow, "conformal: horizon did not reach the defect threshold");
      const ConformalState& last = run.states.back();
      const InitialDataSet cd = stage("conformal data", [&] { return conformal_data(last); });
      tr = stage("imcf", [&] { return flow_trace(cd); });
      const double m_t0 = stage("energy limit", [&] { return energy_limit(tr); });
      r.energy = last.base->mass;
      double drift = 0.0;
      for (const auto& st : run.states) drift = std::max(drift, std::abs(st.area / run.states.front().area - 1.0));
      r.notes.emplace_back("conformal_time", num(run.t_reach));
      r.notes.emplace_back("conformal_horizon", num(last.s_t));
      r.notes.emplace_back("conformal_mass", num(last.mass_estimate));
      r.notes.emplace_back("imcf_energy", num(m_t0));
      r.notes.emplace_back("conformal_area_drift", num(drift));
    }
    r.margin = r.energy - r.bound;
    r.rigidity_gap = rigidity_gap(tr);
    add_trace_notes(r, tr);
    return r;
  }
  r.margin = r.energy - r.bound;
  return r;
}

PenroseReport verify(const InitialDataSet& data, const VerifyOptions& opt) {
  return data.time_symmetric() && !opt.bc ? verify_riemannian(data, opt) : verify_spacetime(data, opt);
}

std::string to_key_value(const PenroseReport& r) {
  std::ostringstream o;
  o << "pipeline = " << r.pipeline << '\n'
    << "n = " << r.n << '\n'
    << "d = " << r.d << '\n'
    << "energy = " << num(r.energy) << '\n'
    << "area = " << num(r.area) << '\n'
    << "bound = " << num(r.bound) << '\n'
    << "margin = " << num(r.margin) << '\n'
    << "rigidity_gap = " << num(r.rigidity_gap) << '\n'
    << "dec_margin = " << num(r.dec_margin) << '\n'
    << "decay_exponent = " << num(r.decay_exponent) << '\n'
    << "notes =";
  for (const auto& [k, v] : r.notes) o << ' ' << k << '=' << v;
  o << '\n';
  return o.str();
}

std::vector<CrosscheckEntry> closed_form_crosscheck(const BlackHoleFamily& family) {
  validate(family);
  const int n = family_n(family);
  const double m = family_mass(family);
  const double a = family_spin(family);
  const bool hyp = family_hyperbolic(family);
  const int d = 2 * n + 2;
  const InitialDataSet data = build_family(family);
  const double rp = horizon_radius(family);

  std::vector<CrosscheckEntry> out;
  auto add = [&](const char* q, double numeric, double closed) {
    const double rel = closed != 0.0 ? std::abs(numeric / closed - 1.0) : std::abs(numeric);
    out.push_back({q, numeric, closed, rel});
  };

  // Mass parameter recovered from the numeric horizon radius.
  double m_of_r = 0;
  const double r2 = rp * rp;
  if (std::holds_alternative<Schwarzschild>(family)) {
    m_of_r = 0.5 * std::pow(rp, 2 * n);
    add("r_plus", rp, closed_form::schwarzschild_radius(n, m));
  } else if (std::holds_alternative<MyersPerry>(family)) {
    m_of_r = std::pow(rp, 2 * n + 2) / (2.0 * (r2 - a * a));
    if (n == 1) add("r_plus", rp, std::sqrt(m + std::sqrt(m * m - 2.0 * m * a * a)));
  } else if (std::holds_alternative<SchwarzschildAdS>(family)) {
    m_of_r = closed_form::schwarzschild_ads_mass(n, rp);
  } else {
    m_of_r = closed_form::myers_perry_ads_mass(n, rp, a);
  }
  add("mass_from_horizon", m_of_r, m);

  const double A = horizon_area(data);
  add("area", A, closed_form::horizon_area(n, m, a, rp));
  const double E = adm_energy(data);
  add("energy", E, closed_form::energy(family));
  if (data.kind == OrbitKind::berger && a > 0.0) {
    add("angular_momentum", angular_momentum(data), closed_form::angular_momentum(family));
    double r_closed = rp;
    if (std::holds_alternative<MyersPerry>(family) && n == 1)
      r_closed = std::sqrt(m + std::sqrt(m * m - 2.0 * m * a * a));
    add("angular_velocity", closed_form::angular_velocity(n, m, a, rp),
        closed_form::angular_velocity(n, m, a, r_closed));
  }
  if (!hyp) add("mass_to_bound", E / penrose_bound(A, d, false), closed_form::flat_mass_to_bound(n, a, rp));
  return out;
}

}  // namespace penrose
