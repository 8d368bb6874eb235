#include "penrose/imcf_hawking.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "penrose/errors.hpp"
#include "penrose/numerics.hpp"

namespace penrose {

double penrose_bound(double area, int d, bool hyperbolic) {
  const double x = area / sphere_volume(d - 1);
  const double flat = 0.5 * std::pow(x, double(d - 2) / (d - 1));
  return hyperbolic ? flat + 0.5 * std::pow(x, double(d) / (d - 1)) : flat;
}

namespace {

double mass_from(const LevelSet& ls, int d, bool hyperbolic) {
  const double x = ls.area / sphere_volume(d - 1);
  const double R = std::pow(x, 1.0 / (d - 1));
  const double dR = R * ls.H / (d - 1);
  const double lead = 0.5 * std::pow(x, double(d - 2) / (d - 1));
  double m = lead - lead * dR * dR;
  if (hyperbolic) m = lead + 0.5 * std::pow(x, double(d) / (d - 1)) - lead * dR * dR;
  return m;
}

}  // namespace

double hawking_mass(const InitialDataSet& data, double s, bool hyperbolic) {
  return mass_from(level_set(data, s), data.dimension(), hyperbolic);
}

double monotonicity_defect(const InitialDataSet& data, double s) {
  return monotonicity_bracket(data.orbit(s));
}

FlowTrace flow_trace(const InitialDataSet& data) {
  using boost::math::quadrature::gauss_kronrod;
  if (!data.time_symmetric()) fail(ErrorKind::precondition, "flow trace needs time-symmetric data");
  FlowTrace tr;
  tr.d = data.dimension();
  tr.hyperbolic = data.hyperbolic();
  const auto g = data.rho.grid();
  double t = 0.0;
  const double area0 = level_set(data, g[0]).area;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (i > 0)
      t += gauss_kronrod<double, 15>::integrate([&](double s) { return mean_curvature(data, s); },
                                                g[i - 1], g[i], 0);
    const LevelSet ls = level_set(data, g[i]);
    if (i > 0 && !(ls.H > 0.0))
      fail(ErrorKind::flow, "mean curvature not positive at s = " + std::to_string(g[i]));
    tr.records.push_back({g[i], t, ls.area, ls.H, mass_from(ls, tr.d, tr.hyperbolic),
                          monotonicity_bracket(data.orbit(g[i]))});
    tr.max_area_law_error = std::max(tr.max_area_law_error, std::abs(ls.area / (area0 * std::exp(t)) - 1.0));
  }
  // Increments only where roundoff in the mass stays below 1e-10 of its scale.
  tr.min_increment = 0.0;
  const double scale = std::max(1.0, std::abs(tr.records.front().mH));
  const double w = sphere_volume(tr.d - 1);
  for (std::size_t i = 1; i < tr.records.size(); ++i) {
    const double R = std::pow(tr.records[i].area / w, 1.0 / (tr.d - 1));
    if (std::pow(R, tr.hyperbolic ? tr.d : tr.d - 2) * 2.2e-16 > 1e-10 * scale) break;
    tr.min_increment = std::min(tr.min_increment, tr.records[i].mH - tr.records[i - 1].mH);
  }
  return tr;
}

double energy_limit(const FlowTrace& trace) {
  if (trace.records.size() < 3) fail(ErrorKind::asymptotics, "trace too short");
  const int d = trace.d;
  const double w = sphere_volume(d - 1);
  const double scale = std::max(1.0, std::abs(trace.records.front().mH));
  // Samples whose roundoff R^{d-2} eps (R^d eps when hyperbolic) stays below cap.
  auto samples = [&](double cap, std::vector<double>& x, std::vector<double>& y) {
    for (const auto& r : trace.records) {
      if (r.sbar <= 0.0) continue;
      const double R = std::pow(r.area / w, 1.0 / (d - 1));
      if (std::pow(R, trace.hyperbolic ? d : d - 2) * 2.2e-16 > cap * scale) continue;
      x.push_back(trace.hyperbolic ? std::exp(-2.0 * r.sbar) : 1.0 / R);
      y.push_back(r.mH);
    }
  };
  std::vector<double> x, y, xw, yw;
  samples(1e-10, x, y);
  samples(1e-7, xw, yw);
  return settled_limit(x, y, xw, yw, trace.hyperbolic ? 100.0 : 10.0, 1e-5 * scale, "Hawking mass");
}

double rigidity_gap(const FlowTrace& trace) {
  double gap = 0.0;
  const double p = double(trace.d - 3) / (trace.d - 1);
  for (const auto& r : trace.records) gap = std::max(gap, r.defect * std::pow(r.area, p));
  return gap;
}

}  // namespace penrose
