// Acceptance checks. `acceptance <id>` runs one criterion (1..11, or 8a/8b for
// the two halves of 8); no argument runs all. Each criterion prints exactly one
// PASS or FAIL line, preceded by indented detail lines. Tolerances are pinned
// here.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "penrose/conformal_flow.hpp"
#include "penrose/families.hpp"
#include "penrose/imcf_hawking.hpp"
#include "penrose/jang_solver.hpp"
#include "penrose/orbit_geometry.hpp"
#include "penrose/penrose_verifier.hpp"
#include "support.hpp"

using namespace penrose;

namespace {

// Independent unit-sphere volume.
double omega(int k) { return 2.0 * std::pow(M_PI, 0.5 * (k + 1)) / std::tgamma(0.5 * (k + 1)); }

class Criterion {
 public:
  explicit Criterion(std::string id) : id_(std::move(id)) {}

  // Records one sub-check; prints a detail line.
  bool expect(bool ok, const char* fmt, ...) __attribute__((format(printf, 3, 4))) {
    char buf[512];
    va_list ap;
    va_start(ap, fmt);
    std::vsnprintf(buf, sizeof buf, fmt, ap);
    va_end(ap);
    std::printf("  [%s] %s %s\n", id_.c_str(), ok ? "ok  " : "MISS", buf);
    ok_ = ok_ && ok;
    ++checks_;
    return ok;
  }

  int finish(const char* summary, double seconds) const {
    std::printf("%s criterion %s: %s (%d checks, %.2fs)\n", ok_ ? "PASS" : "FAIL", id_.c_str(), summary, checks_,
                seconds);
    std::fflush(stdout);
    return ok_ ? 0 : 1;
  }

 private:
  std::string id_;
  bool ok_ = true;
  int checks_ = 0;
};

double max_abs(const std::vector<double>& v, std::size_t from = 0) {
  double m = 0.0;
  for (std::size_t i = from; i < v.size(); ++i) m = std::max(m, std::abs(v[i]));
  return m;
}

// Closed-form Schwarzschild tolerance ladder.
constexpr double kSchwarzschildMargin = 1e-5;
constexpr double kRigidity = 1e-8;
constexpr double kAdsMargin = 1e-4;
constexpr double kMyersPerryRatio = 1e-3;
constexpr double kAdsEnergy = 1e-4;
constexpr double kGradient = 1e-6;
constexpr double kJangFlat = 1e-9;
constexpr double kRefine = 1e-6;
constexpr double kFlux = 1e-9;
constexpr double kPlanted = 0.05;
constexpr double kAreaConstancy = 1e-4;
constexpr double kMassSlack = 1e-6;
constexpr double kHarmonic = 1e-6;
constexpr double kRiemannMargin = -1e-6;
constexpr double kAreaLaw = 1e-8;
constexpr double kMachine = 1e-14;

int c1(Criterion& c) {
  for (int n : {1, 2, 3})
    for (double m : {0.5, 1.0, 5.0}) {
      const PenroseReport r = verify_spacetime(build_family(Schwarzschild{n, m}));
      const int d = 2 * n + 2;
      const double rp = std::pow(2.0 * m, 1.0 / (d - 2));
      const double A = omega(d - 1) * std::pow(rp, d - 1);
      const double bound = 0.5 * std::pow(A / omega(d - 1), double(d - 2) / (d - 1));  // = m
      c.expect(std::abs(r.bound - bound) <= 1e-10 * bound, "n=%d m=%g bound %.12g oracle %.12g", n, m, r.bound, bound);
      c.expect(std::abs(r.energy - bound) <= kSchwarzschildMargin * std::max(1.0, m),
               "n=%d m=%g |E - bound| = %.3g", n, m, std::abs(r.energy - bound));
      c.expect(r.rigidity_gap <= kRigidity, "n=%d m=%g rigidity_gap %.3g", n, m, r.rigidity_gap);
    }
  return 0;
}

int c2(Criterion& c) {
  for (int n : {1, 2})
    for (double rp : {0.5, 1.0, 2.0}) {
      const double m = 0.5 * std::pow(rp, 2 * n) * (1.0 + rp * rp);  // zero of 1 + r^2 - 2m/r^{2n}
      const PenroseReport r = verify_spacetime(build_family(SchwarzschildAdS{n, m}));
      const double x = r.area / omega(2 * n + 1);
      const double bound = 0.5 * std::pow(x, 2.0 * n / (2 * n + 1)) + 0.5 * std::pow(x, (2.0 * n + 2) / (2 * n + 1));
      c.expect(std::abs(bound - m) <= 1e-10 * m, "n=%d r+=%g bound %.12g vs m %.12g", n, rp, bound, m);
      c.expect(std::abs(r.energy - bound) <= kAdsMargin, "n=%d r+=%g |E_hyp - bound| = %.3g", n, rp,
               std::abs(r.energy - bound));
    }
  return 0;
}

int c3(Criterion& c) {
  const double a = 0.5;
  const double r2 = 1.0 + std::sqrt(0.5);
  const double closed = std::pow(r2 / (r2 - a * a), 2.0 / 3.0) - 1.0;
  const PenroseReport r = verify_spacetime(build_family(MyersPerry{1, 1.0, a}));
  const double ratio = r.margin / r.bound;
  c.expect(std::abs(ratio - 0.1113) <= kMyersPerryRatio, "margin/bound %.6f vs 0.1113", ratio);
  c.expect(std::abs(ratio - closed) <= kMyersPerryRatio, "margin/bound %.6f vs closed form %.6f", ratio, closed);

  const double a_max = std::sqrt(0.5);  // m = 2 a^2 makes the horizon degenerate at m = 1
  std::vector<double> margins;
  for (int k = 0; k < 10; ++k) {
    const double ak = 0.9 * a_max * k / 9.0;
    margins.push_back(verify_spacetime(build_family(MyersPerry{1, 1.0, ak})).margin);
  }
  bool increasing = true;
  for (std::size_t k = 1; k < margins.size(); ++k) increasing = increasing && margins[k] > margins[k - 1];
  c.expect(increasing, "sweep a in [0, 0.9 a_max]: margins %.3g ... %.3g strictly increasing", margins.front(),
           margins.back());
  c.expect(std::abs(margins.front()) <= kSchwarzschildMargin, "margin at a = 0: %.3g", margins.front());
  return 0;
}

int c4(Criterion& c) {
  const double a = 0.5;
  const double m_closed = closed_form::myers_perry_ads_mass(1, 1.0, a);
  // 1 + r^2 - 2m(1 - a^2)/r^2 + 2 m a^2/r^4 = 0 at r = 1 gives m = 1/(1 - 2a^2) = 2.
  c.expect(std::abs(m_closed - 2.0) <= 1e-15, "closed-form m(r+=1, a=0.5) = %.17g", m_closed);
  const BlackHoleFamily f = MyersPerryAdS{1, 2.0, a};
  c.expect(std::abs(horizon_radius(f) - 1.0) <= 1e-10, "numeric r+ = %.15g", horizon_radius(f));
  const InitialDataSet data = build_family(f);
  const PenroseReport r = verify_spacetime(data);
  const double E_closed = 2.0 * (1.0 + a * a / 3.0);
  c.expect(std::abs(r.energy - E_closed) <= kAdsEnergy, "E_hyp %.8f vs %.8f", r.energy, E_closed);
  const double J = angular_momentum(data);
  c.expect(std::abs(J - 1.0) <= kAdsEnergy, "J_psi %.10f vs 1", J);
  c.expect(r.margin > 0.0, "hyperbolic margin %.6f > 0", r.margin);
  return 0;
}

int c5(Criterion& c) {
  // Berger polynomial on a 200-point log grid containing 1.
  for (int n = 1; n <= 5; ++n) {
    bool nonneg = true, unique = true, matches = true;
    for (int k = 0; k < 200; ++k) {
      const double x = std::pow(10.0, (k - 99) / 50.0);
      const double I = hawking_defect(Berger{n, -0.5 * std::log(x)});
      const double poly = 2.0 * n + 1.0 + std::pow(x, 2.0 * (n + 1)) - 2.0 * (n + 1) * x;
      matches = matches && std::abs(I - poly) <= 1e-9 * (1.0 + std::abs(poly));
      nonneg = nonneg && I >= 0.0;
      if (k == 99) unique = unique && std::abs(I) <= 1e-12;
      else unique = unique && I > 0.0;
    }
    c.expect(matches && nonneg && unique, "I_%d: polynomial match %d, nonnegative %d, zero only at 1 %d", n, matches,
             nonneg, unique);
  }
  {
    bool nonneg = true, unique = true;
    for (int i = 0; i < 200; ++i)
      for (int j = 0; j < 200; ++j) {
        const double c1v = std::pow(10.0, (i - 99) / 100.0), c2v = std::pow(10.0, (j - 99) / 100.0);
        const double I = hawking_defect(SU2{c1v, c2v, 1.0});
        nonneg = nonneg && I >= -1e-13;
        if (i == 99 && j == 99) unique = unique && std::abs(I) <= 1e-12;
        else unique = unique && I > 0.0;
      }
    c.expect(nonneg && unique, "I_1(c1, c2) on 200x200: nonnegative %d, zero only at (1,1) %d", nonneg, unique);
  }
  for (int n : {1, 2, 3}) {
    auto f = [n](const Eigen::Vector3d& x) { return hawking_defect(SpTriple{n, x(0), x(1), x(2)}); };
    const Eigen::Vector3d one(1, 1, 1);
    Eigen::Vector3d grad;
    Eigen::Matrix3d hess;
    const double h = 1e-4, h2 = 1e-3;
    for (int i = 0; i < 3; ++i) {
      const Eigen::Vector3d e = Eigen::Vector3d::Unit(i);
      grad(i) = (f(one + h * e) - f(one - h * e)) / (2 * h);
      for (int j = 0; j < 3; ++j) {
        const Eigen::Vector3d g = Eigen::Vector3d::Unit(j);
        hess(i, j) = (f(one + h2 * (e + g)) - f(one + h2 * (e - g)) - f(one - h2 * (e - g)) + f(one - h2 * (e + g))) /
                     (4 * h2 * h2);
      }
    }
    const double lmin = Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d>(hess).eigenvalues().minCoeff();
    bool positive = true;
    for (int i = -10; i <= 10; ++i)
      for (int j = -10; j <= 10; ++j)
        for (int k = -10; k <= 10; ++k) {
          const Eigen::Vector3d dlt(0.02 * i, 0.02 * j, 0.02 * k);
          if ((i == 0 && j == 0 && k == 0) || dlt.norm() > 0.2 + 1e-12) continue;
          positive = positive && f(one + dlt) > 0.0;
        }
    c.expect(grad.norm() <= kGradient && lmin > 0.0 && positive,
             "Sp n=%d: |grad| %.2g, min Hessian eigenvalue %.4g, positive on punctured ball %d", n, grad.norm(), lmin,
             positive);
  }
  {
    auto f = [](double x) { return hawking_defect(Spin9{x}); };
    const double g = (f(1 + 1e-4) - f(1 - 1e-4)) / 2e-4;
    const double h = (f(1 + 1e-3) - 2 * f(1.0) + f(1 - 1e-3)) / 1e-6;
    bool positive = true;
    for (int i = -20; i <= 20; ++i)
      if (i != 0) positive = positive && f(1.0 + 0.01 * i) > 0.0;
    c.expect(std::abs(g) <= kGradient && h > 0.0 && positive, "Spin9: |I'| %.2g, I'' %.4g, positive on punctured ball %d",
             std::abs(g), h, positive);
  }
  return 0;
}

double refine_change(const InitialDataSet& d) {
  const JangBC bc = boundary_rule(d);
  const JangSolution a = solve_jang(d, bc);
  JangOptions o;
  o.refine = 1;
  const JangSolution b = solve_jang(d, bc, o);
  double diff = 0;
  for (std::size_t i = 0; i < a.vs.size(); ++i) diff = std::max(diff, std::abs(a.vs[i] - b.vs[i]));
  return diff;
}

int c6(Criterion& c) {
  for (const auto& [name, d] : std::vector<std::pair<const char*, InitialDataSet>>{
           {"schwarzschild n=1", build_family(Schwarzschild{1, 1.0})},
           {"schwarzschild n=2", build_family(Schwarzschild{2, 1.0})},
           {"berger-perturbed", testdata::berger_perturbed()}}) {
    const JangSolution s = solve_jang(d, boundary_rule(d));
    c.expect(max_abs(s.vs) <= kJangFlat, "%s (time symmetric): max|v| %.3g", name, max_abs(s.vs));
  }
  auto flat_case = [&](const char* name, const InitialDataSet& d, double tau) {
    const JangSolution s = solve_jang(d, boundary_rule(d));
    const double tau0 = 0.95 * std::min(tau, d.n + 0.5);
    c.expect(max_abs(s.vs, 1) < 1.0, "%s: interior max|v| %.6g < 1", name, max_abs(s.vs, 1));
    c.expect(s.decay <= -2 * tau0 + 0.2, "%s: tail exponent %.4g <= %.4g", name, s.decay, -2 * tau0 + 0.2);
    const double diff = refine_change(d);
    c.expect(diff <= kRefine, "%s: refinement change %.3g", name, diff);
  };
  flat_case("myers-perry n=1 a=0.5", build_family(MyersPerry{1, 1.0, 0.5}), 2.0);
  flat_case("myers-perry n=2 a=0.3", build_family(MyersPerry{2, 1.0, 0.3}), 4.0);
  flat_case("synthetic past horizon", testdata::past_horizon(), 1.3);
  flat_case("synthetic minimal boundary", testdata::degenerate_horizon(), 1.3);
  auto hyp_case = [&](const char* name, const InitialDataSet& d, double q) {
    const JangSolution s = solve_jang(d, boundary_rule(d));
    const double need = 0.9 * std::min(q, 2.0 * d.n + 2.0);
    c.expect(max_abs(s.vs, 1) < 1.0, "%s: interior max|v| %.6g < 1", name, max_abs(s.vs, 1));
    c.expect(s.decay >= need, "%s: exponential rate %.4g >= %.4g", name, s.decay, need);
    const double diff = refine_change(d);
    c.expect(diff <= kRefine, "%s: refinement change %.3g", name, diff);
  };
  hyp_case("myers-perry-ads n=1", build_family(MyersPerryAdS{1, 2.0, 0.5}), 4.0);
  hyp_case("synthetic hyperbolic past horizon", testdata::hyperbolic_past_horizon(3.0), 3.0);
  return 0;
}

int c7(Criterion& c) {
  for (const auto& [name, d] : std::vector<std::pair<const char*, InitialDataSet>>{
           {"schwarzschild", build_family(Schwarzschild{1, 1.0})},
           {"myers-perry", build_family(MyersPerry{1, 1.0, 0.5})},
           {"myers-perry-ads", build_family(MyersPerryAdS{1, 2.0, 0.5})},
           {"synthetic past horizon", testdata::past_horizon()},
           {"synthetic minimal boundary", testdata::degenerate_horizon()},
           {"synthetic hyperbolic", testdata::hyperbolic_past_horizon()}}) {
    const JangSolution s = solve_jang(d, boundary_rule(d));
    const double f0 = boundary_flux(d, s, 0.0);
    c.expect(std::abs(f0) <= kFlux, "%s: |flux(0)| %.3g (bc %s)", name, std::abs(f0), to_string(s.bc).c_str());
    // flux * area over the outer half of the range where v is above the
    // solver noise floor (1e3 atol).
    std::vector<double> fa(s.s.size());
    for (std::size_t i = 0; i < s.s.size(); ++i)
      fa[i] = std::abs(boundary_flux(d, s, s.s[i])) * level_set(d, s.s[i]).area;
    double s_end = 0;
    for (std::size_t i = s.s.size(); i-- > 1;)
      if (std::abs(s.vs[i]) >= 1e3 * JangOptions{}.atol) {
        s_end = s.s[i];
        break;
      }
    std::vector<double> xs, ys;
    for (std::size_t i = 1; i < s.s.size(); ++i)
      if (s.s[i] >= 0.5 * s_end && s.s[i] <= s_end && fa[i] > 0.0) {
        xs.push_back(s.s[i]);
        ys.push_back(fa[i]);
      }
    const double slope = d.hyperbolic() ? semilog_slope(xs, ys) : loglog_slope(xs, ys);
    c.expect(slope < 0.0, "%s: flux*area tail slope %.4g < 0", name, slope);
  }
  return 0;
}

int c8a(Criterion& c) {
  for (const auto& f : {BlackHoleFamily{MyersPerry{1, 1.0, 0.5}}, BlackHoleFamily{MyersPerry{2, 1.0, 0.3}}}) {
    const InitialDataSet d = build_family(f);
    const double tau = std::get<Flat>(d.asymptotic).tau;
    const DecayExponents p = momentum_decay_exponents(d);
    const double limit = -(2 * tau + 2) + 0.3;
    c.expect(p.p_a <= limit, "myers-perry n=%d: k_a exponent %.4g <= %.4g", d.n, p.p_a, limit);
    c.expect(p.p_s <= limit, "myers-perry n=%d: k_s exponent %.4g <= %.4g", d.n, p.p_s, limit);
  }
  return 0;
}

int c8b(Criterion& c) {
  const double pa[] = {-4.5, -5.2, -6.0};
  const double ps[] = {-5.0, -5.8, -7.0};
  for (int i = 0; i < 3; ++i) {
    const DecayExponents p = momentum_decay_exponents(testdata::planted_momentum(pa[i], ps[i]));
    c.expect(std::abs(p.p_a - pa[i]) <= kPlanted && std::abs(p.p_s - ps[i]) <= kPlanted,
             "planted (%.2f, %.2f) recovered (%.4f, %.4f)", pa[i], ps[i], p.p_a, p.p_s);
  }
  return 0;
}

int c9(Criterion& c) {
  const double m = 1.0;
  const FamilyChart chart = build_family_chart(Schwarzschild{1, m});
  const ConformalRun run = run_conformal(chart.data, 1.0, 1e-2);
  c.expect(run.states.size() == 101, "%zu states on t in [0, 1]", run.states.size());
  // At t = 0 the harmonic function is -sqrt(1 - 2m/r^2).
  const RadialProfile v0 = harmonic_radial(run.states.front());
  double err = 0;
  for (std::size_t i = 0; i < chart.s.size(); i += 7)
    err = std::max(err, std::abs(v0(chart.s[i]) + std::sqrt(1.0 - 2.0 * m / (chart.r[i] * chart.r[i]))));
  c.expect(err <= 1e-6, "v_0 vs -sqrt(1 - 2m/r^2): %.3g", err);
  double area_dev = 0, worst_inc = -INFINITY, worst_res = 0;
  bool monotone_s = true;
  for (std::size_t k = 0; k < run.states.size(); ++k) {
    const ConformalState& st = run.states[k];
    area_dev = std::max(area_dev, std::abs(st.area / run.states[0].area - 1.0));
    worst_res = std::max(worst_res, harmonicity_residual(st));
    if (k > 0) {
      worst_inc = std::max(worst_inc, st.mass_estimate - run.states[k - 1].mass_estimate);
      monotone_s = monotone_s && st.s_t > run.states[k - 1].s_t;
    }
  }
  c.expect(area_dev <= kAreaConstancy, "horizon area relative deviation %.3g", area_dev);
  c.expect(worst_inc <= kMassSlack, "largest mass increment per step %.3g", worst_inc);
  c.expect(worst_res <= kHarmonic, "harmonicity residual %.3g", worst_res);
  c.expect(monotone_s, "horizon moves outward: s_t(1) = %.6g", run.states.back().s_t);
  return 0;
}

int c10(Criterion& c) {
  auto check = [&](const char* name, const InitialDataSet& d, const VerifyOptions& o) {
    double R_min = INFINITY, R_mid = 0;
    const auto g = d.rho.grid();
    for (std::size_t i = 0; i < g.size(); ++i) {
      R_min = std::min(R_min, scalar_curvature(d, g[i]));
      if (i + 1 < g.size()) R_mid = std::max(R_mid, std::abs(scalar_curvature(d, 0.5 * (g[i] + g[i + 1]))));
    }
    c.expect(R_min >= -1e-7, "%s: min R on grid %.3g (max |R| between nodes %.3g)", name, R_min, R_mid);
    const PenroseReport r = verify_riemannian(d, o);
    c.expect(r.margin >= kRiemannMargin, "%s: pipeline %s margin %.6g (E %.8f, bound %.8f)", name, r.pipeline.c_str(),
             r.margin, r.energy, r.bound);
    return r;
  };
  check("berger-perturbed n=2", testdata::berger_perturbed(), {});
  const InitialDataSet sp = testdata::sp_perturbed();
  check("sp-perturbed n=1", sp, {});
  VerifyOptions forced;
  forced.conformal_target = 0.5;
  const PenroseReport r = check("sp-perturbed n=1, conformal stage to s = 0.5", sp, forced);
  const double imcf = std::stod(r.note("imcf_energy"));
  c.expect(std::stod(r.note("conformal_time")) > 0.0 && imcf - r.bound >= kRiemannMargin,
           "conformal stage ran to t0 = %s; flow energy after it %.8f >= bound", r.note("conformal_time").c_str(), imcf);
  return 0;
}

int c11(Criterion& c) {
  auto jang_metric_of = [](const InitialDataSet& d) { return jang_metric(d, solve_jang(d, boundary_rule(d))); };
  std::vector<std::pair<const char*, InitialDataSet>> cases = {
      {"schwarzschild n=1", build_family(Schwarzschild{1, 1.0})},
      {"schwarzschild n=3", build_family(Schwarzschild{3, 5.0})},
      {"schwarzschild-ads n=2", build_family(SchwarzschildAdS{2, 3.0})},
      {"myers-perry jang metric", jang_metric_of(build_family(MyersPerry{1, 1.0, 0.5}))},
      {"myers-perry-ads jang metric", jang_metric_of(build_family(MyersPerryAdS{1, 2.0, 0.5}))},
      {"past horizon jang metric", jang_metric_of(testdata::past_horizon())},
      {"berger-perturbed", testdata::berger_perturbed()},
      {"sp-perturbed", testdata::sp_perturbed()},
  };
  for (const auto& [name, d] : cases) {
    const FlowTrace tr = flow_trace(d);
    c.expect(tr.max_area_law_error <= kAreaLaw, "%s: area law error %.3g", name, tr.max_area_law_error);
    const FlowRecord& h = tr.records.front();
    const double bound = penrose_bound(h.area, tr.d, tr.hyperbolic);
    c.expect(std::abs(h.mH - bound) <= kMachine * bound, "%s: mH(horizon) - bound = %.3g", name, h.mH - bound);
  }
  return 0;
}

const std::map<std::string, std::pair<std::function<int(Criterion&)>, const char*>>& table() {
  static const std::map<std::string, std::pair<std::function<int(Criterion&)>, const char*>> t = {
      {"1", {c1, "Schwarzschild saturation, jang-imcf pipeline"}},
      {"2", {c2, "Schwarzschild-AdS saturation"}},
      {"3", {c3, "Myers-Perry margin/bound and monotone sweep"}},
      {"4", {c4, "Myers-Perry-AdS closed-form cross-check"}},
      {"5", {c5, "defect polynomials"}},
      {"6", {c6, "Jang solver contract"}},
      {"7", {c7, "boundary flux"}},
      {"8a", {c8a, "momentum exponents of the Myers-Perry family"}},
      {"8b", {c8b, "planted momentum exponent recovery"}},
      {"9", {c9, "conformal flow on Schwarzschild"}},
      {"10", {c10, "Riemannian pipeline on perturbed Schwarzschild"}},
      {"11", {c11, "flow bookkeeping"}},
  };
  return t;
}

int run(const std::string& id) {
  const auto it = table().find(id);
  if (it == table().end()) {
    std::fprintf(stderr, "unknown criterion '%s'\n", id.c_str());
    return 64;
  }
  Criterion c(id);
  const auto t0 = std::chrono::steady_clock::now();
  int rc = 0;
  try {
    rc = it->second.first(c);
  } catch (const std::exception& e) {
    c.expect(false, "exception: %s", e.what());
  }
  const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return c.finish(it->second.second, dt) | rc;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) return run(argv[1]);
  int rc = 0;
  for (const char* id : {"1", "2", "3", "4", "5", "6", "7", "8a", "8b", "9", "10", "11"}) rc |= run(id);
  return rc;
}
