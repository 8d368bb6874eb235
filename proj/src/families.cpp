#include "penrose/families.hpp"

#include <cmath>
#include <string>

#include <boost/math/differentiation/autodiff.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>

#include "penrose/errors.hpp"
#include "penrose/numerics.hpp"

namespace penrose {

namespace {

template <class... Ts>
struct overloaded : Ts... { using Ts::operator()...; };

struct Params {
  int n;
  double m;
  double a;
  bool ads;     // cosmological r^2 term and the (1 - a^2) mass coupling
  bool rotating;
};

Params params(const BlackHoleFamily& f) {
  return std::visit(overloaded{
                        [](const Schwarzschild& x) { return Params{x.n, x.m, 0.0, false, false}; },
                        [](const SchwarzschildAdS& x) { return Params{x.n, x.m, 0.0, true, false}; },
                        [](const MyersPerry& x) { return Params{x.n, x.m, x.a, false, true}; },
                        [](const MyersPerryAdS& x) { return Params{x.n, x.m, x.a, true, true}; },
                    },
                    f);
}

// U^{-2} = sum c r^p.
struct Term { double c; int p; };

std::vector<Term> lapse_terms(const Params& q) {
  std::vector<Term> t{{1.0, 0}};
  if (q.ads) t.push_back({1.0, 2});
  t.push_back({-2.0 * q.m * (q.ads ? 1.0 - q.a * q.a : 1.0), -2 * q.n});
  if (q.a != 0.0) t.push_back({2.0 * q.m * q.a * q.a, -2 * q.n - 2});
  return t;
}

double lapse(const std::vector<Term>& t, double r) {
  double v = 0.0;
  for (const auto& x : t) v += x.c * std::pow(r, x.p);
  return v;
}

double lapse_dr(const std::vector<Term>& t, double r) {
  double v = 0.0;
  for (const auto& x : t) v += x.c * x.p * std::pow(r, x.p - 1);
  return v;
}

// (V(r_+ + delta) - V(r_+)) / delta without cancellation; V(r_+) is taken as 0.
double lapse_over_delta(const std::vector<Term>& t, double rp, double delta) {
  double v = 0.0;
  if (delta == 0.0) return lapse_dr(t, rp);
  for (const auto& x : t) {
    if (x.p == 0) continue;
    v += x.c * std::pow(rp, x.p) * std::expm1(x.p * std::log1p(delta / rp));
  }
  return v / delta;
}

bool degenerate(const Params& q, double rp) {
  const double n = q.n, r2 = rp * rp, a2 = q.a * q.a;
  if (!q.rotating) return false;
  if (!q.ads) return !(r2 > (n + 1.0) * a2 / n * (1.0 + 1e-12));
  return !(r2 * (n + (n + 1.0) * r2) - a2 * (n + 1.0) * (1.0 + r2) * (1.0 + r2) > 1e-12 * r2);
}

}  // namespace

void validate(const BlackHoleFamily& family) {
  const Params q = params(family);
  if (q.n < 1) fail(ErrorKind::domain, "family index n must be >= 1");
  if (!(q.m > 0.0) || !std::isfinite(q.m)) fail(ErrorKind::domain, "mass parameter must be positive");
  if (!(q.a >= 0.0) || !std::isfinite(q.a)) fail(ErrorKind::domain, "spin parameter must be nonnegative");
  if (q.ads && q.rotating && !(q.a < 1.0)) fail(ErrorKind::domain, "AdS spin parameter must be below 1");
}

int family_n(const BlackHoleFamily& f) { return params(f).n; }
bool family_hyperbolic(const BlackHoleFamily& f) { return params(f).ads; }
double family_spin(const BlackHoleFamily& f) { return params(f).a; }
double family_mass(const BlackHoleFamily& f) { return params(f).m; }

std::string family_name(const BlackHoleFamily& f) {
  return std::visit(overloaded{
                        [](const Schwarzschild&) { return std::string("schwarzschild"); },
                        [](const SchwarzschildAdS&) { return std::string("schwarzschild-ads"); },
                        [](const MyersPerry&) { return std::string("myers-perry"); },
                        [](const MyersPerryAdS&) { return std::string("myers-perry-ads"); },
                    },
                    f);
}

double horizon_radius(const BlackHoleFamily& family) {
  validate(family);
  const Params q = params(family);
  const auto terms = lapse_terms(q);
  double top = 2.0;
  for (const auto& t : terms)
    if (t.p < 0) top += 2.0 * std::pow(std::abs(t.c), 1.0 / -t.p);
  // Walk inward until U^{-2} stops being positive.
  const double ratio = std::pow(1e-8, 1.0 / 20000.0);
  double hi = top, lo = top * ratio;
  while (lapse(terms, lo) > 0.0) {
    hi = lo;
    lo *= ratio;
    if (lo < 1e-8 * top) fail(ErrorKind::construction, "no horizon: U^{-2} has no positive root");
  }
  std::uintmax_t iters = 200;
  const auto [a, b] = boost::math::tools::toms748_solve(
      [&](double r) { return lapse(terms, r); }, lo, hi,
      boost::math::tools::eps_tolerance<double>(52), iters);
  const double rp = 0.5 * (a + b);
  if (degenerate(q, rp)) fail(ErrorKind::construction, "EXTREMAL: horizon is degenerate");
  return rp;
}

FamilyChart build_family_chart(const BlackHoleFamily& family, double s_max, std::size_t nodes) {
  using boost::math::differentiation::make_fvar;
  using boost::math::quadrature::gauss_kronrod;
  const Params q = params(family);
  const double rp = horizon_radius(family);
  const auto terms = lapse_terms(q);
  const int n = q.n;

  // r = r_+ + xi^2 removes the inverse square root at the horizon.
  auto speed = [&](double xi) { return 2.0 / std::sqrt(lapse_over_delta(terms, rp, xi * xi)); };
  auto arclength = [&](double xi) { return gauss_kronrod<double, 15>::integrate(speed, 0.0, xi, 15, 1e-12); };

  double xi_max = std::sqrt((q.ads ? 1e2 : 1e3) * rp - rp);
  if (s_max > 0.0) {
    double hi = std::sqrt(rp);
    while (arclength(hi) < s_max) hi *= 2.0;
    std::uintmax_t iters = 200;
    const auto [a, b] = boost::math::tools::toms748_solve(
        [&](double xi) { return arclength(xi) - s_max; }, 0.0, hi,
        boost::math::tools::eps_tolerance<double>(50), iters);
    xi_max = 0.5 * (a + b);
  }

  const double c = 0.5 * std::sqrt(rp);
  const double beta = std::asinh(xi_max / c);
  FamilyChart chart;
  chart.r_plus = rp;
  std::vector<double> s(nodes), rho(nodes), rho1(nodes), rho2(nodes), B(nodes), B1(nodes), B2(nodes),
      ks(nodes), ks1(nodes), ks2(nodes), r(nodes);
  double xi_prev = 0.0, s_acc = 0.0;
  const double two_ma2 = 2.0 * q.m * q.a * q.a;
  for (std::size_t j = 0; j < nodes; ++j) {
    const double xi = j + 1 == nodes ? xi_max : c * std::sinh(beta * double(j) / double(nodes - 1));
    if (j > 0) s_acc += gauss_kronrod<double, 15>::integrate(speed, xi_prev, xi, 0);
    xi_prev = xi;
    const double delta = xi * xi;
    const double rj = rp + delta;
    const double V = delta * lapse_over_delta(terms, rp, delta);
    const double Vr = lapse_dr(terms, rj);
    const double root_V = xi * std::sqrt(lapse_over_delta(terms, rp, delta));

    const auto x = make_fvar<double, 2>(rj);
    const auto w = 1.0 + two_ma2 / pow(x, 2 * n + 2);
    const auto rho_r = x * pow(w, 1.0 / (2.0 * (2 * n + 1)));
    const auto B_r = -log(w) / (2.0 * (2 * n + 1));
    const auto ks_r = 2.0 * q.m * q.a * (n + 1) / (pow(x, 2 * n + 2) + two_ma2);
    auto to_s = [&](const auto& f, double& v, double& d1, double& d2) {
      v = f.derivative(0);
      d1 = f.derivative(1) * root_V;
      d2 = f.derivative(2) * V + 0.5 * f.derivative(1) * Vr;
    };
    s[j] = s_acc;
    r[j] = rj;
    to_s(rho_r, rho[j], rho1[j], rho2[j]);
    to_s(B_r, B[j], B1[j], B2[j]);
    to_s(ks_r, ks[j], ks1[j], ks2[j]);
  }

  const double S = s.back();
  AsymptoticClass asym = q.ads ? AsymptoticClass{Hyperbolic{2.0 * n + 2.0}} : AsymptoticClass{Flat{2.0 * n}};
  RadialProfile B_p = q.a == 0.0 ? RadialProfile::zero(S) : RadialProfile::sampled(s, B, B1, B2);
  RadialProfile ks_p = q.a == 0.0 ? RadialProfile::zero(S) : RadialProfile::sampled(s, ks, ks1, ks2);
  chart.data = make_berger(n, asym, RadialProfile::sampled(s, rho, rho1, rho2), std::move(B_p),
                           RadialProfile::zero(S), RadialProfile::zero(S), RadialProfile::zero(S),
                           std::move(ks_p));
  chart.r = std::move(r);
  chart.s = std::move(s);
  return chart;
}

InitialDataSet build_family(const BlackHoleFamily& family, double s_max) {
  return build_family_chart(family, s_max).data;
}

namespace closed_form {

double schwarzschild_radius(int n, double m) { return std::pow(2.0 * m, 1.0 / (2.0 * n)); }

double schwarzschild_ads_mass(int n, double r_plus) {
  return 0.5 * std::pow(r_plus, 2 * n) * (1.0 + r_plus * r_plus);
}

double myers_perry_ads_mass(int n, double r_plus, double a) {
  const double r2 = r_plus * r_plus;
  const double den = 2.0 * (r2 * (1.0 - a * a) - a * a);
  if (!(den > 0.0)) fail(ErrorKind::domain, "no positive mass for this (r_+, a)");
  return (1.0 + r2) * std::pow(r_plus, 2 * n + 2) / den;
}

double myers_perry_extremal_spin(int n, double m) {
  return std::sqrt(double(n) / (n + 1.0) * std::pow(2.0 * m / (n + 1.0), 1.0 / n));
}

double horizon_area(int n, double m, double a, double r_plus) {
  const double P = r_plus * std::sqrt(1.0 + 2.0 * m * a * a / std::pow(r_plus, 2 * n + 2));
  return sphere_volume(2 * n + 1) * P * std::pow(r_plus, 2 * n);
}

double energy(const BlackHoleFamily& family) {
  const Params q = params(family);
  return q.ads ? q.m * (1.0 + q.a * q.a / (2.0 * q.n + 1.0)) : q.m;
}

double angular_momentum(const BlackHoleFamily& family) {
  const Params q = params(family);
  return q.m * q.a;
}

double angular_velocity(int n, double m, double a, double r_plus) {
  return 2.0 * m * a / (std::pow(r_plus, 2 * n + 2) + 2.0 * m * a * a);
}

double flat_mass_to_bound(int n, double a, double r_plus) {
  const double r2 = r_plus * r_plus;
  return std::pow(r2 / (r2 - a * a), (n + 1.0) / (2.0 * n + 1.0));
}

}  // namespace closed_form

}  // namespace penrose
