#pragma once
// Synthetic data sets shared by the unit and acceptance tests.

#include <cmath>

#include <boost/math/differentiation/autodiff.hpp>

#include "penrose/initial_data.hpp"
#include "penrose/numerics.hpp"

namespace testdata {

using penrose::Jet;
using penrose::RadialProfile;

// Closed-form profile with derivatives from forward-mode autodiff.
template <class F>
RadialProfile profile(double S, F f) {
  return RadialProfile::closed_form(S, [f](double s) {
    auto x = boost::math::differentiation::make_fvar<double, 2>(s);
    auto y = f(x);
    return Jet{y.derivative(0), y.derivative(1), y.derivative(2)};
  });
}

// Flat Berger data, n = 1, rho = 1 + s, with theta_-(0) = 0 and H(0) = 3:
// a past horizon at s = 0 and a nonzero Jang solution.
inline penrose::InitialDataSet past_horizon(double tau = 1.3, double S = 1000.0) {
  using std::pow;
  auto H = [](auto s) { return 3.0 / (s + 1.0); };
  auto chi = [tau](auto s) { return pow(1.0 + s, -tau); };
  return penrose::make_berger(
      1, penrose::Flat{tau}, profile(S, [](auto s) { return s + 1.0; }), RadialProfile::zero(S),
      profile(S, [=](auto s) { return -H(s) * chi(s) + 0.1 * pow(1.0 + s, -2 * tau - 1); }),
      profile(S, [=](auto s) { return H(s) * chi(s) / 3.0; }),
      profile(S, [=](auto s) { return H(s) * chi(s) / 3.0; }), RadialProfile::zero(S));
}

// Flat Berger data with a minimal boundary (H(0) = 0) and Tr_Sigma k != 0.
inline penrose::InitialDataSet degenerate_horizon(double tau = 1.3, double S = 1000.0) {
  using std::pow;
  auto T = [tau](auto s) { return 0.2 * pow(1.0 + s, -tau - 1); };
  return penrose::make_berger(
      1, penrose::Flat{tau}, profile(S, [](auto s) { return sqrt(s * s + 1.0); }), RadialProfile::zero(S),
      profile(S, [=](auto s) { return -T(s) + 0.1 * pow(1.0 + s, -2 * tau - 1); }),
      profile(S, [=](auto s) { return T(s) / 3.0; }), profile(S, [=](auto s) { return T(s) / 3.0; }),
      RadialProfile::zero(S));
}

// Hyperbolic analogue of past_horizon: rho = sinh(s + 1), k ~ e^{-q s}.
inline penrose::InitialDataSet hyperbolic_past_horizon(double q = 3.0, double S = 12.0) {
  using std::exp;
  auto H = [](auto s) { return 3.0 * cosh(s + 1.0) / sinh(s + 1.0); };
  auto chi = [q](auto s) { return exp(-q * s); };
  return penrose::make_berger(
      1, penrose::Hyperbolic{q}, profile(S, [](auto s) { return sinh(s + 1.0); }), RadialProfile::zero(S),
      profile(S, [=](auto s) { return -H(s) * chi(s) + 0.1 * exp(-2 * q * s); }),
      profile(S, [=](auto s) { return H(s) * chi(s) / 3.0; }),
      profile(S, [=](auto s) { return H(s) * chi(s) / 3.0; }), RadialProfile::zero(S));
}

// k_a ~ (1+s)^{p_a}, k_s ~ (1+s)^{p_s} on flat space, for exponent recovery.
inline penrose::InitialDataSet planted_momentum(double p_a, double p_s, double S = 1000.0) {
  using std::pow;
  return penrose::make_berger(1, penrose::Flat{2.0}, profile(S, [](auto s) { return s + 1.0; }),
                              RadialProfile::zero(S), profile(S, [=](auto s) { return 0.3 * pow(1.0 + s, p_a); }),
                              RadialProfile::zero(S), RadialProfile::zero(S),
                              profile(S, [=](auto s) { return -0.7 * pow(1.0 + s, p_s); }));
}

// Scalar-flat Berger perturbation of Schwarzschild, n = 2.
inline penrose::InitialDataSet berger_perturbed(double S = 1000.0) {
  const double rho0 = std::pow(2.0, 0.25);  // Schwarzschild n = 2, m = 1
  return penrose::solve_scalar_flat(2, penrose::OrbitKind::berger, penrose::Flat{3.0}, rho0,
                                    {profile(S, [](auto s) { return 0.05 * pow(1.0 + s, -3.0); })});
}

// Scalar-flat Sp(2) perturbation with c_i = 1 + 0.05 e^{-s}.
inline penrose::InitialDataSet sp_perturbed(double S = 1000.0) {
  const double rho0 = std::pow(2.0, 1.0 / 6.0);  // Schwarzschild d = 8, m = 1
  auto c = profile(S, [](auto s) { return 1.0 + 0.05 * exp(-s); });
  return penrose::solve_scalar_flat(1, penrose::OrbitKind::sp, penrose::Flat{6.0}, rho0, {c, c, c});
}

// Relative difference with a floor of one on the scale.
inline double rel(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace testdata
