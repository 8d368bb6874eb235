#pragma once
//! \file families.hpp
//! Exact black-hole initial data: Schwarzschild, Schwarzschild-AdS, and the
//! equal-spin Myers-Perry and Myers-Perry-AdS slices, written as Berger data.

#include <string>
#include <variant>
#include <vector>

#include "penrose/initial_data.hpp"

namespace penrose {

struct Schwarzschild { int n; double m; };
struct SchwarzschildAdS { int n; double m; };
struct MyersPerry { int n; double m; double a; };
struct MyersPerryAdS { int n; double m; double a; };

using BlackHoleFamily = std::variant<Schwarzschild, SchwarzschildAdS, MyersPerry, MyersPerryAdS>;

//! Domain error on m <= 0, n < 1, a < 0, or a >= 1 for the AdS family.
void validate(const BlackHoleFamily& family);

int family_n(const BlackHoleFamily& family);
bool family_hyperbolic(const BlackHoleFamily& family);
double family_spin(const BlackHoleFamily& family);
double family_mass(const BlackHoleFamily& family);
std::string family_name(const BlackHoleFamily& family);

//! Largest root of U^{-2}, by scanning for a sign change and refining with
//! TOMS 748. Construction error when none exists or the horizon is degenerate.
double horizon_radius(const BlackHoleFamily& family);

//! The data on its arclength grid together with the radius at each node.
struct FamilyChart {
  InitialDataSet data;
  double r_plus = 0;
  std::vector<double> r;
  std::vector<double> s;
};

//! s_max <= 0 selects the default outer radius: 1e3 r_+ (flat), 1e2 r_+ (hyperbolic).
FamilyChart build_family_chart(const BlackHoleFamily& family, double s_max = 0.0,
                               std::size_t nodes = 2000);
InitialDataSet build_family(const BlackHoleFamily& family, double s_max = 0.0);

//! Formulas for the families in terms of (n, m, a, r_+).
namespace closed_form {

double schwarzschild_radius(int n, double m);
//! Mass parameter giving horizon radius r_plus.
double schwarzschild_ads_mass(int n, double r_plus);
double myers_perry_ads_mass(int n, double r_plus, double a);
//! Largest spin with a nondegenerate flat horizon at fixed m.
double myers_perry_extremal_spin(int n, double m);

double horizon_area(int n, double m, double a, double r_plus);
//! m for flat families, m (1 + a^2/(2n+1)) for the hyperbolic ones.
double energy(const BlackHoleFamily& family);
double angular_momentum(const BlackHoleFamily& family);
double angular_velocity(int n, double m, double a, double r_plus);
//! (r_+^2 / (r_+^2 - a^2))^{(n+1)/(2n+1)}: flat mass over its Penrose bound.
double flat_mass_to_bound(int n, double a, double r_plus);

}  // namespace closed_form

}  // namespace penrose
