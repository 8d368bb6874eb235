#pragma once
//! \file initial_data.hpp
//! Cohomogeneity-one initial data (M, g, k) in radial form:
//!   g = ds^2 + rho(s)^2 g_orbit(shape(s)),  k diagonal per orbit block plus
//!   normal/tangential cross terms on one-dimensional blocks.

#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "penrose/orbit_geometry.hpp"
#include "penrose/radial_profile.hpp"

namespace penrose {

struct Flat { double tau; };
struct Hyperbolic { double q; };
using AsymptoticClass = std::variant<Flat, Hyperbolic>;

enum class OrbitKind { berger, su2, sp, spin9 };

//! Orbit blocks of equal scale. Berger: {fibre x1, base x2n}; SU2: three
//! single directions; Sp: three fibre directions then base x4n; Spin9: fibre
//! x7 then base x8.
struct InitialDataSet {
  int n = 1;
  OrbitKind kind = OrbitKind::berger;
  AsymptoticClass asymptotic = Flat{2.0};
  RadialProfile rho;
  //! berger {B}; su2 and sp {c1, c2, c3}; spin9 {c}
  std::vector<RadialProfile> shape;
  RadialProfile k_a;
  //! Tangential diagonal per block; berger {k_b, k_c}, su2 {k_11, k_22, k_33}.
  //! Empty means zero.
  std::vector<RadialProfile> k_tan;
  //! k(e_0, e_j) for the leading one-dimensional blocks; berger {k_s},
  //! su2 {k_1, k_2, k_3}. Empty means zero.
  std::vector<RadialProfile> k_cross;

  double s_max() const { return rho.s_max(); }
  int dimension() const;  // d = dim M
  bool hyperbolic() const { return std::holds_alternative<Hyperbolic>(asymptotic); }
  bool time_symmetric() const;
  OrbitClass orbit(double s) const;
  std::vector<int> multiplicities() const;
};

//! Throws a domain error on inconsistent sizes, domains, parameter bounds,
//! or rho <= 0 on (0, S_max].
void validate(const InitialDataSet& data);

InitialDataSet make_berger(int n, AsymptoticClass asym, RadialProfile rho, RadialProfile B,
                           RadialProfile k_a, RadialProfile k_b, RadialProfile k_c,
                           RadialProfile k_s);

InitialDataSet make_time_symmetric(int n, OrbitKind kind, AsymptoticClass asym,
                                   RadialProfile rho, std::vector<RadialProfile> shape);

//! Time-symmetric data with scalar curvature exactly zero: rho solves R = 0
//! from a minimal boundary (rho(0) = rho0, H(0) = 0) for the given shapes.
InitialDataSet solve_scalar_flat(int n, OrbitKind kind, AsymptoticClass asym, double rho0,
                                 std::vector<RadialProfile> shape, std::size_t nodes = 2000);

//! Pointwise geometry of the level set Sigma_s.
struct LevelSet {
  double rho = 0;
  Jet areal;            // R_A = (|Sigma|/omega)^{1/(d-1)} with s-derivatives
  double area = 0;
  double H = 0;         // mean curvature
  double dH = 0;        // dH/ds
  double II2 = 0;       // |II|^2
  double R_sigma = 0;   // intrinsic scalar curvature
  double R = 0;         // scalar curvature of g at s
  std::vector<double> kappa;  // principal curvature per block
};

LevelSet level_set(const InitialDataSet& data, double s);

double scalar_curvature(const InitialDataSet& data, double s);
double mean_curvature(const InitialDataSet& data, double s);
//! Tr_Sigma k with its s-derivatives.
Jet trace_sigma_k(const InitialDataSet& data, double s);

//! (theta_plus, theta_minus) = H +- Tr_Sigma k.
std::pair<double, double> null_expansions(const InitialDataSet& data, double s);

struct MomentumDensity {
  double mu = 0;
  double J1 = 0;  // J(e_0), radial
  double J2 = 0;  // norm of the tangential components (J(e_2) for Berger data)
  double norm() const;
};

MomentumDensity energy_momentum_density(const InitialDataSet& data, double s);

//! min over the profile grid of mu - |J| (interior points only).
double dec_margin(const InitialDataSet& data);

double horizon_area(const InitialDataSet& data);

//! 1/2 R^{d-2}(1 - R'^2), plus 1/2 R^d when hyperbolic.
double radial_hawking_mass(double R, double dR, int d, bool hyperbolic);

//! Limit of the radial Hawking mass at the outer end.
double adm_energy(const InitialDataSet& data);

struct DecayExponents {
  double p_a;  // fitted exponent of |k_a|
  double p_s;  // fitted exponent of the cross components
};
DecayExponents momentum_decay_exponents(const InitialDataSet& data);
//! p <= -(2 tau + 2) + 0.3 for both exponents.
bool momentum_vanishes(const InitialDataSet& data, const DecayExponents& p);

//! Limit of k_s rho^{2n+2} e^{-2nB} / (2(n+1)) (Berger data only).
double angular_momentum(const InitialDataSet& data);

}  // namespace penrose
