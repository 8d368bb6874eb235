#pragma once
//! \file orbit_geometry.hpp
//! Homogeneous metrics on spheres: round, Berger, SU(2), Sp(n+1) and Spin(9).
//! Shape parameters are taken at unit overall scale; rho multiplies the metric
//! as rho^2 g_orbit.

#include <variant>

namespace penrose {

struct RoundSphere { int dim; };
//! Squashed S^{2n+1}: fibre scale e^{-2nB}, base scale e^{B}.
struct Berger { int n; double B; };
//! (1/4) sum c_i^2 sigma_i^2 on S^3.
struct SU2 { double c1, c2, c3; };
//! S^{4n+3} with the three Hopf fibre directions scaled by c_i.
struct SpTriple { int n; double c1, c2, c3; };
//! S^15 with the S^7 fibre scaled by c.
struct Spin9 { double c; };

using OrbitClass = std::variant<RoundSphere, Berger, SU2, SpTriple, Spin9>;

//! Throws a domain error unless every parameter is admissible.
void validate(const OrbitClass& orbit);

int orbit_dimension(const OrbitClass& orbit);
double orbit_scalar_curvature(const OrbitClass& orbit, double rho);
double orbit_volume(const OrbitClass& orbit, double rho);

//! Scale invariant defect: zero at the round point, and for the SU families
//! nonnegative everywhere.
double hawking_defect(const OrbitClass& orbit);

//! (d-2)/(d-1) - int R_S / ((d-1)^2 w^{2/(d-1)} |S|^{(d-3)/(d-1)}), evaluated
//! directly from scalar curvature and volume. Zero on round spheres.
double monotonicity_bracket(const OrbitClass& orbit);

//! Round member of the same class and dimension.
OrbitClass round_point(const OrbitClass& orbit);

}  // namespace penrose
