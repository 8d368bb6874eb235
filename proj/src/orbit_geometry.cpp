#include "penrose/orbit_geometry.hpp"

#include <cmath>
#include <string>

#include "penrose/errors.hpp"
#include "penrose/numerics.hpp"

namespace penrose {

namespace {

template <class... Ts>
struct overloaded : Ts... { using Ts::operator()...; };

void positive(double x, const char* what) {
  if (!(x > 0.0) || !std::isfinite(x))
    fail(ErrorKind::domain, std::string(what) + " must be positive and finite");
}

// Scalar curvature of the unit-scale metric.
double unit_scalar_curvature(const OrbitClass& orbit) {
  return std::visit(
      overloaded{
          [](const RoundSphere& o) { return double(o.dim) * (o.dim - 1); },
          [](const Berger& o) {
            const double n = o.n;
            return -2.0 * n * (std::exp(-4.0 * (n + 1) * o.B) - 2.0 * (n + 1) * std::exp(-2.0 * o.B));
          },
          [](const SU2& o) {
            const double a = o.c1 * o.c1, b = o.c2 * o.c2, c = o.c3 * o.c3;
            return 2.0 / (a * b * c) * (2.0 * a * (b + c) - a * a - (b - c) * (b - c));
          },
          [](const SpTriple& o) {
            const double c1 = o.c1, c2 = o.c2, c3 = o.c3, n = o.n;
            const double fibre = c1 * c1 + c2 * c2 + c3 * c3 - (c2 - c3) * (c2 - c3) -
                                 (c3 - c1) * (c3 - c1) - (c1 - c2) * (c1 - c2);
            return 2.0 / (c1 * c2 * c3) * fibre - 4.0 * n * (c1 + c2 + c3) + 16.0 * n * n + 32.0 * n;
          },
          [](const Spin9& o) { return 42.0 / o.c - 56.0 * o.c + 224.0; },
      },
      orbit);
}

// Volume of the unit-scale metric divided by the unit sphere volume.
double unit_volume_factor(const OrbitClass& orbit) {
  return std::visit(
      overloaded{
          [](const RoundSphere&) { return 1.0; },
          [](const Berger&) { return 1.0; },
          [](const SU2& o) { return o.c1 * o.c2 * o.c3; },
          [](const SpTriple& o) { return std::sqrt(o.c1 * o.c2 * o.c3); },
          [](const Spin9& o) { return std::pow(o.c, 3.5); },
      },
      orbit);
}

}  // namespace

void validate(const OrbitClass& orbit) {
  std::visit(overloaded{
                 [](const RoundSphere& o) {
                   if (o.dim < 1) fail(ErrorKind::domain, "round sphere dimension must be >= 1");
                 },
                 [](const Berger& o) {
                   if (o.n < 1) fail(ErrorKind::domain, "Berger index n must be >= 1");
                   if (!std::isfinite(o.B)) fail(ErrorKind::domain, "Berger squashing must be finite");
                 },
                 [](const SU2& o) {
                   positive(o.c1, "c1"); positive(o.c2, "c2"); positive(o.c3, "c3");
                 },
                 [](const SpTriple& o) {
                   if (o.n < 0) fail(ErrorKind::domain, "Sp index n must be >= 0");
                   positive(o.c1, "c1"); positive(o.c2, "c2"); positive(o.c3, "c3");
                 },
                 [](const Spin9& o) { positive(o.c, "c"); },
             },
             orbit);
}

int orbit_dimension(const OrbitClass& orbit) {
  return std::visit(overloaded{
                        [](const RoundSphere& o) { return o.dim; },
                        [](const Berger& o) { return 2 * o.n + 1; },
                        [](const SU2&) { return 3; },
                        [](const SpTriple& o) { return 4 * o.n + 3; },
                        [](const Spin9&) { return 15; },
                    },
                    orbit);
}

double orbit_scalar_curvature(const OrbitClass& orbit, double rho) {
  validate(orbit);
  positive(rho, "rho");
  return unit_scalar_curvature(orbit) / (rho * rho);
}

double orbit_volume(const OrbitClass& orbit, double rho) {
  validate(orbit);
  positive(rho, "rho");
  const int k = orbit_dimension(orbit);
  return std::pow(rho, k) * unit_volume_factor(orbit) * sphere_volume(k);
}

double hawking_defect(const OrbitClass& orbit) {
  validate(orbit);
  return std::visit(
      overloaded{
          [](const RoundSphere&) { return 0.0; },
          [](const Berger& o) {
            const double n = o.n, r = std::exp(-2.0 * o.B);
            return 2.0 * n + 1.0 + std::pow(r, 2.0 * (n + 1.0)) - 2.0 * (n + 1.0) * r;
          },
          [](const SU2& o) {
            const double a = o.c1 / o.c3, b = o.c2 / o.c3;
            const double p = a * b, q = 1.0 - a * a - b * b;
            return 3.0 + q * q / std::pow(p, 4.0 / 3.0) - 4.0 * std::pow(p, 2.0 / 3.0);
          },
          [&orbit](const SpTriple& o) {
            const double k = 4.0 * o.n + 3.0;
            return (k - 1.0) * k - std::pow(o.c1 * o.c2 * o.c3, 1.0 / k) * unit_scalar_curvature(orbit);
          },
          [&orbit](const Spin9& o) {
            return 210.0 - std::pow(o.c, 7.0 / 15.0) * unit_scalar_curvature(orbit);
          },
      },
      orbit);
}

double monotonicity_bracket(const OrbitClass& orbit) {
  validate(orbit);
  const int k = orbit_dimension(orbit);  // d - 1
  const double w = sphere_volume(k);
  const double area = orbit_volume(orbit, 1.0);
  const double total_R = orbit_scalar_curvature(orbit, 1.0) * area;
  return double(k - 1) / k -
         total_R / (double(k) * k * std::pow(w, 2.0 / k) * std::pow(area, double(k - 2) / k));
}

OrbitClass round_point(const OrbitClass& orbit) {
  return std::visit(overloaded{
                        [](const RoundSphere& o) -> OrbitClass { return o; },
                        [](const Berger& o) -> OrbitClass { return Berger{o.n, 0.0}; },
                        [](const SU2&) -> OrbitClass { return SU2{1, 1, 1}; },
                        [](const SpTriple& o) -> OrbitClass { return SpTriple{o.n, 1, 1, 1}; },
                        [](const Spin9&) -> OrbitClass { return Spin9{1}; },
                    },
                    orbit);
}

}  // namespace penrose
