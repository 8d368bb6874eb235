#include <cmath>

#include <doctest.h>

#include "penrose/errors.hpp"
#include "penrose/numerics.hpp"
#include "penrose/orbit_geometry.hpp"

using namespace penrose;
using doctest::Approx;

TEST_SUITE("orbit_geometry") {
  TEST_CASE("dimensions") {
    CHECK(orbit_dimension(Berger{2, 0.0}) == 5);
    CHECK(orbit_dimension(SpTriple{1, 1, 1, 1}) == 7);
    CHECK(orbit_dimension(SpTriple{2, 1, 1, 1}) == 11);
    CHECK(orbit_dimension(Spin9{1.0}) == 15);
    CHECK(orbit_dimension(SU2{1, 2, 3}) == 3);
  }

  TEST_CASE("round points have round scalar curvature") {
    CHECK(orbit_scalar_curvature(Berger{1, 0.0}, 1.0) == Approx(6.0).epsilon(1e-14));
    CHECK(orbit_scalar_curvature(SU2{1, 1, 1}, 1.0) == Approx(6.0).epsilon(1e-14));
    CHECK(orbit_scalar_curvature(Spin9{1.0}, 1.0) == Approx(210.0).epsilon(1e-14));
    CHECK(orbit_scalar_curvature(SpTriple{1, 1, 1, 1}, 1.0) == Approx(42.0).epsilon(1e-14));
    for (const OrbitClass o : {OrbitClass{Berger{3, 0.0}}, OrbitClass{SpTriple{2, 1, 1, 1}},
                               OrbitClass{RoundSphere{4}}}) {
      const int k = orbit_dimension(o);
      for (double rho : {0.5, 2.0})
        CHECK(orbit_scalar_curvature(o, rho) == Approx(k * (k - 1) / (rho * rho)).epsilon(1e-13));
    }
  }

  TEST_CASE("Berger scalar curvature from the Hopf fibration") {
    // Base scale e^{2B}, fibre scale e^{-4nB}: R = 4n(n+1)/a^2 - 2n b^2/a^4.
    for (int n : {1, 2, 3})
      for (double B : {-0.2, 0.15, 0.4})
        for (double rho : {0.7, 1.0}) {
          const double x = std::exp(-2.0 * B);
          const double R = (4.0 * n * (n + 1) * x - 2.0 * n * std::pow(x, 2 * n + 2)) / (rho * rho);
          CHECK(orbit_scalar_curvature(Berger{n, B}, rho) == Approx(R).epsilon(1e-12));
          const double I = 2.0 * n + 1.0 + std::pow(x, 2.0 * (n + 1)) - 2.0 * (n + 1) * x;
          CHECK(hawking_defect(Berger{n, B}) == Approx(I).epsilon(1e-12));
        }
  }

  TEST_CASE("volumes") {
    const double w3 = 2.0 * M_PI * M_PI;
    CHECK(orbit_volume(Berger{1, 0.3}, 2.0) == Approx(8.0 * w3).epsilon(1e-14));
    CHECK(orbit_volume(SU2{1, 1, 1}, 1.0) == Approx(w3).epsilon(1e-14));
    CHECK(orbit_volume(Spin9{4.0}, 1.0) == Approx(128.0 * sphere_volume(15)).epsilon(1e-13));
    CHECK(sphere_volume(15) == Approx(2.0 * std::pow(M_PI, 8) / 5040.0).epsilon(1e-14));
  }

  TEST_CASE("defect values") {
    CHECK(std::abs(hawking_defect(Berger{2, 0.0})) < 1e-14);
    CHECK(hawking_defect(Berger{2, 40.0}) == Approx(5.0).epsilon(1e-12));
    CHECK(std::abs(hawking_defect(SU2{1, 1, 1})) < 1e-14);
    CHECK(hawking_defect(SU2{1, 1e-8, 1}) == Approx(3.0).epsilon(1e-4));
    CHECK(std::abs(hawking_defect(Spin9{1.0})) < 1e-12);
    CHECK(std::abs(hawking_defect(SpTriple{3, 1, 1, 1})) < 1e-12);
  }

  TEST_CASE("SU(2) defect against the closed form, scale invariant") {
    for (double c1 : {0.3, 0.9, 2.5})
      for (double c2 : {0.5, 1.1, 4.0}) {
        const double p = c1 * c2;
        const double I = 3.0 + std::pow(1.0 - c1 * c1 - c2 * c2, 2) / std::pow(p, 4.0 / 3.0) -
                         4.0 * std::pow(p, 2.0 / 3.0);
        CHECK(hawking_defect(SU2{c1, c2, 1.0}) == Approx(I).epsilon(1e-12));
        CHECK(hawking_defect(SU2{3 * c1, 3 * c2, 3.0}) == Approx(I).epsilon(1e-12));
      }
  }

  TEST_CASE("bracket is 2n I_n / (2n+1)^2 on Berger spheres") {
    for (int n = 1; n <= 4; ++n)
      for (double B : {-0.4, -0.05, 0.1, 0.7}) {
        const double I = hawking_defect(Berger{n, B});
        CHECK(monotonicity_bracket(Berger{n, B}) == Approx(2.0 * n * I / ((2 * n + 1) * (2 * n + 1))).epsilon(1e-11));
      }
    CHECK(monotonicity_bracket(SU2{0.7, 1.0 / 0.7, 1.0}) ==
          Approx(2.0 / 9.0 * hawking_defect(SU2{0.7, 1.0 / 0.7, 1.0})).epsilon(1e-11));
  }

  TEST_CASE("bracket is zero at round points and positive nearby for Sp and Spin9") {
    CHECK(std::abs(monotonicity_bracket(SpTriple{1, 1, 1, 1})) < 1e-13);
    CHECK(std::abs(monotonicity_bracket(Spin9{1.0})) < 1e-13);
    CHECK(monotonicity_bracket(Spin9{1.1}) > 0.0);
    CHECK(monotonicity_bracket(SpTriple{2, 1.05, 0.97, 1.0}) > 0.0);
  }

  TEST_CASE("round point projection") {
    CHECK(std::holds_alternative<Berger>(round_point(Berger{2, 0.3})));
    CHECK(std::get<Berger>(round_point(Berger{2, 0.3})).B == 0.0);
  }

  TEST_CASE("invalid parameters") {
    CHECK_THROWS_AS(validate(SU2{-1, 1, 1}), Error);
    CHECK_THROWS_AS(validate(Spin9{0.0}), Error);
    CHECK_THROWS_AS(validate(Berger{0, 0.0}), Error);
    CHECK_THROWS_AS(orbit_scalar_curvature(Berger{1, 0.0}, -1.0), Error);
  }
}
