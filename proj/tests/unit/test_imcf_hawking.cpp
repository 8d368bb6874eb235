#include <cmath>

#include <doctest.h>

#include "penrose/errors.hpp"
#include "penrose/families.hpp"
#include "penrose/imcf_hawking.hpp"
#include "penrose/jang_solver.hpp"
#include "penrose/orbit_geometry.hpp"
#include "support.hpp"

using namespace penrose;
using doctest::Approx;

TEST_SUITE("imcf_hawking") {
  TEST_CASE("Hawking mass is constant on Schwarzschild slices") {
    const InitialDataSet d = build_family(Schwarzschild{1, 1.0});
    for (double s : {0.0, 0.3, 10.0, 100.0}) CHECK(hawking_mass(d, s, false) == Approx(1.0).epsilon(1e-9));
    // Far out the cancellation in 1 - R'^2 is amplified by R^{d-2}.
    CHECK(hawking_mass(d, 900.0, false) == Approx(1.0).epsilon(1e-6));
    const InitialDataSet a = build_family(SchwarzschildAdS{1, 1.0});
    for (double s : {0.0, 0.3, 2.0}) CHECK(hawking_mass(a, s, true) == Approx(1.0).epsilon(1e-8));
    CHECK(hawking_mass(a, 4.0, true) == Approx(1.0).epsilon(1e-6));
  }

  TEST_CASE("penrose bound expression") {
    const double w3 = 2 * M_PI * M_PI;
    CHECK(penrose_bound(w3 * 8.0, 4, false) == Approx(0.5 * 4.0));
    CHECK(penrose_bound(w3 * 8.0, 4, true) == Approx(0.5 * 4.0 + 0.5 * 16.0));
    CHECK(radial_hawking_mass(2.0, 0.5, 4, false) == Approx(0.5 * 4 * 0.75));
  }

  TEST_CASE("Schwarzschild trace") {
    const FlowTrace tr = flow_trace(build_family(Schwarzschild{1, 1.0}));
    CHECK(tr.d == 4);
    for (const FlowRecord& r : tr.records) CHECK(r.mH == Approx(1.0).epsilon(1e-8));
    CHECK(std::abs(tr.min_increment) <= 1e-8);
    CHECK(tr.max_area_law_error <= 1e-8);
    // Round level sets: t = (d-1) log(rho/rho_0).
    const FamilyChart c = build_family_chart(Schwarzschild{1, 1.0});
    for (std::size_t i = 0; i < tr.records.size(); i += 199)
      CHECK(tr.records[i].t == Approx(3.0 * std::log(c.r[i] / c.r[0])).epsilon(1e-8).scale(1e-12));
    for (std::size_t i = 1; i < tr.records.size(); ++i) CHECK(tr.records[i].area > tr.records[i - 1].area);
    CHECK(rigidity_gap(tr) <= 1e-8);
  }

  TEST_CASE("energy limits") {
    CHECK(energy_limit(flow_trace(build_family(Schwarzschild{2, 5.0}))) == Approx(5.0).epsilon(1e-6));
    CHECK(energy_limit(flow_trace(build_family(Schwarzschild{1, 0.37}))) == Approx(0.37).epsilon(1e-6));
    CHECK(energy_limit(flow_trace(build_family(SchwarzschildAdS{1, 1.0}))) == Approx(1.0).epsilon(1e-6));
  }

  TEST_CASE("Jang metric traces of the rotating families") {
    for (const BlackHoleFamily f : {BlackHoleFamily{MyersPerry{1, 1.0, 0.5}}, BlackHoleFamily{MyersPerryAdS{1, 2.0, 0.5}}}) {
      CAPTURE(family_name(f));
      const InitialDataSet d = build_family(f);
      const FlowTrace tr = flow_trace(jang_metric(d, solve_jang(d, boundary_rule(d))));
      CHECK(tr.records.front().mH == Approx(penrose_bound(horizon_area(d), tr.d, tr.hyperbolic)).epsilon(1e-14));
      CHECK(energy_limit(tr) == Approx(closed_form::energy(f)).epsilon(1e-4));
      CHECK(tr.min_increment >= -1e-8);
    }
  }

  TEST_CASE("defect column") {
    // Constant squashing B = 0.1, n = 2: bracket = 4 I_2(e^{-0.2}) / 25.
    const double S = 100.0;
    const InitialDataSet d =
        make_time_symmetric(2, OrbitKind::berger, Flat{4.0}, testdata::profile(S, [](auto s) { return s + 1.0; }),
                            {RadialProfile::constant(S, 0.1)});
    const double x = std::exp(-0.2);
    const double I = 5.0 + std::pow(x, 6) - 6.0 * x;
    CHECK(monotonicity_defect(d, 3.0) == Approx(4.0 * I / 25.0).epsilon(1e-12));
    CHECK(monotonicity_defect(build_family(Schwarzschild{2, 1.0}), 3.0) == Approx(0.0).scale(1e-14));
    CHECK(monotonicity_bracket(Spin9{1.1}) > 0.0);
  }

  TEST_CASE("preconditions") {
    CHECK_THROWS_AS(flow_trace(build_family(MyersPerry{1, 1.0, 0.5})), Error);
  }
}
