#include <cmath>
#include <string>

#include <doctest.h>

#include "penrose/errors.hpp"
#include "penrose/families.hpp"
#include "penrose/penrose_verifier.hpp"
#include "penrose/table_io.hpp"
#include "support.hpp"

using namespace penrose;
using doctest::Approx;

TEST_SUITE("penrose_verifier") {
  TEST_CASE("equality case through both pipelines") {
    const InitialDataSet d = build_family(Schwarzschild{1, 2.0});
    const PenroseReport r = verify_riemannian(d);
    CHECK(r.pipeline == "imcf-only");
    CHECK(std::abs(r.margin) <= 1e-5);
    const PenroseReport s = verify_spacetime(d);
    CHECK(s.pipeline == "jang-imcf");
    CHECK(std::abs(s.margin) <= 1e-6);
    CHECK(s.rigidity_gap <= 1e-8);
    CHECK(verify(d).pipeline == "imcf-only");
  }

  TEST_CASE("hyperbolic time-symmetric data use the shifted curvature floor") {
    const PenroseReport r = verify(build_family(SchwarzschildAdS{1, 1.0}));
    CHECK(r.pipeline == "imcf-only");
    CHECK(std::abs(r.margin) <= 1e-5);
  }

  TEST_CASE("Myers-Perry report") {
    const PenroseReport r = verify(build_family(MyersPerry{1, 1.0, 0.5}));
    CHECK(r.pipeline == "jang-imcf");
    CHECK(r.n == 1);
    CHECK(r.d == 4);
    CHECK(r.margin / r.bound == Approx(0.1113).epsilon(1e-3 / 0.1113));
    CHECK(std::abs(r.dec_margin) < 1e-7);
    CHECK(r.note("bc") == "degenerate-zero");
    CHECK(r.note("no_such_key").empty());
    const std::string kv = to_key_value(r);
    CHECK(kv.find("margin = ") != std::string::npos);
    CHECK(kv.find("pipeline = jang-imcf") != std::string::npos);
  }

  TEST_CASE("margin scales with the mass under rescaling") {
    // rho -> lambda rho: m -> lambda^2 m, a -> lambda a for n = 1.
    const double base = verify(build_family(MyersPerry{1, 1.0, 0.4})).margin;
    for (double lambda : {0.5, 2.0}) {
      const double scaled = verify(build_family(MyersPerry{1, lambda * lambda, lambda * 0.4})).margin;
      CHECK(scaled == Approx(lambda * lambda * base).epsilon(1e-4));
    }
  }

  TEST_CASE("closed-form cross-check") {
    const auto rows = closed_form_crosscheck(MyersPerry{1, 1.0, 0.5});
    CHECK(rows.size() >= 6);
    bool saw_omega = false;
    for (const auto& e : rows) {
      CAPTURE(e.quantity);
      CHECK(e.rel_error <= 1e-6);
      if (e.quantity == "angular_velocity") {
        saw_omega = true;
        const double r4 = std::pow(1 + std::sqrt(0.5), 2);
        CHECK(e.closed == Approx(1.0 / (r4 + 0.5)).epsilon(1e-12));
        CHECK(e.numeric == Approx(0.292893).epsilon(1e-5 / 0.29));
      }
    }
    CHECK(saw_omega);
    // a = 0 reproduces Schwarzschild.
    const auto mp0 = closed_form_crosscheck(MyersPerry{1, 1.0, 0.0});
    const auto sch = closed_form_crosscheck(Schwarzschild{1, 1.0});
    for (const auto& e : mp0)
      for (const auto& f : sch)
        if (e.quantity == f.quantity) CHECK(e.closed == Approx(f.closed).epsilon(1e-12));
  }

  TEST_CASE("bc override") {
    VerifyOptions o;
    o.bc = DegenerateZero{};
    const PenroseReport r = verify(build_family(Schwarzschild{1, 1.0}), o);
    CHECK(r.pipeline == "jang-imcf");
    CHECK(r.note("bc") == "degenerate-zero");
  }

  TEST_CASE("preconditions") {
    try {
      verify(load_data_table(PENROSE_TEST_DATA "/trapped.tbl"));
      FAIL("expected a precondition error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::precondition);
      CHECK(std::string(e.what()).find("outermost") != std::string::npos);
    }
    CHECK_THROWS_AS(verify_riemannian(build_family(MyersPerry{1, 1.0, 0.5})), Error);
  }
}
