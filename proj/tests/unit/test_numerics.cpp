#include <cmath>
#include <vector>

#include <doctest.h>

#include "penrose/errors.hpp"
#include "penrose/numerics.hpp"
#include "penrose/radial_profile.hpp"

using namespace penrose;
using doctest::Approx;

namespace {
std::vector<double> log_grid(double S, std::size_t n) {
  std::vector<double> s(n);
  for (std::size_t i = 0; i < n; ++i) s[i] = std::expm1(std::log1p(S) * i / (n - 1));
  return s;
}
}  // namespace

TEST_SUITE("numerics") {
  TEST_CASE("quintic profile reproduces a smooth function and its derivatives") {
    const auto s = log_grid(50.0, 600);
    std::vector<double> v, d1, d2;
    for (double x : s) {
      v.push_back(std::sin(x / 7.0) / (1 + x));
      const double c = std::cos(x / 7.0) / 7.0, si = std::sin(x / 7.0);
      d1.push_back(c / (1 + x) - si / ((1 + x) * (1 + x)));
      d2.push_back(-si / 49.0 / (1 + x) - 2 * c / ((1 + x) * (1 + x)) + 2 * si / std::pow(1 + x, 3));
    }
    const RadialProfile p = RadialProfile::sampled(s, v, d1, d2);
    for (double x : {0.013, 1.7, 9.9, 33.3}) {
      const Jet j = p.jet(x);
      CHECK(j.v == Approx(std::sin(x / 7.0) / (1 + x)).epsilon(1e-9));
      CHECK(j.d1 == Approx(std::cos(x / 7.0) / 7.0 / (1 + x) - std::sin(x / 7.0) / ((1 + x) * (1 + x))).epsilon(1e-6));
    }
  }

  TEST_CASE("value-only profile derivative matches centred differences") {
    const auto s = log_grid(20.0, 800);
    std::vector<double> v;
    for (double x : s) v.push_back(std::exp(-0.3 * x) + x);
    const RadialProfile p = RadialProfile::sampled(s, v);
    for (std::size_t i = 100; i + 100 < s.size(); i += 97) {
      const double h = 1e-3 * (s[i + 1] - s[i]);
      const double fd = (p(s[i] + h) - p(s[i] - h)) / (2 * h);
      CHECK(p.jet(s[i]).d1 == Approx(fd).epsilon(1e-6));
    }
  }

  TEST_CASE("profile contract") {
    CHECK(RadialProfile::zero(3.0).is_zero());
    CHECK_FALSE(RadialProfile::constant(3.0, 1.0).is_zero());
    CHECK_THROWS_AS(RadialProfile::constant(3.0, 1.0)(3.5), Error);
    CHECK_NOTHROW(RadialProfile::constant(3.0, 1.0)(3.0 * (1 + 1e-13)));
    CHECK_THROWS_AS(RadialProfile::sampled(std::vector<double>{0, 1, 2}, std::vector<double>{1, 2, 3}), Error);
    auto s = log_grid(5.0, 300);
    s[10] = s[9];
    CHECK_THROWS_AS(RadialProfile::sampled(s, std::vector<double>(300, 1.0)), Error);
    const RadialProfile c = RadialProfile::closed_form(4.0, [](double x) { return Jet{x * x, 2 * x, 2}; });
    CHECK(c.scaled(-2.0)(1.5) == Approx(-4.5));
    const auto g = c.grid(100);
    CHECK(g.size() == 100);
    CHECK(g.front() == 0.0);
    CHECK(g.back() == Approx(4.0));
  }

  TEST_CASE("slopes") {
    std::vector<double> x, y, z;
    for (int i = 1; i <= 20; ++i) {
      x.push_back(10.0 * i);
      y.push_back(3.0 * std::pow(10.0 * i, -2.5));
      z.push_back(-0.5 * std::exp(-1.25 * 10.0 * i));
    }
    CHECK(loglog_slope(x, y) == Approx(-2.5).epsilon(1e-12));
    CHECK(semilog_slope(x, z) == Approx(-1.25).epsilon(1e-12));
    CHECK(loglog_slope(x, std::vector<double>(20, 0.0)) == kNegInf);
  }

  TEST_CASE("extrapolation") {
    const double x[3] = {0.1, 0.01, 0.001};
    double y[3];
    for (int i = 0; i < 3; ++i) y[i] = 2.0 + 0.7 * x[i] - 0.2 * x[i] * x[i];
    const Extrapolation e = richardson3(x, y);
    CHECK(e.limit == Approx(2.0).epsilon(1e-14));
    CHECK(e.spread() < 1e-3);

    std::vector<double> xs, ys;
    for (int i = 0; i < 50; ++i) {
      xs.push_back(std::pow(10.0, -i / 10.0));
      ys.push_back(1.0 + 0.3 * xs.back());
    }
    CHECK(settled_limit(xs, ys, xs, ys, 10.0, 1e-6, "test") == Approx(1.0).epsilon(1e-9));
    // Neither the orders nor the samples near x0 agree.
    std::vector<double> wiggle(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) wiggle[i] = 1.0 + 0.1 * std::sin(1.0 / xs[i]);
    CHECK_THROWS_AS(settled_limit(xs, wiggle, xs, wiggle, 10.0, 1e-6, "test"), Error);
  }

  TEST_CASE("sphere volumes") {
    CHECK(sphere_volume(1) == Approx(2 * M_PI));
    CHECK(sphere_volume(2) == Approx(4 * M_PI));
    CHECK(sphere_volume(3) == Approx(2 * M_PI * M_PI));
    for (int k = 2; k < 16; ++k) CHECK(sphere_volume(k) == Approx(2 * M_PI / (k - 1) * sphere_volume(k - 2)));
  }
}
