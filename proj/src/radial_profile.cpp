#include "penrose/radial_profile.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <math.h>  // pchip calls isnan unqualified
#include <boost/math/interpolators/pchip.hpp>
#include <boost/math/interpolators/quintic_hermite.hpp>

#include "penrose/errors.hpp"

namespace penrose {

namespace {

constexpr std::size_t kMinNodes = 256;

void check_nodes(const std::vector<double>& s, std::size_t n_values) {
  if (s.size() < kMinNodes)
    fail(ErrorKind::domain, "sampled profile needs at least 256 nodes, got " + std::to_string(s.size()));
  if (n_values != s.size()) fail(ErrorKind::domain, "sampled profile column length mismatch");
  if (s.front() != 0.0) fail(ErrorKind::domain, "sampled profile must start at s = 0");
  for (std::size_t i = 1; i < s.size(); ++i)
    if (!(s[i] > s[i - 1])) fail(ErrorKind::domain, "sampled profile nodes must increase strictly");
}

}  // namespace

RadialProfile::RadialProfile()
    : zero_(true),
      eval_(std::make_shared<const Formula>([](double) { return Jet{}; })) {}

RadialProfile RadialProfile::closed_form(double s_max, Formula f) {
  if (!(s_max > 0.0) || !std::isfinite(s_max)) fail(ErrorKind::domain, "S_max must be positive");
  RadialProfile p;
  p.s_max_ = s_max;
  p.zero_ = false;
  p.eval_ = std::make_shared<const Formula>(std::move(f));
  return p;
}

RadialProfile RadialProfile::constant(double s_max, double value) {
  if (!(s_max > 0.0) || !std::isfinite(s_max)) fail(ErrorKind::domain, "S_max must be positive");
  RadialProfile p;
  p.s_max_ = s_max;
  p.zero_ = value == 0.0;
  p.eval_ = std::make_shared<const Formula>([value](double) { return Jet{value, 0.0, 0.0}; });
  return p;
}

RadialProfile RadialProfile::sampled(std::vector<double> s, std::vector<double> values) {
  check_nodes(s, values.size());
  RadialProfile p;
  p.s_max_ = s.back();
  p.zero_ = false;
  p.nodes_ = s;
  auto spline = std::make_shared<boost::math::interpolators::pchip<std::vector<double>>>(
      std::vector<double>(s), std::move(values));
  // Node slopes of the monotone cubic, used to recover the second derivative
  // of the cubic Hermite piece containing s.
  std::vector<double> slope(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) slope[i] = spline->prime(s[i]);
  auto x = std::make_shared<const std::vector<double>>(std::move(s));
  auto m = std::make_shared<const std::vector<double>>(std::move(slope));
  p.eval_ = std::make_shared<const Formula>([spline, x, m](double t) {
    const auto& xs = *x;
    std::size_t i = std::upper_bound(xs.begin(), xs.end(), t) - xs.begin();
    i = std::clamp<std::size_t>(i, 1, xs.size() - 1) - 1;
    const double h = xs[i + 1] - xs[i];
    const double u = (t - xs[i]) / h;
    const double y0 = (*spline)(xs[i]), y1 = (*spline)(xs[i + 1]);
    const double m0 = (*m)[i], m1 = (*m)[i + 1];
    const double d2 = ((12.0 * u - 6.0) * (y0 - y1) + h * ((6.0 * u - 4.0) * m0 + (6.0 * u - 2.0) * m1)) / (h * h);
    return Jet{(*spline)(t), spline->prime(t), d2};
  });
  return p;
}

RadialProfile RadialProfile::sampled(std::vector<double> s, std::vector<double> values,
                                     std::vector<double> d1, std::vector<double> d2) {
  check_nodes(s, values.size());
  if (d1.size() != s.size() || d2.size() != s.size())
    fail(ErrorKind::domain, "sampled profile column length mismatch");
  RadialProfile p;
  p.s_max_ = s.back();
  p.zero_ = false;
  p.nodes_ = s;
  auto spline = std::make_shared<boost::math::interpolators::quintic_hermite<std::vector<double>>>(
      std::move(s), std::move(values), std::move(d1), std::move(d2));
  p.eval_ = std::make_shared<const Formula>([spline](double t) {
    return Jet{(*spline)(t), spline->prime(t), spline->double_prime(t)};
  });
  return p;
}

Jet RadialProfile::jet(double s) const {
  const double slack = 1e-12 * std::max(1.0, s_max_);
  if (!(s >= -slack && s <= s_max_ + slack))
    fail(ErrorKind::domain, "profile evaluated outside [0, S_max] at s = " + std::to_string(s));
  s = std::clamp(s, 0.0, s_max_);
  return (*eval_)(s);
}

RadialProfile RadialProfile::scaled(double c) const {
  RadialProfile p = *this;
  p.zero_ = zero_ || c == 0.0;
  auto base = eval_;
  p.eval_ = std::make_shared<const Formula>([base, c](double t) {
    const Jet j = (*base)(t);
    return Jet{c * j.v, c * j.d1, c * j.d2};
  });
  return p;
}

std::vector<double> RadialProfile::grid(std::size_t n) const {
  if (is_sampled()) return nodes_;
  std::vector<double> g(std::max<std::size_t>(n, 2));
  const double top = std::log1p(s_max_);
  for (std::size_t i = 0; i < g.size(); ++i)
    g[i] = std::expm1(top * double(i) / double(g.size() - 1));
  g.back() = s_max_;
  return g;
}

}  // namespace penrose
