#include "penrose/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "penrose/errors.hpp"

namespace penrose {

const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::domain: return "domain";
    case ErrorKind::precondition: return "precondition";
    case ErrorKind::construction: return "construction";
    case ErrorKind::numeric: return "numeric";
    case ErrorKind::asymptotics: return "asymptotics";
    case ErrorKind::singularity: return "singularity";
    case ErrorKind::blowup: return "blowup";
    case ErrorKind::stiffness: return "stiffness";
    case ErrorKind::flow: return "flow";
    case ErrorKind::io: return "io";
  }
  return "unknown";
}

double sphere_volume(int k) {
  if (k < 0) fail(ErrorKind::domain, "sphere dimension must be nonnegative");
  const double h = 0.5 * (k + 1);
  return 2.0 * std::pow(std::numbers::pi, h) / std::tgamma(h);
}

double Extrapolation::spread() const {
  const double scale = std::max(std::abs(limit), 1e-300);
  return std::max(std::abs(limit - linear), std::abs(limit - last)) / scale;
}

Extrapolation richardson3(const double x[3], const double y[3]) {
  // Lagrange form at 0.
  double q = 0.0;
  for (int i = 0; i < 3; ++i) {
    double w = 1.0;
    for (int j = 0; j < 3; ++j)
      if (j != i) w *= x[j] / (x[j] - x[i]);
    q += w * y[i];
  }
  // The two samples with the smallest x.
  int order[3] = {0, 1, 2};
  std::sort(order, order + 3, [&](int a, int b) { return x[a] < x[b]; });
  const int a = order[0], b = order[1];
  const double lin = (x[b] * y[a] - x[a] * y[b]) / (x[b] - x[a]);
  return Extrapolation{q, lin, y[a]};
}

namespace {

double slope_fit(std::span<const double> x, std::span<const double> y, bool log_x) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t m = 0;
  for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
    if (y[i] == 0.0 || !std::isfinite(y[i])) continue;
    const double X = log_x ? std::log(x[i]) : x[i];
    const double Y = std::log(std::abs(y[i]));
    sx += X; sy += Y; sxx += X * X; sxy += X * Y;
    ++m;
  }
  if (m == 0) return kNegInf;
  if (m < 2) fail(ErrorKind::asymptotics, "tail fit needs at least two nonzero samples");
  const double den = m * sxx - sx * sx;
  if (den <= 0) fail(ErrorKind::asymptotics, "degenerate tail fit abscissae");
  return (m * sxy - sx * sy) / den;
}

}  // namespace

double loglog_slope(std::span<const double> x, std::span<const double> y) {
  return slope_fit(x, y, true);
}

double semilog_slope(std::span<const double> x, std::span<const double> y) {
  return slope_fit(x, y, false);
}

Extrapolation decade_extrapolation(std::span<const double> x, std::span<const double> y,
                                   double ratio) {
  if (x.size() != y.size() || x.size() < 3)
    fail(ErrorKind::asymptotics, "extrapolation needs at least three samples");
  std::size_t lo = 0, hi = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0)) fail(ErrorKind::asymptotics, "extrapolation abscissae must be positive");
    if (x[i] < x[lo]) lo = i;
    if (x[i] > x[hi]) hi = i;
  }
  const double top = std::min(x[lo] * ratio, x[hi]);
  auto nearest = [&](double target) {
    std::size_t best = lo;
    for (std::size_t i = 0; i < x.size(); ++i)
      if (std::abs(std::log(x[i] / target)) < std::abs(std::log(x[best] / target))) best = i;
    return best;
  };
  const std::size_t mid = nearest(std::sqrt(x[lo] * top)), far = nearest(top);
  if (mid == lo || far == mid || far == lo)
    fail(ErrorKind::asymptotics, "tail window too short for extrapolation");
  const double xs[3] = {x[lo], x[mid], x[far]};
  const double ys[3] = {y[lo], y[mid], y[far]};
  return richardson3(xs, ys);
}

double settled_limit(std::span<const double> x, std::span<const double> y, std::span<const double> xw,
                     std::span<const double> yw, double ratio, double plateau_tol, const char* what) {
  const Extrapolation e = decade_extrapolation(x, y, ratio);
  if (e.spread() <= 1e-3) return e.limit;
  double x0 = INFINITY;
  for (double v : xw) x0 = std::min(x0, v);
  double lo = INFINITY, hi = -INFINITY, sum = 0.0;
  int count = 0;
  for (std::size_t i = 0; i < xw.size() && i < yw.size(); ++i) {
    if (xw[i] > 2.0 * x0) continue;
    lo = std::min(lo, yw[i]);
    hi = std::max(hi, yw[i]);
    sum += yw[i];
    ++count;
  }
  if (count >= 3 && hi - lo <= plateau_tol) return sum / count;
  fail(ErrorKind::asymptotics, std::string(what) + " limit did not settle (relative spread " +
                                   std::to_string(e.spread()) + ")");
}

}  // namespace penrose
