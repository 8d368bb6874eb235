#pragma once
//! \file numerics.hpp
//! Small numerical helpers: jets, sphere volumes, tail fits and extrapolation.

#include <limits>
#include <span>
#include <string>

namespace penrose {

//! Value with first and second derivative.
struct Jet {
  double v = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
};

//! Volume of the unit k-sphere.
double sphere_volume(int k);

//! Result of extrapolating a sequence to x = 0.
struct Extrapolation {
  double limit = 0.0;   // quadratic (three point) extrapolant
  double linear = 0.0;  // two point extrapolant from the last two samples
  double last = 0.0;    // sample closest to x = 0
  double spread() const;  // relative disagreement between the orders
};

//! Neville extrapolation through three samples (x_i, y_i), x_i > 0 distinct.
Extrapolation richardson3(const double x[3], const double y[3]);

//! Least squares slope of log|y| against log x. Points with y == 0 are dropped.
//! Returns -infinity when every sample is zero.
double loglog_slope(std::span<const double> x, std::span<const double> y);

//! Least squares slope of log|y| against x (exponential rate fits).
//! Returns -infinity when every sample is zero.
double semilog_slope(std::span<const double> x, std::span<const double> y);

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

}  // namespace penrose

namespace penrose {

//! Richardson extrapolation to x -> 0 from three samples: the one with the
//! smallest x, and those nearest to x0*sqrt(ratio) and x0*ratio (log scale).
//! Falls back to the full sample range when it spans less than `ratio`.
Extrapolation decade_extrapolation(std::span<const double> x, std::span<const double> y,
                                   double ratio);

//! Limit at x -> 0: the decade extrapolation of (x, y) when its orders agree to
//! 1e-3; otherwise the mean over x in [x0, 2 x0] of the wider sample set
//! (xw, yw) provided it varies by at most plateau_tol there. Throws an
//! asymptotics error naming `what` when neither settles.
double settled_limit(std::span<const double> x, std::span<const double> y, std::span<const double> xw,
                     std::span<const double> yw, double ratio, double plateau_tol, const char* what);

}  // namespace penrose
