#pragma once
//! \file radial_profile.hpp
//! Scalar field on [0, S_max] evaluable with two derivatives.

#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "penrose/numerics.hpp"

namespace penrose {

class RadialProfile {
 public:
  using Formula = std::function<Jet(double)>;

  //! Zero profile on [0, 1]; mostly a placeholder for absent components.
  RadialProfile();

  static RadialProfile closed_form(double s_max, Formula f);
  static RadialProfile constant(double s_max, double value);
  static RadialProfile zero(double s_max) { return constant(s_max, 0.0); }

  //! Monotone cubic through values only; at least 256 strictly increasing nodes.
  static RadialProfile sampled(std::vector<double> s, std::vector<double> values);

  //! Quintic Hermite through values with both derivatives at every node.
  static RadialProfile sampled(std::vector<double> s, std::vector<double> values,
                               std::vector<double> d1, std::vector<double> d2);

  double s_max() const { return s_max_; }
  bool is_sampled() const { return !nodes_.empty(); }
  //! True only for profiles built as exact zero constants.
  bool is_zero() const { return zero_; }
  std::span<const double> nodes() const { return nodes_; }

  //! Throws a domain error outside [0, S_max] (with a relative slack of 1e-12).
  Jet jet(double s) const;
  double operator()(double s) const { return jet(s).v; }

  //! c * profile, keeping the node set.
  RadialProfile scaled(double c) const;

  //! n points spread over [0, S_max]: the nodes for sampled profiles, else a
  //! grid that is uniform in log(1 + s).
  std::vector<double> grid(std::size_t n = 2000) const;

 private:
  double s_max_ = 1.0;
  bool zero_ = false;
  std::vector<double> nodes_;
  std::shared_ptr<const Formula> eval_;
};

}  // namespace penrose
