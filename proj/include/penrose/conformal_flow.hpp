#pragma once
//! \file conformal_flow.hpp
//! Radial conformal flow g_t = u_t^{4/(d-2)} g with du/dt = v_t, where v_t is
//! g-harmonic outside the horizon Sigma_{s_t}, zero inside, and -> -e^{-t}.
//!
//! Outside s_t every v_t is an affine function of Q(s) = int_s^inf dr/|Sigma_r|,
//! so u = e^{-t} + beta(t) Q(s) there; inside, u keeps the value it had when
//! the horizon passed.

#include <array>
#include <memory>
#include <vector>

#include "penrose/initial_data.hpp"

namespace penrose {

//! Base quantities shared by every state of one run.
struct ConformalBase {
  InitialDataSet data;
  int d = 0;
  std::vector<double> s;     // base grid
  std::vector<double> area;  // |Sigma_s|_g at the nodes
  std::vector<double> H;     // mean curvature at the nodes
  RadialProfile Q;           // int_s^inf dr/|Sigma_r|
  double mass = 0;           // ADM energy of the base
  double tail = 0;           // lim Q R_A^{d-2}
};

struct ConformalState {
  double t = 0;
  double s_t = 0;     // horizon location in base coordinates
  double area = 0;    // |Sigma_{s_t}| in g_t
  double mass_estimate = 0;
  double beta = 0;    // u = e^{-t} + beta Q outside s_t
  //! (s_t, e^{-t}, beta) after every accepted substep, for the frozen interior.
  std::vector<std::array<double, 3>> history;
  std::shared_ptr<const ConformalBase> base;

  double u(double s) const;
  //! Conformal factor on the base grid (with s_t inserted as a node).
  RadialProfile factor() const;
};

//! State at t = 0. Needs flat, time-symmetric data with H(0) = 0 and H > 0 beyond.
ConformalState initial_state(const InitialDataSet& base);

//! v_t(s) = -e^{-t} (Q(s_t) - Q(s)) / Q(s_t) for s >= s_t, 0 inside.
RadialProfile harmonic_radial(const ConformalState& state);

//! sup over interior nodes beyond s_t of |v'' + H v'| (fourth order differences).
double harmonicity_residual(const ConformalState& state);

//! Exponential Euler in beta with a Richardson halving check; substeps are
//! halved while the two estimates of u differ by more than 1e-6. dt <= 1e-2.
ConformalState conformal_step(const ConformalState& state, double dt);

struct ConformalRun {
  std::vector<ConformalState> states;  // at t = 0, dt, 2 dt, ...
  double t_reach = -1;  // first grid time with s_t >= target, -1 if none
};

//! Runs to t_stop, or only until s_t >= target when stop_at_target is set.
ConformalRun run_conformal(const InitialDataSet& base, double t_stop, double dt = 1e-2,
                           double target = -1, bool stop_at_target = false);

//! The region s >= s_t with metric g_t, as time-symmetric data in its own
//! arclength, starting at the (minimal) horizon.
InitialDataSet conformal_data(const ConformalState& state);

//! Smallest grid s beyond which the orbit defect stays nonnegative.
double defect_threshold(const InitialDataSet& data);

}  // namespace penrose
