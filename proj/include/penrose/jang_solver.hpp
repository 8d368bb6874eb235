#pragma once
//! \file jang_solver.hpp
//! Radial generalized Jang equation coupled to inverse mean curvature flow.
//! Unknown v in (-1, 1); the Jang metric is ds^2/(1 - v^2) + g_orbit(s).

#include <string>
#include <variant>
#include <vector>

#include "penrose/initial_data.hpp"

namespace penrose {

struct Interior { double alpha; };
struct PastHorizonUnit {};    // v(0) = +1
struct FutureHorizonUnit {};  // v(0) = -1
struct DegenerateZero {};     // H(0) = 0, v(0) = 0

using JangBC = std::variant<Interior, PastHorizonUnit, FutureHorizonUnit, DegenerateZero>;

std::string to_string(const JangBC& bc);

//! Horizon-type rule: H(0) = 0 -> DegenerateZero; theta_-(0) = 0 -> past;
//! theta_+(0) = 0 -> future. Precondition error otherwise.
JangBC boundary_rule(const InitialDataSet& data, double tol = 1e-9);

struct JangOptions {
  double rtol = 1e-10;
  double atol = 1e-12;
  //! Divides both tolerances by 32^refine (refine = 1 halves the step of a
  //! fifth order scheme).
  int refine = 0;
};

struct JangSolution {
  RadialProfile v;
  RadialProfile sbar;  // sbar(s)
  RadialProfile phi;   // sqrt(1 - v^2) R_A'
  JangBC bc;
  //! Flat: fitted exponent of |v| + s|v'|; hyperbolic: fitted rate of |v| + |v'|.
  //! Fitted on the outer half of the range where that sum exceeds 1e3 atol.
  //! -inf (flat) and +inf (hyperbolic) when v vanishes identically.
  double decay = 0;
  int clamps = 0;
  // Node table.
  std::vector<double> s, vs, dv, sb, ph;
};

//! v' from (1 - v^2) v' + (1 - v^2) F_-+ +- theta_-+ = 0; branch -1 uses
//! (F_-, theta_-), branch +1 uses (F_+, theta_+).
double jang_rhs(const InitialDataSet& data, double s, double v, int branch);

JangSolution solve_jang(const InitialDataSet& data, const JangBC& bc, const JangOptions& opt = {});

//! Time-symmetric data for the Jang metric, parameterized by sbar.
InitialDataSet jang_metric(const InitialDataSet& data, const JangSolution& sol);

//! phi X(nu_bar) = v R_A' (Tr_Sigma k - v H).
double boundary_flux(const InitialDataSet& data, const JangSolution& sol, double s);
//! The same quantity written as v R_A' ((1 - v) H - theta_-).
double boundary_flux_flat_form(const InitialDataSet& data, const JangSolution& sol, double s);

}  // namespace penrose
