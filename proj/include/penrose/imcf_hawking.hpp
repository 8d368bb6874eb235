#pragma once
//! \file imcf_hawking.hpp
//! Radial inverse mean curvature flow through the level sets of a
//! time-symmetric data set, with Hawking masses along the way.

#include <vector>

#include "penrose/initial_data.hpp"

namespace penrose {

//! 1/2 (A/w)^{(d-2)/(d-1)}, plus 1/2 (A/w)^{d/(d-1)} when hyperbolic.
double penrose_bound(double area, int d, bool hyperbolic);

//! Hawking mass of Sigma_s written through its area and mean curvature; at
//! H = 0 it coincides with penrose_bound bit for bit.
double hawking_mass(const InitialDataSet& data, double s, bool hyperbolic);

//! (d-2)/(d-1) - int R_S / ((d-1)^2 w^{2/(d-1)} |S|^{(d-3)/(d-1)}) for Sigma_s.
double monotonicity_defect(const InitialDataSet& data, double s);

struct FlowRecord {
  double sbar;
  double t;
  double area;
  double H;
  double mH;
  double defect;
};

struct FlowTrace {
  int d = 0;
  bool hyperbolic = false;
  std::vector<FlowRecord> records;
  double min_increment = 0;  // smallest mH[i+1] - mH[i] where roundoff is negligible
  double max_area_law_error = 0;  // max |area / (area_0 e^t) - 1|
};

//! Records at every grid node. Needs k = 0 and H > 0 for s > 0.
FlowTrace flow_trace(const InitialDataSet& data);

//! Richardson limit of the Hawking mass in 1/R_A (flat) or e^{-2 sbar}
//! (hyperbolic) over the last decade of trustworthy samples, or the mean of
//! a plateau over the outer factor of two when the orders disagree.
double energy_limit(const FlowTrace& trace);

//! max over the trace of defect * area^{(d-3)/(d-1)}.
double rigidity_gap(const FlowTrace& trace);

}  // namespace penrose
