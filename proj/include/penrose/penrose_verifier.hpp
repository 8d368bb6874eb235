#pragma once
//! \file penrose_verifier.hpp
//! End-to-end checks of m >= 1/2 (A/w)^{(d-2)/(d-1)} (plus the hyperbolic
//! term) and comparisons with the closed forms of the black-hole families.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "penrose/families.hpp"
#include "penrose/jang_solver.hpp"

namespace penrose {

struct PenroseReport {
  std::string pipeline;  // jang-imcf | imcf-only | conformal-then-imcf
  int n = 0;
  int d = 0;
  double energy = 0;
  double area = 0;
  double bound = 0;
  double margin = 0;
  double rigidity_gap = 0;
  double dec_margin = 0;
  double decay_exponent = 0;
  std::vector<std::pair<std::string, std::string>> notes;

  std::string note(const std::string& key) const;  // empty when absent
};

struct VerifyOptions {
  std::optional<JangBC> bc;  // overrides the horizon-type rule
  JangOptions jang;
  //! Horizon position the conformal flow must pass; negative selects the
  //! defect threshold.
  double conformal_target = -1;
  double conformal_dt = 1e-2;
  double conformal_t_max = 20;
};

//! Berger or SU(2) data satisfying the dominant energy condition:
//! Jang equation, then inverse mean curvature flow on the Jang metric.
PenroseReport verify_spacetime(const InitialDataSet& data, const VerifyOptions& opt = {});

//! Time-symmetric data with R >= 0. Berger/SU(2): flow on the data. Sp and
//! Spin(9): conformal flow until the horizon passes the defect threshold,
//! then inverse mean curvature flow; the bound uses the original area.
PenroseReport verify_riemannian(const InitialDataSet& data, const VerifyOptions& opt = {});

//! verify_spacetime for data with k != 0, verify_riemannian otherwise.
PenroseReport verify(const InitialDataSet& data, const VerifyOptions& opt = {});

//! `key = value` lines with the fixed key set; notes are joined as k=v pairs.
std::string to_key_value(const PenroseReport& report);

struct CrosscheckEntry {
  std::string quantity;
  double numeric = 0;
  double closed = 0;
  double rel_error = 0;
};

//! Horizon radius, area, energy, angular momentum, angular velocity and the
//! mass relation, numeric vs closed form.
std::vector<CrosscheckEntry> closed_form_crosscheck(const BlackHoleFamily& family);

}  // namespace penrose
