#pragma once
//! \file table_io.hpp
//! Plain-text tables: data sets, solver and flow exports. Numbers are written
//! with 17 significant digits; headers start with '#'.

#include <iosfwd>
#include <string>

#include "penrose/conformal_flow.hpp"
#include "penrose/imcf_hawking.hpp"
#include "penrose/initial_data.hpp"
#include "penrose/jang_solver.hpp"

namespace penrose {

//! Berger data, columns `s rho rho' rho'' B B' B'' k_a k_b k_c k_s`, header
//! `# n=<n> flat tau=<tau>` or `# n=<n> hyperbolic q=<q>`.
void write_data_table(const InitialDataSet& data, std::ostream& out);
InitialDataSet read_data_table(std::istream& in);
InitialDataSet load_data_table(const std::string& path);

//! Columns `s v v' sbar phi`, then `# bc=... decay=... clamps=...`.
void write_jang_table(const JangSolution& sol, std::ostream& out);
//! Columns `t sbar area H mH defect`.
void write_flow_table(const FlowTrace& trace, std::ostream& out);
//! Columns `t s_t area mass`.
void write_conformal_table(const ConformalRun& run, std::ostream& out);

//! Writes to `path.tmp` and renames, so a failed run leaves no partial file.
void write_file_atomic(const std::string& path, const std::string& contents);

}  // namespace penrose
