#include "penrose_c.h"

#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

#include "penrose/conformal_flow.hpp"
#include "penrose/errors.hpp"
#include "penrose/families.hpp"
#include "penrose/imcf_hawking.hpp"
#include "penrose/penrose_verifier.hpp"
#include "penrose/table_io.hpp"

struct penrose_data {
  penrose::InitialDataSet data;
};

struct penrose_report {
  penrose::PenroseReport report;
  std::string text;
};

namespace {

using namespace penrose;

thread_local std::string g_last_error;

penrose_status status_of(ErrorKind k) {
  switch (k) {
    case ErrorKind::domain: return PENROSE_E_DOMAIN;
    case ErrorKind::precondition: return PENROSE_E_PRECONDITION;
    case ErrorKind::construction: return PENROSE_E_CONSTRUCTION;
    case ErrorKind::numeric: return PENROSE_E_NUMERIC;
    case ErrorKind::asymptotics: return PENROSE_E_ASYMPTOTICS;
    case ErrorKind::singularity: return PENROSE_E_SINGULARITY;
    case ErrorKind::blowup: return PENROSE_E_BLOWUP;
    case ErrorKind::stiffness: return PENROSE_E_STIFFNESS;
    case ErrorKind::flow: return PENROSE_E_FLOW;
    case ErrorKind::io: return PENROSE_E_IO;
  }
  return PENROSE_E_INTERNAL;
}

template <class F>
penrose_status guard(F&& f) {
  g_last_error.clear();
  try {
    f();
    return PENROSE_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return status_of(e.kind());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return PENROSE_E_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return PENROSE_E_INTERNAL;
  }
}

penrose_status null_arg() {
  g_last_error = "null argument";
  return PENROSE_E_DOMAIN;
}

BlackHoleFamily to_family(const penrose_family& f) {
  switch (f.kind) {
    case PENROSE_SCHWARZSCHILD: return Schwarzschild{f.n, f.m};
    case PENROSE_SCHWARZSCHILD_ADS: return SchwarzschildAdS{f.n, f.m};
    case PENROSE_MYERS_PERRY: return MyersPerry{f.n, f.m, f.a};
    case PENROSE_MYERS_PERRY_ADS: return MyersPerryAdS{f.n, f.m, f.a};
  }
  fail(ErrorKind::domain, "unknown family kind");
}

VerifyOptions to_options(const penrose_options* o) {
  VerifyOptions v;
  if (!o) return v;
  switch (o->bc) {
    case PENROSE_BC_RULE: break;
    case PENROSE_BC_PAST: v.bc = PastHorizonUnit{}; break;
    case PENROSE_BC_FUTURE: v.bc = FutureHorizonUnit{}; break;
    case PENROSE_BC_DEGENERATE: v.bc = DegenerateZero{}; break;
    case PENROSE_BC_INTERIOR: v.bc = Interior{o->bc_alpha}; break;
  }
  if (!(o->rtol > 0.0) || !(o->atol > 0.0)) fail(ErrorKind::domain, "tolerances must be positive");
  if (o->refine < 0) fail(ErrorKind::domain, "refine must be nonnegative");
  v.jang.rtol = o->rtol;
  v.jang.atol = o->atol;
  v.jang.refine = o->refine;
  v.conformal_target = o->conformal_target;
  v.conformal_dt = o->conformal_dt;
  v.conformal_t_max = o->conformal_t_max;
  return v;
}

template <class W>
void write_with(const char* path, W&& w) {
  std::ostringstream o;
  w(o);
  write_file_atomic(path, o.str());
}

}  // namespace

extern "C" {

const char* penrose_last_error(void) { return g_last_error.c_str(); }

const char* penrose_status_name(penrose_status s) {
  switch (s) {
    case PENROSE_OK: return "ok";
    case PENROSE_E_DOMAIN: return "domain";
    case PENROSE_E_PRECONDITION: return "precondition";
    case PENROSE_E_CONSTRUCTION: return "construction";
    case PENROSE_E_NUMERIC: return "numeric";
    case PENROSE_E_ASYMPTOTICS: return "asymptotics";
    case PENROSE_E_SINGULARITY: return "singularity";
    case PENROSE_E_BLOWUP: return "blowup";
    case PENROSE_E_STIFFNESS: return "stiffness";
    case PENROSE_E_FLOW: return "flow";
    case PENROSE_E_IO: return "io";
    case PENROSE_E_INTERNAL: return "internal";
  }
  return "unknown";
}

penrose_status penrose_family_kind_from_name(const char* name, penrose_family_kind* out) {
  if (!name || !out) return null_arg();
  static const penrose_family_kind kinds[] = {PENROSE_SCHWARZSCHILD, PENROSE_SCHWARZSCHILD_ADS,
                                              PENROSE_MYERS_PERRY, PENROSE_MYERS_PERRY_ADS};
  for (auto k : kinds)
    if (std::strcmp(name, penrose_family_kind_name(k)) == 0) {
      *out = k;
      return PENROSE_OK;
    }
  g_last_error = std::string("unknown family '") + name + "'";
  return PENROSE_E_DOMAIN;
}

const char* penrose_family_kind_name(penrose_family_kind kind) {
  switch (kind) {
    case PENROSE_SCHWARZSCHILD: return "schwarzschild";
    case PENROSE_SCHWARZSCHILD_ADS: return "schwarzschild-ads";
    case PENROSE_MYERS_PERRY: return "myers-perry";
    case PENROSE_MYERS_PERRY_ADS: return "myers-perry-ads";
  }
  return "unknown";
}

penrose_status penrose_family_horizon_radius(const penrose_family* f, double* r_plus) {
  if (!f || !r_plus) return null_arg();
  return guard([&] { *r_plus = horizon_radius(to_family(*f)); });
}

penrose_status penrose_family_mass_from_horizon(penrose_family_kind kind, int n, double r_plus, double a,
                                                double* m) {
  if (!m) return null_arg();
  return guard([&] {
    if (n < 1 || !(r_plus > 0.0)) fail(ErrorKind::domain, "need n >= 1 and r_plus > 0");
    switch (kind) {
      case PENROSE_SCHWARZSCHILD: *m = 0.5 * std::pow(r_plus, 2 * n); break;
      case PENROSE_MYERS_PERRY:
        if (!(a * a < r_plus * r_plus)) fail(ErrorKind::domain, "need a < r_plus");
        *m = std::pow(r_plus, 2 * n + 2) / (2.0 * (r_plus * r_plus - a * a));
        break;
      case PENROSE_SCHWARZSCHILD_ADS: *m = closed_form::schwarzschild_ads_mass(n, r_plus); break;
      case PENROSE_MYERS_PERRY_ADS: *m = closed_form::myers_perry_ads_mass(n, r_plus, a); break;
    }
  });
}

penrose_status penrose_extremal_spin(int n, double m, double* a_max) {
  if (!a_max) return null_arg();
  return guard([&] { *a_max = closed_form::myers_perry_extremal_spin(n, m); });
}

penrose_status penrose_data_from_family(const penrose_family* f, penrose_data** out) {
  if (!f || !out) return null_arg();
  *out = nullptr;
  return guard([&] { *out = new penrose_data{build_family_chart(to_family(*f), f->s_max, f->nodes ? f->nodes : 2000).data}; });
}

penrose_status penrose_data_load(const char* path, penrose_data** out) {
  if (!path || !out) return null_arg();
  *out = nullptr;
  return guard([&] { *out = new penrose_data{load_data_table(path)}; });
}

penrose_status penrose_data_save(const penrose_data* d, const char* path) {
  if (!d || !path) return null_arg();
  return guard([&] { write_with(path, [&](std::ostream& o) { write_data_table(d->data, o); }); });
}

penrose_status penrose_data_info(const penrose_data* d, int* n, int* dim, int* hyperbolic, int* time_symmetric) {
  if (!d) return null_arg();
  if (n) *n = d->data.n;
  if (dim) *dim = d->data.dimension();
  if (hyperbolic) *hyperbolic = d->data.hyperbolic();
  if (time_symmetric) *time_symmetric = d->data.time_symmetric();
  return PENROSE_OK;
}

void penrose_data_free(penrose_data* d) { delete d; }

void penrose_options_default(penrose_options* o) {
  if (!o) return;
  const VerifyOptions v;
  o->bc = PENROSE_BC_RULE;
  o->bc_alpha = 0.0;
  o->rtol = v.jang.rtol;
  o->atol = v.jang.atol;
  o->refine = v.jang.refine;
  o->conformal_target = v.conformal_target;
  o->conformal_dt = v.conformal_dt;
  o->conformal_t_max = v.conformal_t_max;
}

penrose_status penrose_verify(const penrose_data* d, const penrose_options* o, penrose_report** out) {
  if (!d || !out) return null_arg();
  *out = nullptr;
  return guard([&] {
    PenroseReport r = verify(d->data, to_options(o));
    std::string text = to_key_value(r);
    *out = new penrose_report{std::move(r), std::move(text)};
  });
}

penrose_status penrose_report_values_get(const penrose_report* r, penrose_report_values* out) {
  if (!r || !out) return null_arg();
  const PenroseReport& p = r->report;
  *out = {p.n, p.d, p.energy, p.area, p.bound, p.margin, p.rigidity_gap, p.dec_margin, p.decay_exponent};
  return PENROSE_OK;
}

const char* penrose_report_pipeline(const penrose_report* r) { return r ? r->report.pipeline.c_str() : ""; }

size_t penrose_report_note_count(const penrose_report* r) { return r ? r->report.notes.size() : 0; }

const char* penrose_report_note_key(const penrose_report* r, size_t i) {
  return r && i < r->report.notes.size() ? r->report.notes[i].first.c_str() : "";
}

const char* penrose_report_note_value(const penrose_report* r, size_t i) {
  return r && i < r->report.notes.size() ? r->report.notes[i].second.c_str() : "";
}

const char* penrose_report_text(const penrose_report* r) { return r ? r->text.c_str() : ""; }

void penrose_report_free(penrose_report* r) { delete r; }

penrose_status penrose_trace_jang(const penrose_data* d, const penrose_options* o, const char* path) {
  if (!d || !path) return null_arg();
  return guard([&] {
    const VerifyOptions v = to_options(o);
    const JangBC bc = v.bc ? *v.bc : boundary_rule(d->data);
    const JangSolution sol = solve_jang(d->data, bc, v.jang);
    write_with(path, [&](std::ostream& os) { write_jang_table(sol, os); });
  });
}

penrose_status penrose_trace_flow(const penrose_data* d, const penrose_options* o, const char* path) {
  if (!d || !path) return null_arg();
  return guard([&] {
    FlowTrace tr;
    if (d->data.time_symmetric()) {
      tr = flow_trace(d->data);
    } else {
      const VerifyOptions v = to_options(o);
      const JangBC bc = v.bc ? *v.bc : boundary_rule(d->data);
      tr = flow_trace(jang_metric(d->data, solve_jang(d->data, bc, v.jang)));
    }
    write_with(path, [&](std::ostream& os) { write_flow_table(tr, os); });
  });
}

penrose_status penrose_trace_conformal(const penrose_data* d, double t_stop, double dt, const char* path) {
  if (!d || !path) return null_arg();
  return guard([&] {
    const ConformalRun run = run_conformal(d->data, t_stop, dt);
    write_with(path, [&](std::ostream& os) { write_conformal_table(run, os); });
  });
}

penrose_status penrose_crosscheck(const penrose_family* f, penrose_crosscheck_entry* entries, size_t cap,
                                  size_t* count) {
  if (!f || !count || (cap > 0 && !entries)) return null_arg();
  return guard([&] {
    const auto rows = closed_form_crosscheck(to_family(*f));
    *count = rows.size();
    for (size_t i = 0; i < rows.size() && i < cap; ++i) {
      penrose_crosscheck_entry& e = entries[i];
      std::memset(e.quantity, 0, sizeof e.quantity);
      std::strncpy(e.quantity, rows[i].quantity.c_str(), sizeof e.quantity - 1);
      e.numeric = rows[i].numeric;
      e.closed = rows[i].closed;
      e.rel_error = rows[i].rel_error;
    }
  });
}

penrose_status penrose_write_file(const char* path, const char* contents) {
  if (!path || !contents) return null_arg();
  return guard([&] { write_file_atomic(path, contents); });
}

}  // extern "C"
