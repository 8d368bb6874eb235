/* C interface to the penrose library. Every call returns a status code; on
 * failure the message is available from penrose_last_error() on the same
 * thread until the next call. Handles are owned by the caller and released
 * with the matching *_free function. */
#ifndef PENROSE_C_H
#define PENROSE_C_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  PENROSE_OK = 0,
  PENROSE_E_DOMAIN,
  PENROSE_E_PRECONDITION,
  PENROSE_E_CONSTRUCTION,
  PENROSE_E_NUMERIC,
  PENROSE_E_ASYMPTOTICS,
  PENROSE_E_SINGULARITY,
  PENROSE_E_BLOWUP,
  PENROSE_E_STIFFNESS,
  PENROSE_E_FLOW,
  PENROSE_E_IO,
  PENROSE_E_INTERNAL
} penrose_status;

const char* penrose_last_error(void);
const char* penrose_status_name(penrose_status s);

typedef enum {
  PENROSE_SCHWARZSCHILD = 0,
  PENROSE_SCHWARZSCHILD_ADS,
  PENROSE_MYERS_PERRY,
  PENROSE_MYERS_PERRY_ADS
} penrose_family_kind;

typedef struct {
  penrose_family_kind kind;
  int n;
  double m;
  double a;      /* ignored for the Schwarzschild kinds */
  double s_max;  /* <= 0 selects the default outer end */
  size_t nodes;  /* grid size; 0 selects the default */
} penrose_family;

/* Parses "schwarzschild", "schwarzschild-ads", "myers-perry", "myers-perry-ads". */
penrose_status penrose_family_kind_from_name(const char* name, penrose_family_kind* out);
const char* penrose_family_kind_name(penrose_family_kind kind);

penrose_status penrose_family_horizon_radius(const penrose_family* f, double* r_plus);
/* Mass parameter with horizon radius r_plus (at spin a). */
penrose_status penrose_family_mass_from_horizon(penrose_family_kind kind, int n, double r_plus,
                                                double a, double* m);
/* Largest admissible flat Myers-Perry spin at mass m. */
penrose_status penrose_extremal_spin(int n, double m, double* a_max);

typedef struct penrose_data penrose_data;

penrose_status penrose_data_from_family(const penrose_family* f, penrose_data** out);
/* Berger data table; see README for the column layout. */
penrose_status penrose_data_load(const char* path, penrose_data** out);
penrose_status penrose_data_save(const penrose_data* d, const char* path);
penrose_status penrose_data_info(const penrose_data* d, int* n, int* dim, int* hyperbolic,
                                 int* time_symmetric);
void penrose_data_free(penrose_data* d);

typedef enum {
  PENROSE_BC_RULE = 0,
  PENROSE_BC_PAST,
  PENROSE_BC_FUTURE,
  PENROSE_BC_DEGENERATE,
  PENROSE_BC_INTERIOR
} penrose_bc_kind;

typedef struct {
  penrose_bc_kind bc;
  double bc_alpha;          /* v(0) for PENROSE_BC_INTERIOR */
  double rtol;
  double atol;
  int refine;
  double conformal_target;  /* < 0: defect threshold */
  double conformal_dt;
  double conformal_t_max;
} penrose_options;

void penrose_options_default(penrose_options* o);

typedef struct penrose_report penrose_report;

typedef struct {
  int n;
  int d;
  double energy;
  double area;
  double bound;
  double margin;
  double rigidity_gap;
  double dec_margin;
  double decay_exponent;
} penrose_report_values;

/* Spacetime pipeline for data with k != 0 (or an explicit bc), Riemannian otherwise. */
penrose_status penrose_verify(const penrose_data* d, const penrose_options* o, penrose_report** out);
penrose_status penrose_report_values_get(const penrose_report* r, penrose_report_values* out);
const char* penrose_report_pipeline(const penrose_report* r);
size_t penrose_report_note_count(const penrose_report* r);
const char* penrose_report_note_key(const penrose_report* r, size_t i);
const char* penrose_report_note_value(const penrose_report* r, size_t i);
/* `key = value` document; owned by the report. */
const char* penrose_report_text(const penrose_report* r);
void penrose_report_free(penrose_report* r);

/* Export tables, written atomically. */
penrose_status penrose_trace_jang(const penrose_data* d, const penrose_options* o, const char* path);
/* Flow through the Jang metric (the data itself when k = 0). */
penrose_status penrose_trace_flow(const penrose_data* d, const penrose_options* o, const char* path);
penrose_status penrose_trace_conformal(const penrose_data* d, double t_stop, double dt, const char* path);

typedef struct {
  char quantity[32];
  double numeric;
  double closed;
  double rel_error;
} penrose_crosscheck_entry;

/* Fills up to cap entries; *count receives the total available. */
penrose_status penrose_crosscheck(const penrose_family* f, penrose_crosscheck_entry* entries,
                                  size_t cap, size_t* count);

penrose_status penrose_write_file(const char* path, const char* contents);

#ifdef __cplusplus
}
#endif

#endif
