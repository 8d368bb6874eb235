// Command-line front end over the C API: verify, sweep, trace, families.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "penrose_c.h"

namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

enum Exit : int { kOk = 0, kViolated = 1, kPrecondition = 2, kSolver = 3, kUsage = 64 };

int exit_for(penrose_status s) {
  switch (s) {
    case PENROSE_OK: return kOk;
    case PENROSE_E_DOMAIN:
    case PENROSE_E_PRECONDITION:
    case PENROSE_E_CONSTRUCTION:
    case PENROSE_E_IO: return kPrecondition;
    default: return kSolver;
  }
}

struct Failure {
  penrose_status status;
  std::string message;
};

void check(penrose_status s) {
  if (s != PENROSE_OK) throw Failure{s, penrose_last_error()};
}

struct DataDeleter {
  void operator()(penrose_data* d) const { penrose_data_free(d); }
};
struct ReportDeleter {
  void operator()(penrose_report* r) const { penrose_report_free(r); }
};
using DataPtr = std::unique_ptr<penrose_data, DataDeleter>;
using ReportPtr = std::unique_ptr<penrose_report, ReportDeleter>;

// Margin tolerance relative to max(1, bound).
double margin_tolerance() {
  const char* env = std::getenv("PENROSE_TOL_PROFILE");
  const std::string p = env ? env : "default";
  if (p == "strict") return 1e-6;
  if (p == "default" || p.empty()) return 1e-4;
  if (p == "loose") return 1e-3;
  throw CLI::ValidationError("PENROSE_TOL_PROFILE", "expected strict, default or loose, got '" + p + "'");
}

struct Source {
  std::string family;
  std::string data;
  int n = 1;
  double m = 1.0;
  double a = 0.0;
  std::optional<double> r_plus;
  double s_max = 0.0;
  std::size_t nodes = 0;
};

struct Pipeline {
  std::string bc = "rule";
  double bc_alpha = 0.0;
  double rtol = 1e-10;
  double atol = 1e-12;
  int refine = 0;
  double conformal_target = -1.0;
  double dt = 1e-2;
};

struct Output {
  std::string dir;
  std::string format = "table";
};

void add_source(CLI::App* c, Source& s) {
  c->add_option("--family", s.family, "schwarzschild | schwarzschild-ads | myers-perry | myers-perry-ads");
  c->add_option("--data", s.data, "Berger data table");
  c->add_option("--n", s.n, "group index n")->check(CLI::PositiveNumber);
  c->add_option("--m", s.m, "mass parameter")->check(CLI::PositiveNumber);
  c->add_option("--a", s.a, "spin")->check(CLI::NonNegativeNumber);
  c->add_option("--r-plus", s.r_plus, "horizon radius (sets m)")->check(CLI::PositiveNumber);
  c->add_option("--s-max", s.s_max, "outer end of the radial domain");
  c->add_option("--grid", s.nodes, "grid nodes");
}

void add_pipeline(CLI::App* c, Pipeline& p) {
  c->add_option("--bc", p.bc, "rule | past | future | degenerate | interior")
      ->check(CLI::IsMember({"rule", "past", "future", "degenerate", "interior"}));
  c->add_option("--bc-alpha", p.bc_alpha, "v(0) for --bc interior");
  c->add_option("--rtol", p.rtol, "Jang relative tolerance")->check(CLI::PositiveNumber);
  c->add_option("--atol", p.atol, "Jang absolute tolerance")->check(CLI::PositiveNumber);
  c->add_option("--refine", p.refine, "divide Jang tolerances by 32^refine")->check(CLI::NonNegativeNumber);
  c->add_option("--conformal-target", p.conformal_target, "horizon position the conformal flow must pass");
  c->add_option("--dt", p.dt, "conformal time step")->check(CLI::Range(1e-8, 1e-2));
}

void add_output(CLI::App* c, Output& o) {
  c->add_option("--out", o.dir, "output directory");
  c->add_option("--format", o.format, "table | structured")->check(CLI::IsMember({"table", "structured"}));
}

void validate_source(const Source& s) {
  if (s.family.empty() == s.data.empty()) throw CLI::ValidationError("give exactly one of --family and --data");
  if (!s.family.empty()) {
    penrose_family_kind k;
    if (penrose_family_kind_from_name(s.family.c_str(), &k) != PENROSE_OK)
      throw CLI::ValidationError("--family", penrose_last_error());
    const bool spinning = k == PENROSE_MYERS_PERRY || k == PENROSE_MYERS_PERRY_ADS;
    if (!spinning && s.a != 0.0) throw CLI::ValidationError("--a is only meaningful for Myers-Perry families");
  }
}

penrose_family family_of(const Source& s, double m, double a) {
  penrose_family f{};
  check(penrose_family_kind_from_name(s.family.c_str(), &f.kind));
  f.n = s.n;
  f.m = m;
  f.a = a;
  f.s_max = s.s_max;
  f.nodes = s.nodes;
  return f;
}

double mass_of(const Source& s, penrose_family_kind kind, double r_plus, double a) {
  double m = 0;
  check(penrose_family_mass_from_horizon(kind, s.n, r_plus, a, &m));
  return m;
}

DataPtr load(const Source& s, double m, double a) {
  penrose_data* d = nullptr;
  if (!s.data.empty()) {
    check(penrose_data_load(s.data.c_str(), &d));
  } else {
    const penrose_family f = family_of(s, m, a);
    check(penrose_data_from_family(&f, &d));
  }
  return DataPtr(d);
}

double source_mass(const Source& s) {
  if (!s.r_plus || s.family.empty()) return s.m;
  penrose_family_kind k;
  check(penrose_family_kind_from_name(s.family.c_str(), &k));
  return mass_of(s, k, *s.r_plus, s.a);
}

penrose_options options_of(const Pipeline& p) {
  penrose_options o;
  penrose_options_default(&o);
  if (p.bc == "past") o.bc = PENROSE_BC_PAST;
  else if (p.bc == "future") o.bc = PENROSE_BC_FUTURE;
  else if (p.bc == "degenerate") o.bc = PENROSE_BC_DEGENERATE;
  else if (p.bc == "interior") o.bc = PENROSE_BC_INTERIOR;
  o.bc_alpha = p.bc_alpha;
  o.rtol = p.rtol;
  o.atol = p.atol;
  o.refine = p.refine;
  o.conformal_target = p.conformal_target;
  o.conformal_dt = p.dt;
  return o;
}

Json number(double x) { return std::isfinite(x) ? Json(x) : Json(x > 0 ? "inf" : (x < 0 ? "-inf" : "nan")); }

Json report_json(const penrose_report* r) {
  penrose_report_values v;
  check(penrose_report_values_get(r, &v));
  Json j;
  j["pipeline"] = penrose_report_pipeline(r);
  j["n"] = v.n;
  j["d"] = v.d;
  j["energy"] = number(v.energy);
  j["area"] = number(v.area);
  j["bound"] = number(v.bound);
  j["margin"] = number(v.margin);
  j["rigidity_gap"] = number(v.rigidity_gap);
  j["dec_margin"] = number(v.dec_margin);
  j["decay_exponent"] = number(v.decay_exponent);
  Json notes = Json::object();
  for (size_t i = 0; i < penrose_report_note_count(r); ++i)
    notes[penrose_report_note_key(r, i)] = penrose_report_note_value(r, i);
  j["notes"] = notes;
  return j;
}

std::string render(const penrose_report* r, const std::string& format) {
  return format == "structured" ? report_json(r).dump(2) + "\n" : std::string(penrose_report_text(r));
}

void write(const fs::path& path, const std::string& text) { check(penrose_write_file(path.c_str(), text.c_str())); }

void ensure_dir(const std::string& dir) {
  if (dir.empty()) return;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Failure{PENROSE_E_IO, "cannot create " + dir + ": " + ec.message()};
}

bool margin_ok(const penrose_report* r, double tol) {
  penrose_report_values v;
  check(penrose_report_values_get(r, &v));
  return v.margin >= -tol * std::max(1.0, std::abs(v.bound));
}

int cmd_verify(const Source& s, const Pipeline& p, const Output& o) {
  validate_source(s);
  const double tol = margin_tolerance();
  DataPtr d = load(s, source_mass(s), s.a);
  const penrose_options opt = options_of(p);
  penrose_report* raw = nullptr;
  check(penrose_verify(d.get(), &opt, &raw));
  ReportPtr r(raw);
  const std::string text = render(r.get(), o.format);
  std::cout << text;
  if (!o.dir.empty()) {
    ensure_dir(o.dir);
    write(fs::path(o.dir) / (o.format == "structured" ? "report.json" : "report.txt"), text);
  }
  return margin_ok(r.get(), tol) ? kOk : kViolated;
}

struct SweepRange {
  std::vector<double> first;  // m values, or r_+ values with --by-horizon
  double a_min = 0.0;
  double a_max = 0.0;
  double a_max_fraction = 0.0;  // > 0: a_max = fraction * extremal spin
  int points = 1;
  bool by_horizon = false;
  int jobs = 1;
};

int cmd_sweep(const Source& s, const SweepRange& g, const Pipeline& p, const Output& o) {
  if (s.family.empty()) throw CLI::ValidationError("sweep needs --family");
  validate_source(Source{s.family, "", s.n, s.m, 0.0, {}, s.s_max, s.nodes});
  const double tol = margin_tolerance();
  penrose_family_kind kind;
  check(penrose_family_kind_from_name(s.family.c_str(), &kind));
  const bool spinning = kind == PENROSE_MYERS_PERRY || kind == PENROSE_MYERS_PERRY_ADS;
  if (!spinning && (g.a_max != 0.0 || g.a_min != 0.0 || g.a_max_fraction != 0.0))
    throw CLI::ValidationError("spin ranges need a Myers-Perry family");
  if (g.points < 1) throw CLI::ValidationError("--points must be positive");

  struct Point {
    double p1, a;
    std::string row;
    int code = kOk;
    bool admissible = false;
  };
  std::vector<Point> pts;
  const std::vector<double> first = g.first.empty() ? std::vector<double>{s.m} : g.first;
  for (double x : first) {
    double hi = g.a_max;
    if (g.a_max_fraction > 0.0) {
      if (kind != PENROSE_MYERS_PERRY) throw CLI::ValidationError("--a-max-fraction needs myers-perry");
      double m = x;
      if (g.by_horizon) throw CLI::ValidationError("--a-max-fraction needs mass coordinates");
      double amax = 0;
      check(penrose_extremal_spin(s.n, m, &amax));
      hi = g.a_max_fraction * amax;
    }
    for (int i = 0; i < g.points; ++i) {
      const double a = g.points == 1 ? g.a_min : g.a_min + (hi - g.a_min) * i / (g.points - 1);
      pts.push_back({x, a, "", kOk, false});
    }
  }

  const penrose_options opt = options_of(p);
  ensure_dir(o.dir);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next++) < pts.size();) {
      Point& pt = pts[i];
      char head[80];
      std::snprintf(head, sizeof head, "%.17g %.17g", pt.p1, pt.a);
      try {
        const double m = g.by_horizon ? mass_of(s, kind, pt.p1, pt.a) : pt.p1;
        DataPtr d = load(s, m, pt.a);
        penrose_report* raw = nullptr;
        check(penrose_verify(d.get(), &opt, &raw));
        ReportPtr r(raw);
        penrose_report_values v;
        check(penrose_report_values_get(r.get(), &v));
        char buf[160];
        std::snprintf(buf, sizeof buf, " %.17g %.17g %.17g %.17g", v.energy, v.area, v.bound, v.margin);
        pt.row = std::string(head) + buf;
        pt.admissible = true;
        pt.code = margin_ok(r.get(), tol) ? kOk : kViolated;
        if (!o.dir.empty())
          write(fs::path(o.dir) / ("point_" + std::to_string(i) + (o.format == "structured" ? ".json" : ".txt")),
                render(r.get(), o.format));
      } catch (const Failure& f) {
        const bool extremal = f.status == PENROSE_E_CONSTRUCTION || f.message.rfind("EXTREMAL", 0) == 0;
        pt.row = std::string(head) + (extremal ? " EXTREMAL" : std::string(" FAILED ") + penrose_status_name(f.status));
        pt.code = extremal ? kOk : exit_for(f.status);
      }
    }
  };
  const int jobs = std::max(1, g.jobs);
  std::vector<std::thread> pool;
  for (int j = 1; j < jobs; ++j) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  std::ostringstream table;
  table << (g.by_horizon ? "# r_plus a energy area bound margin\n" : "# m a energy area bound margin\n");
  int code = kOk;
  bool any = false;
  for (const auto& pt : pts) {
    table << pt.row << '\n';
    any = any || pt.admissible;
    code = std::max(code, pt.code);
  }
  std::cout << table.str();
  if (!o.dir.empty()) write(fs::path(o.dir) / "sweep.tbl", table.str());
  if (!any) {
    std::cerr << "error: no admissible point in the sweep\n";
    return kPrecondition;
  }
  return code;
}

int cmd_trace(const Source& s, const Pipeline& p, const Output& o, double t_stop) {
  validate_source(s);
  if (o.dir.empty()) throw CLI::ValidationError("trace needs --out");
  ensure_dir(o.dir);
  DataPtr d = load(s, source_mass(s), s.a);
  const penrose_options opt = options_of(p);
  const fs::path dir(o.dir);
  check(penrose_trace_jang(d.get(), &opt, (dir / "jang.tbl").c_str()));
  check(penrose_trace_flow(d.get(), &opt, (dir / "flow.tbl").c_str()));
  int ts = 0, hyp = 0;
  check(penrose_data_info(d.get(), nullptr, nullptr, &hyp, &ts));
  if (ts && !hyp) {
    check(penrose_trace_conformal(d.get(), t_stop, p.dt, (dir / "conformal.tbl").c_str()));
  } else {
    std::cerr << "note: conformal.tbl skipped (needs time-symmetric, asymptotically flat data)\n";
  }
  return kOk;
}

int cmd_families(const Source& s, const Output& o) {
  if (s.family.empty()) {
    std::cout << "schwarzschild      --n --m\n"
                 "schwarzschild-ads  --n --m | --r-plus\n"
                 "myers-perry        --n --m --a\n"
                 "myers-perry-ads    --n --m --a | --r-plus --a\n";
    return kOk;
  }
  validate_source(s);
  const penrose_family f = family_of(s, source_mass(s), s.a);
  std::vector<penrose_crosscheck_entry> rows(16);
  size_t count = 0;
  check(penrose_crosscheck(&f, rows.data(), rows.size(), &count));
  rows.resize(std::min(count, rows.size()));
  if (o.format == "structured") {
    Json j = Json::array();
    for (const auto& e : rows)
      j.push_back({{"quantity", e.quantity}, {"numeric", e.numeric}, {"closed", e.closed}, {"rel_error", e.rel_error}});
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << "# quantity numeric closed rel_error\n";
    for (const auto& e : rows) std::printf("%s %.17g %.17g %.3g\n", e.quantity, e.numeric, e.closed, e.rel_error);
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Penrose inequality checks for cohomogeneity-one black-hole data"};
  app.set_config("--config", "", "key = value file; flags override it");
  app.require_subcommand(1);

  Source src;
  Pipeline pipe;
  Output out;
  SweepRange range;
  double t_stop = 1.0;

  auto* verify = app.add_subcommand("verify", "run the pipeline for one data set");
  add_source(verify, src);
  add_pipeline(verify, pipe);
  add_output(verify, out);

  auto* sweep = app.add_subcommand("sweep", "grid over (m, a) or (r_plus, a)");
  add_source(sweep, src);
  add_pipeline(sweep, pipe);
  add_output(sweep, out);
  sweep->add_option("--values", range.first, "mass values (r_plus values with --by-horizon)");
  sweep->add_flag("--by-horizon", range.by_horizon, "treat --values as horizon radii");
  sweep->add_option("--a-min", range.a_min, "smallest spin");
  sweep->add_option("--a-max", range.a_max, "largest spin");
  sweep->add_option("--a-max-fraction", range.a_max_fraction, "largest spin as a fraction of extremal");
  sweep->add_option("--points", range.points, "spin samples per value");
  sweep->add_option("--jobs", range.jobs, "concurrent points")->check(CLI::PositiveNumber);

  auto* trace = app.add_subcommand("trace", "write jang.tbl, flow.tbl and conformal.tbl");
  add_source(trace, src);
  add_pipeline(trace, pipe);
  add_output(trace, out);
  trace->add_option("--t-stop", t_stop, "conformal flow duration")->check(CLI::NonNegativeNumber);

  auto* families = app.add_subcommand("families", "list families, or cross-check one against closed forms");
  add_source(families, src);
  add_output(families, out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (verify->parsed()) return cmd_verify(src, pipe, out);
    if (sweep->parsed()) return cmd_sweep(src, range, pipe, out);
    if (trace->parsed()) return cmd_trace(src, pipe, out, t_stop);
    if (families->parsed()) return cmd_families(src, out);
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const Failure& f) {
    std::cerr << "error (" << penrose_status_name(f.status) << "): " << f.message << '\n';
    return exit_for(f.status);
  }
  return kUsage;
}
