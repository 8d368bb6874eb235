#include "penrose/table_io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "penrose/errors.hpp"

namespace penrose {

namespace {

void row(std::ostream& out, std::initializer_list<double> xs) {
  char buf[40];
  bool first = true;
  for (double x : xs) {
    std::snprintf(buf, sizeof buf, "%.17g", x);
    if (!first) out << ' ';
    out << buf;
    first = false;
  }
  out << '\n';
}

double value_at(const std::vector<RadialProfile>& v, std::size_t i, double s) {
  return i < v.size() ? v[i](s) : 0.0;
}

}  // namespace

void write_data_table(const InitialDataSet& data, std::ostream& out) {
  if (data.kind != OrbitKind::berger) fail(ErrorKind::io, "data tables hold Berger data only");
  char head[96];
  if (data.hyperbolic())
    std::snprintf(head, sizeof head, "# n=%d hyperbolic q=%.17g", data.n, std::get<Hyperbolic>(data.asymptotic).q);
  else
    std::snprintf(head, sizeof head, "# n=%d flat tau=%.17g", data.n, std::get<Flat>(data.asymptotic).tau);
  out << head << '\n' << "# s rho rho' rho'' B B' B'' k_a k_b k_c k_s\n";
  for (double s : data.rho.grid()) {
    const Jet r = data.rho.jet(s);
    const Jet B = data.shape.at(0).jet(s);
    row(out, {s, r.v, r.d1, r.d2, B.v, B.d1, B.d2, data.k_a(s), value_at(data.k_tan, 0, s),
              value_at(data.k_tan, 1, s), value_at(data.k_cross, 0, s)});
  }
}

InitialDataSet read_data_table(std::istream& in) {
  std::string line;
  int n = 0;
  AsymptoticClass asym = Flat{0.0};
  bool have_header = false;
  std::vector<std::vector<double>> col(11);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (have_header) continue;
      std::istringstream h(line.substr(1));
      std::string tok;
      bool hyp = false;
      double par = 0;
      bool have_n = false, have_par = false;
      while (h >> tok) {
        if (tok.rfind("n=", 0) == 0) { n = std::stoi(tok.substr(2)); have_n = true; }
        else if (tok == "hyperbolic") hyp = true;
        else if (tok.rfind("tau=", 0) == 0 || tok.rfind("q=", 0) == 0) {
          par = std::stod(tok.substr(tok.find('=') + 1));
          have_par = true;
        }
      }
      if (!have_n || !have_par) fail(ErrorKind::io, "data table header needs n= and tau= or q=");
      asym = hyp ? AsymptoticClass{Hyperbolic{par}} : AsymptoticClass{Flat{par}};
      have_header = true;
      continue;
    }
    std::istringstream r(line);
    for (auto& c : col) {
      double x;
      if (!(r >> x)) fail(ErrorKind::io, "data table row with fewer than 11 columns");
      c.push_back(x);
    }
  }
  if (!have_header) fail(ErrorKind::io, "data table has no header");
  auto all_zero = [](const std::vector<double>& v) {
    for (double x : v)
      if (x != 0.0) return false;
    return true;
  };
  const auto& s = col[0];
  if (s.empty()) fail(ErrorKind::io, "data table has no rows");
  auto values = [&](int k) {
    return all_zero(col[k]) ? RadialProfile::zero(s.back()) : RadialProfile::sampled(s, col[k]);
  };
  try {
    InitialDataSet d = make_berger(n, asym, RadialProfile::sampled(s, col[1], col[2], col[3]),
                                   all_zero(col[4]) ? RadialProfile::zero(s.back())
                                                    : RadialProfile::sampled(s, col[4], col[5], col[6]),
                                   values(7), values(8), values(9), values(10));
    return d;
  } catch (const Error& e) {
    throw Error(ErrorKind::io, std::string("data table: ") + e.what());
  }
}

InitialDataSet load_data_table(const std::string& path) {
  std::ifstream f(path);
  if (!f) fail(ErrorKind::io, "cannot open " + path);
  return read_data_table(f);
}

void write_jang_table(const JangSolution& sol, std::ostream& out) {
  out << "# s v v' sbar phi\n";
  for (std::size_t i = 0; i < sol.s.size(); ++i) row(out, {sol.s[i], sol.vs[i], sol.dv[i], sol.sb[i], sol.ph[i]});
  char buf[128];
  std::snprintf(buf, sizeof buf, "# bc=%s decay=%.17g clamps=%d", to_string(sol.bc).c_str(), sol.decay, sol.clamps);
  out << buf << '\n';
}

void write_flow_table(const FlowTrace& trace, std::ostream& out) {
  out << "# t sbar area H mH defect\n";
  for (const auto& r : trace.records) row(out, {r.t, r.sbar, r.area, r.H, r.mH, r.defect});
}

void write_conformal_table(const ConformalRun& run, std::ostream& out) {
  out << "# t s_t area mass\n";
  for (const auto& st : run.states) row(out, {st.t, st.s_t, st.area, st.mass_estimate});
}

void write_file_atomic(const std::string& path, const std::string& contents) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) fail(ErrorKind::io, "cannot write " + tmp);
    f << contents;
    f.flush();
    if (!f) {
      std::filesystem::remove(tmp);
      fail(ErrorKind::io, "write failed for " + path);
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    fail(ErrorKind::io, "rename failed for " + path + ": " + ec.message());
  }
}

}  // namespace penrose
