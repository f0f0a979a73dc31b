// Command-line front end for the asymptotic-iteration eigenvalue library.
// Talks to the shared library exclusively through the C interface (aim.h).

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "aim.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitUnstable = 2;

std::string fmt(double v) {
  char buf[40];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, end);
}

[[noreturn]] void die(const std::string& msg) {
  std::cerr << "error: " << msg << "\n";
  std::exit(kExitUsage);
}

void check(aim_status st, const std::string& what) {
  if (st != AIM_OK) die(what + ": " + aim_last_error());
}

struct ProblemHandle {
  aim_problem* p = nullptr;
  ~ProblemHandle() { aim_problem_free(p); }
  ProblemHandle() = default;
  ProblemHandle(const ProblemHandle&) = delete;
  ProblemHandle& operator=(const ProblemHandle&) = delete;
};

struct Options {
  std::string problem;
  double gamma = 0.0;
  bool gamma_set = false;
  double coupling = 0.0;
  bool coupling_set = false;
  double alpha_exp = 4.0;
  int k = 0;
  int n_dim = 0;
  int l = 0;
  bool ndim_set = false;
  std::string potential;

  int levels = 4;
  int iters = 12;
  int order = 0;
  std::string x0 = "auto";
  double e_min = 0.0, e_max = 50.0, e_step = 0.25;
  double tol = 0.0;  // 0: per-command default
  std::string format = "table";
  std::string out;

  // reconstruct extras
  double x_min = 0.0, x_max = 3.0;
  int points = 301;
  double c1 = 0.0, c2 = 1.0;
  int level = 0;

  // oracle grid
  double r_max = 12.0;
  int grid_m = 4000;
};

void build_problem(const Options& o, ProblemHandle& h) {
  if (o.problem == "hermite") {
    check(aim_problem_create_hermite(o.k, &h.p), "hermite");
  } else if (o.problem == "harmonic1d") {
    check(aim_problem_create_harmonic1d(&h.p), "harmonic1d");
  } else if (o.problem == "gk") {
    check(aim_problem_create_gk(o.gamma, &h.p), "gk");
  } else if (o.problem == "spiked") {
    if (o.ndim_set)
      check(aim_problem_create_spiked_ndim(o.n_dim, o.l, o.coupling,
                                           o.alpha_exp, &h.p),
            "spiked");
    else
      check(aim_problem_create_spiked(o.gamma, o.coupling, o.alpha_exp, &h.p),
            "spiked");
  } else if (o.problem == "quartic") {
    check(aim_problem_create_quartic(o.coupling, &h.p), "quartic");
  } else if (o.problem == "custom") {
    if (o.potential.empty()) die("custom problem needs --potential");
    aim_status st = aim_problem_create_custom(o.potential.c_str(), &h.p);
    if (st == AIM_ERR_PARSE)
      die("potential syntax error at byte offset " +
          std::to_string(aim_last_error_offset()) + ": " + aim_last_error());
    check(st, "custom potential");
  } else {
    die("unknown problem '" + o.problem +
        "' (want hermite|harmonic1d|gk|spiked|quartic|custom)");
  }
}

/// tol_is_root_tol: solve/scan treat --tol as the bisection tolerance;
/// verify and the table commands use it as a comparison threshold and
/// keep the default root tolerance.
aim_solver_options solver_options(const Options& o,
                                  bool tol_is_root_tol = false) {
  aim_solver_options s;
  aim_solver_options_init(&s);
  s.max_iter = o.iters;
  s.jet_order = o.order;
  s.e_min = o.e_min;
  s.e_max = o.e_max;
  s.e_step = o.e_step;
  if (tol_is_root_tol && o.tol > 0.0) s.root_tol = o.tol;
  if (o.x0 == "auto") {
    s.x0_policy = AIM_X0_AUTO;
  } else if (o.x0 == "min") {
    s.x0_policy = AIM_X0_POTENTIAL_MIN;
  } else if (o.x0 == "s0zero") {
    s.x0_policy = AIM_X0_S0_ZERO;
  } else {
    double v = 0.0;
    auto [p, ec] = std::from_chars(o.x0.data(), o.x0.data() + o.x0.size(), v);
    if (ec != std::errc() || p != o.x0.data() + o.x0.size())
      die("--x0 wants auto|min|s0zero or a number, got '" + o.x0 + "'");
    s.x0_policy = v == 0.0 ? AIM_X0_ZERO : AIM_X0_FIXED;
    s.x0_value = v;
  }
  return s;
}

std::string problem_json(const aim_problem* p) {
  char buf[512];
  check(aim_problem_param_json(p, buf, sizeof(buf)), "param_json");
  return buf;
}

std::string problem_name(const aim_problem* p) {
  char buf[64];
  check(aim_problem_name(p, buf, sizeof(buf)), "problem name");
  return buf;
}

/// Echo of the fully-resolved configuration, so a run is reproducible
/// from its log alone. Goes to stderr to keep data output clean.
void echo_config(const char* command, const aim_problem* p,
                 const aim_solver_options& s, const Options& o) {
  std::cerr << "# command=" << command << " problem=" << problem_name(p)
            << " params=" << problem_json(p);
  const char* policy = "auto";
  switch (s.x0_policy) {
    case AIM_X0_FIXED:
      policy = "fixed";
      break;
    case AIM_X0_POTENTIAL_MIN:
      policy = "potential_min";
      break;
    case AIM_X0_S0_ZERO:
      policy = "s0zero";
      break;
    case AIM_X0_ZERO:
      policy = "zero";
      break;
    default:
      break;
  }
  std::cerr << " x0_policy=" << policy;
  double x0 = 0.0;
  if (aim_resolve_x0(p, &s, 0.5 * (s.e_min + s.e_max), &x0) == AIM_OK)
    std::cerr << " x0=" << fmt(x0);
  std::cerr << " iters=" << s.max_iter << " order="
            << (s.jet_order > 0 ? s.jet_order : 2 * s.max_iter + 8)
            << " emin=" << fmt(s.e_min) << " emax=" << fmt(s.e_max)
            << " estep=" << fmt(s.e_step) << " root_tol=" << fmt(s.root_tol)
            << " levels=" << o.levels << " format=" << o.format;
  if (const char* env = std::getenv("AIM_MAX_THREADS"))
    std::cerr << " AIM_MAX_THREADS=" << env;
  std::cerr << "\n";
}

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    out += c;
    if (c == '"') out += '"';
  }
  out += '"';
  return out;
}

constexpr const char* kCsvHeader =
    "problem,param_json,level,E_aim,E_oracle,E_exact,delta_residual,n_iter,"
    "x0,stabilized";

struct Row {
  std::string problem;
  std::string param_json;
  std::optional<int> level;
  std::optional<double> e_aim, e_oracle, e_exact, delta_residual;
  std::optional<int> n_iter;
  std::optional<double> x0;
  std::optional<bool> stabilized;
};

std::string csv_row(const Row& r) {
  auto num = [](const std::optional<double>& v) {
    return v ? fmt(*v) : std::string();
  };
  std::string line = r.problem + "," + csv_quote(r.param_json) + ",";
  line += r.level ? std::to_string(*r.level) : std::string();
  line += "," + num(r.e_aim) + "," + num(r.e_oracle) + "," + num(r.e_exact) +
          "," + num(r.delta_residual) + ",";
  line += r.n_iter ? std::to_string(*r.n_iter) : std::string();
  line += "," + num(r.x0) + ",";
  if (r.stabilized) line += *r.stabilized ? "true" : "false";
  return line;
}

class Output {
 public:
  Output(const Options& o) : csv_(o.format == "csv") {
    if (!o.out.empty()) {
      file_.open(o.out);
      if (!file_) die("cannot open --out file " + o.out);
    }
  }
  bool csv() const { return csv_; }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }
  void header() {
    if (csv_) stream() << kCsvHeader << "\n";
  }
  void row(const Row& r) {
    if (csv_) stream() << csv_row(r) << "\n";
  }

 private:
  bool csv_;
  std::ofstream file_;
};

std::vector<double> oracle_or_die(const aim_problem* p, int count,
                                  const Options& o) {
  std::vector<double> eigs(static_cast<std::size_t>(count));
  check(aim_oracle_spectrum(p, count, o.r_max, o.grid_m, eigs.data()),
        "oracle");
  return eigs;
}

std::optional<double> exact_of(const aim_problem* p, int level) {
  int has = 0;
  double e = 0.0;
  check(aim_exact_energy(p, level, &has, &e), "exact energy");
  return has ? std::optional<double>(e) : std::nullopt;
}

// ---- solve ------------------------------------------------------------

int cmd_solve(const Options& o) {
  ProblemHandle h;
  build_problem(o, h);
  if (!aim_problem_is_eigenproblem(h.p))
    die("problem '" + o.problem + "' has no energy parameter to solve for");
  const aim_solver_options s = solver_options(o, /*tol_is_root_tol=*/true);
  echo_config("solve", h.p, s, o);

  std::vector<aim_eigenvalue> results(static_cast<std::size_t>(o.levels));
  int found = 0;
  check(aim_solve_spectrum(h.p, &s, o.levels, results.data(), &found),
        "solve");
  if (found < o.levels)
    std::cerr << "# note: only " << found << " of " << o.levels
              << " levels found in [" << fmt(s.e_min) << ", " << fmt(s.e_max)
              << "]\n";

  Output out(o);
  out.header();
  if (!out.csv())
    out.stream() << "level  E                    delta_resid   n    x0"
                 << "        stabilized\n";
  bool all_stable = true;
  const std::string name = problem_name(h.p), json = problem_json(h.p);
  for (int i = 0; i < found; ++i) {
    const auto& r = results[static_cast<std::size_t>(i)];
    all_stable = all_stable && r.stabilized;
    if (out.csv()) {
      Row row;
      row.problem = name;
      row.param_json = json;
      row.level = i;
      row.e_aim = r.energy;
      row.e_exact = exact_of(h.p, i);
      row.delta_residual = r.delta_residual;
      row.n_iter = r.n_used;
      row.x0 = r.x0_used;
      row.stabilized = r.stabilized != 0;
      out.row(row);
    } else {
      char line[160];
      std::snprintf(line, sizeof(line), "%-6d %-20.12f %-13.3e %-4d %-9.5f %s",
                    i, r.energy, r.delta_residual, r.n_used, r.x0_used,
                    r.stabilized ? "yes" : "NO");
      out.stream() << line << "\n";
    }
  }
  return all_stable ? kExitOk : kExitUnstable;
}

// ---- scan -------------------------------------------------------------

int cmd_scan(const Options& o) {
  ProblemHandle h;
  build_problem(o, h);
  const aim_solver_options s = solver_options(o, /*tol_is_root_tol=*/true);
  echo_config("scan", h.p, s, o);

  const int cap = 256;
  std::vector<double> lo(cap), hi(cap);
  int found = 0, skipped = 0;
  check(aim_scan_brackets(h.p, &s, lo.data(), hi.data(), cap, &found,
                          &skipped),
        "scan");
  if (skipped > 0)
    std::cerr << "# warning: " << skipped
              << " grid points skipped (overflow or domain error)\n";

  Output out(o);
  out.header();
  if (!out.csv()) out.stream() << "bracket  E_lo        E_hi\n";
  const std::string name = problem_name(h.p), json = problem_json(h.p);
  for (int i = 0; i < found; ++i) {
    if (out.csv()) {
      Row row;
      row.problem = name;
      row.param_json = json;
      row.level = i;
      row.e_aim = 0.5 * (lo[static_cast<std::size_t>(i)] +
                         hi[static_cast<std::size_t>(i)]);
      row.n_iter = s.max_iter;
      out.row(row);
    } else {
      char line[120];
      std::snprintf(line, sizeof(line), "%-8d %-11.6f %-11.6f", i,
                    lo[static_cast<std::size_t>(i)],
                    hi[static_cast<std::size_t>(i)]);
      out.stream() << line << "\n";
    }
  }
  return kExitOk;
}

// ---- verify -----------------------------------------------------------

int cmd_verify(const Options& o) {
  ProblemHandle h;
  build_problem(o, h);
  if (!aim_problem_is_eigenproblem(h.p))
    die("problem '" + o.problem + "' has no energy spectrum to verify");
  const aim_solver_options s = solver_options(o);
  echo_config("verify", h.p, s, o);

  std::vector<aim_eigenvalue> results(static_cast<std::size_t>(o.levels));
  int found = 0;
  check(aim_solve_spectrum(h.p, &s, o.levels, results.data(), &found),
        "solve");
  const auto oracle = oracle_or_die(h.p, found > 0 ? found : 1, o);

  // Tight default against closed forms, loose against the grid oracle.
  const bool has_exact = exact_of(h.p, 0).has_value();
  const double tol = o.tol > 0.0 ? o.tol : (has_exact ? 1e-8 : 1e-4);

  Output out(o);
  out.header();
  if (!out.csv())
    out.stream() << "level  E_aim                E_oracle             "
                 << "E_exact              |aim-ref|\n";
  const std::string name = problem_name(h.p), json = problem_json(h.p);
  double max_err = 0.0;
  for (int i = 0; i < found; ++i) {
    const auto& r = results[static_cast<std::size_t>(i)];
    const auto exact = exact_of(h.p, i);
    const double reference =
        exact ? *exact : oracle[static_cast<std::size_t>(i)];
    const double err = std::fabs(r.energy - reference);
    max_err = std::max(max_err, err);
    if (out.csv()) {
      Row row;
      row.problem = name;
      row.param_json = json;
      row.level = i;
      row.e_aim = r.energy;
      row.e_oracle = oracle[static_cast<std::size_t>(i)];
      row.e_exact = exact;
      row.delta_residual = r.delta_residual;
      row.n_iter = r.n_used;
      row.x0 = r.x0_used;
      row.stabilized = r.stabilized != 0;
      out.row(row);
    } else {
      char line[200];
      std::snprintf(line, sizeof(line),
                    "%-6d %-20.12f %-20.12f %-20s %.3e", i, r.energy,
                    oracle[static_cast<std::size_t>(i)],
                    exact ? fmt(*exact).c_str() : "-", err);
      out.stream() << line << "\n";
    }
  }
  const bool pass = found == o.levels && max_err <= tol;
  std::cerr << "# verify: max |dE| = " << fmt(max_err) << " tol = " << fmt(tol)
            << " -> " << (pass ? "PASS" : "FAIL") << "\n";
  std::cout << (pass ? "PASS" : "FAIL") << " max|dE|=" << fmt(max_err)
            << "\n";
  return pass ? kExitOk : kExitUnstable;
}

// ---- reconstruct ------------------------------------------------------

int cmd_reconstruct(const Options& o) {
  ProblemHandle h;
  build_problem(o, h);
  const aim_solver_options s = solver_options(o);
  echo_config("reconstruct", h.p, s, o);

  std::vector<double> y(static_cast<std::size_t>(o.points));
  std::vector<double> psi(static_cast<std::size_t>(o.points));
  check(aim_reconstruct(h.p, o.level, &s, o.x_min, o.x_max, o.points, o.c1,
                        o.c2, y.data(), psi.data()),
        "reconstruct");

  Output out(o);
  out.stream() << "x,y,psi\n";
  const double hstep = (o.x_max - o.x_min) / (o.points - 1);
  for (int i = 0; i < o.points; ++i) {
    const double x = o.x_min + i * hstep;
    out.stream() << fmt(x) << "," << fmt(y[static_cast<std::size_t>(i)])
                 << "," << fmt(psi[static_cast<std::size_t>(i)]) << "\n";
  }
  return kExitOk;
}

// ---- reference tables --------------------------------------------------

/// Coupling for the alpha=1.9/2.1 table, fixed by matching the oracle
/// ground state at N=3 to the printed reference value 8.56436.
double calibrate_table1_coupling(const Options& o) {
  const double target = 8.56436;
  auto oracle_e0 = [&](double a) {
    aim_problem* p = nullptr;
    check(aim_problem_create_spiked(0.0, a, 1.9, &p), "calibration problem");
    double e = 0.0;
    aim_status st = aim_oracle_spectrum(p, 1, 14.0, 6000, &e);
    aim_problem_free(p);
    check(st, "calibration oracle");
    return e;
  };
  double lo = 5.0, hi = 20.0;
  double flo = oracle_e0(lo) - target;
  for (int it = 0; it < 40 && hi - lo > 1e-6; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = oracle_e0(mid) - target;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  (void)o;
  return 0.5 * (lo + hi);
}

int cmd_table1(const Options& o) {
  const double coupling = o.coupling_set ? o.coupling
                                         : calibrate_table1_coupling(o);
  std::cerr << "# table1: A = " << fmt(coupling)
            << (o.coupling_set ? " (given)" : " (calibrated)") << "\n";
  const double tol = o.tol > 0.0 ? o.tol : 5e-4;

  Output out(o);
  out.header();
  if (!out.csv())
    out.stream() << "N    E00_aim     E00_oracle  |diff|     E21_aim     "
                 << "E21_oracle  |diff|\n";
  bool pass = true;
  for (int n_dim = 2; n_dim <= 10; ++n_dim) {
    // alpha = 1.9 ground state, l = 0
    ProblemHandle p00;
    check(aim_problem_create_spiked_ndim(n_dim, 0, coupling, 1.9, &p00.p),
          "table1 problem");
    Options local = o;
    local.r_max = 14.0;
    local.grid_m = 6000;
    const double e00_oracle = oracle_or_die(p00.p, 1, local)[0];

    aim_solver_options s;
    aim_solver_options_init(&s);
    s.max_iter = o.iters;
    s.x0_policy = AIM_X0_POTENTIAL_MIN;
    s.e_min = e00_oracle - 2.0;
    s.e_max = e00_oracle + 2.0;
    s.e_step = 0.5;
    aim_eigenvalue r00;
    int found = 0;
    check(aim_solve_spectrum(p00.p, &s, 1, &r00, &found), "table1 solve");
    if (found < 1) die("table1: ground state not found");

    // alpha = 2.1 second excited state, l = 1
    ProblemHandle p21;
    check(aim_problem_create_spiked_ndim(n_dim, 1, coupling, 2.1, &p21.p),
          "table1 problem");
    std::vector<double> oracle21 = oracle_or_die(p21.p, 3, local);
    const double e21_oracle = oracle21[2];
    s.e_min = e21_oracle - 2.0;
    s.e_max = e21_oracle + 2.0;
    aim_eigenvalue r21;
    check(aim_solve_spectrum(p21.p, &s, 1, &r21, &found), "table1 solve");
    if (found < 1) die("table1: excited state not found");

    const double d00 = std::fabs(r00.energy - e00_oracle);
    const double d21 = std::fabs(r21.energy - e21_oracle);
    pass = pass && d00 <= tol && d21 <= tol;
    if (out.csv()) {
      Row row;
      row.problem = "spiked";
      row.param_json = problem_json(p00.p);
      row.level = 0;
      row.e_aim = r00.energy;
      row.e_oracle = e00_oracle;
      row.n_iter = r00.n_used;
      row.x0 = r00.x0_used;
      row.stabilized = r00.stabilized != 0;
      out.row(row);
      row.param_json = problem_json(p21.p);
      row.level = 2;
      row.e_aim = r21.energy;
      row.e_oracle = e21_oracle;
      row.n_iter = r21.n_used;
      row.x0 = r21.x0_used;
      row.stabilized = r21.stabilized != 0;
      out.row(row);
    } else {
      char line[200];
      std::snprintf(line, sizeof(line),
                    "%-4d %-11.5f %-11.5f %-10.2e %-11.5f %-11.5f %-10.2e",
                    n_dim, r00.energy, e00_oracle, d00, r21.energy,
                    e21_oracle, d21);
      out.stream() << line << "\n";
    }
  }
  std::cout << (pass ? "PASS" : "FAIL") << " table1 tol=" << fmt(tol) << "\n";
  return pass ? kExitOk : kExitUnstable;
}

int cmd_table2(const Options& o) {
  // Printed E0 column (direct-integration side) of the alpha = 4 table.
  static const double kRows[12][3] = {
      {0.001, 3, 9.00011427912},  {0.001, 4, 11.00006349074},
      {0.001, 5, 13.00004040364}, {0.01, 3, 9.00114219940},
      {0.01, 4, 11.00063478889},  {0.01, 5, 13.00040400060},
      {0.1, 3, 9.01136402618},    {0.1, 4, 11.00633609923},
      {0.1, 5, 13.00403643252},   {1, 3, 9.10865860752},
      {1, 4, 11.06224171938},     {1, 5, 13.04001518306}};
  Output out(o);
  out.header();
  if (!out.csv())
    out.stream() << "A       gamma  E0_aim            E0_ref            "
                 << "rel_err    tol\n";
  bool pass = true;
  for (const auto& row_def : kRows) {
    const double a = row_def[0], g = row_def[1], target = row_def[2];
    ProblemHandle h;
    check(aim_problem_create_spiked(g, a, 4.0, &h.p), "table2 problem");
    aim_solver_options s;
    aim_solver_options_init(&s);
    // Deep run anchored at the zeroth-order wavefunction peak.
    s.max_iter = o.iters > 12 ? o.iters : 24;
    s.x0_policy = AIM_X0_FIXED;
    s.x0_value = std::sqrt(g + 1.5);
    s.e_min = 2 * g + 2.5;
    s.e_max = 2 * g + 4.5;
    s.e_step = 0.5;
    aim_eigenvalue r;
    int found = 0;
    check(aim_solve_spectrum(h.p, &s, 1, &r, &found), "table2 solve");
    if (found < 1) die("table2: ground state not found");
    const double rel = std::fabs(r.energy - target) / target;
    const double tol = o.tol > 0.0 ? o.tol : (a <= 0.01 ? 1e-7 : 1e-5);
    pass = pass && rel <= tol;
    if (out.csv()) {
      Row row;
      row.problem = "spiked";
      row.param_json = problem_json(h.p);
      row.level = 0;
      row.e_aim = r.energy;
      row.e_oracle = target;
      row.delta_residual = r.delta_residual;
      row.n_iter = r.n_used;
      row.x0 = r.x0_used;
      row.stabilized = r.stabilized != 0;
      out.row(row);
    } else {
      char line[200];
      std::snprintf(line, sizeof(line),
                    "%-7g %-6g %-17.11f %-17.11f %-10.2e %-g", a, g, r.energy,
                    target, rel, tol);
      out.stream() << line << "\n";
    }
  }
  std::cout << (pass ? "PASS" : "FAIL") << " table2\n";
  return pass ? kExitOk : kExitUnstable;
}

int cmd_table3(const Options& o) {
  static const double kEp[6] = {1.065286, 3.306871, 5.747960,
                                8.352642, 11.09835, 13.96695};
  static const double kE[6] = {1.065286, 3.306872, 5.747959,
                               8.352678, 11.09860, 13.96993};
  ProblemHandle h;
  check(aim_problem_create_quartic(o.coupling_set ? o.coupling : 0.1, &h.p),
        "table3 problem");

  auto solve_at = [&](int depth, std::vector<aim_eigenvalue>& res) {
    aim_solver_options s;
    aim_solver_options_init(&s);
    s.max_iter = depth;
    s.x0_policy = AIM_X0_ZERO;
    s.e_min = 0.0;
    s.e_max = 16.0;
    s.e_step = 0.25;
    res.resize(6);
    int found = 0;
    check(aim_solve_spectrum(h.p, &s, 6, res.data(), &found), "table3 solve");
    if (found < 6) die("table3: expected 6 levels, found " +
                       std::to_string(found));
  };
  std::vector<aim_eigenvalue> shallow, deep;
  solve_at(40, shallow);  // depth reproducing the printed iteration column
  solve_at(60, deep);
  const auto oracle = oracle_or_die(h.p, 6, o);

  Output out(o);
  out.header();
  if (!out.csv())
    out.stream() << "n  E_aim40    E_ref40    |d|       E_aim60    "
                 << "E_oracle   |d|       E_ref_int\n";
  bool pass = true;
  for (int i = 0; i < 6; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    const double d_ref = std::fabs(shallow[idx].energy - kEp[i]);
    const double d_oracle = std::fabs(deep[idx].energy - oracle[idx]);
    const double d_printed = std::fabs(oracle[idx] - kE[i]);
    const double tol_ref = i <= 3 ? 1e-5 : 3e-3;
    pass = pass && d_ref <= tol_ref && d_printed <= 1e-5;
    if (i >= 4) pass = pass && d_oracle <= 1e-4;
    if (out.csv()) {
      Row row;
      row.problem = "quartic";
      row.param_json = problem_json(h.p);
      row.level = i;
      row.e_aim = shallow[idx].energy;
      row.e_oracle = oracle[idx];
      row.delta_residual = shallow[idx].delta_residual;
      row.n_iter = shallow[idx].n_used;
      row.x0 = shallow[idx].x0_used;
      row.stabilized = shallow[idx].stabilized != 0;
      out.row(row);
    } else {
      char line[220];
      std::snprintf(line, sizeof(line),
                    "%-2d %-10.6f %-10.6f %-9.1e %-10.6f %-10.6f %-9.1e %.6f",
                    i, shallow[idx].energy, kEp[i], d_ref, deep[idx].energy,
                    oracle[idx], d_oracle, kE[i]);
      out.stream() << line << "\n";
    }
  }
  std::cout << (pass ? "PASS" : "FAIL") << " table3\n";
  return pass ? kExitOk : kExitUnstable;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Asymptotic iteration method eigenvalue solver"};
  app.fallthrough();  // allow `aim solve --problem ...` ordering
  app.set_config("--config", "", "flat key=value config file; flags win");
  Options o;

  app.add_option("--problem", o.problem,
                 "hermite|harmonic1d|gk|spiked|quartic|custom");
  auto* opt_gamma =
      app.add_option("--gamma", o.gamma, "singular-term strength parameter");
  auto* opt_a = app.add_option("--A", o.coupling, "coupling strength");
  app.add_option("--alpha-exp", o.alpha_exp, "spike power alpha in A/x^alpha");
  app.add_option("--k", o.k, "Hermite order");
  auto* opt_n = app.add_option("--N", o.n_dim, "dimension (with --l)");
  app.add_option("--l", o.l, "angular momentum (with --N)");
  app.add_option("--potential", o.potential,
                 "potential expression, e.g. \"x^2 + 0.1*x^4\"");
  app.add_option("--levels", o.levels, "number of levels");
  app.add_option("--iters", o.iters, "iteration depth (default 12)");
  app.add_option("--order", o.order, "jet truncation order (default 2*iters+8)");
  app.add_option("--x0", o.x0, "auto|min|s0zero|<number>");
  app.add_option("--emin", o.e_min, "energy window lower edge");
  app.add_option("--emax", o.e_max, "energy window upper edge");
  app.add_option("--estep", o.e_step, "energy scan step");
  app.add_option("--tol", o.tol, "tolerance (root/verify, per-command default)");
  app.add_option("--format", o.format, "table|csv")
      ->check(CLI::IsMember({"table", "csv"}));
  app.add_option("--out", o.out, "write data output to file");
  app.add_option("--rmax", o.r_max, "oracle domain truncation");
  app.add_option("--gridm", o.grid_m, "oracle grid points");
  app.add_option("--xmin", o.x_min, "reconstruction grid start");
  app.add_option("--xmax", o.x_max, "reconstruction grid end");
  app.add_option("--points", o.points, "reconstruction grid size");
  app.add_option("--C1", o.c1, "integral-mode constant");
  app.add_option("--C2", o.c2, "exponential-mode constant");
  app.add_option("--level", o.level, "level to reconstruct");

  app.require_subcommand(1);
  auto* c_solve = app.add_subcommand("solve", "locate eigenvalues");
  auto* c_scan = app.add_subcommand("scan", "bracket delta sign changes");
  auto* c_verify =
      app.add_subcommand("verify", "AIM vs oracle vs closed forms");
  auto* c_rec = app.add_subcommand("reconstruct", "sample y(x) and psi(x)");
  auto* c_t1 = app.add_subcommand("table1", "spiked alpha=1.9/2.1 table");
  auto* c_t2 = app.add_subcommand("table2", "spiked alpha=4 table");
  auto* c_t3 = app.add_subcommand("table3", "quartic A=0.1 table");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }
  o.ndim_set = opt_n->count() > 0;
  o.gamma_set = opt_gamma->count() > 0;
  o.coupling_set = opt_a->count() > 0;

  try {
    if (c_solve->parsed()) return cmd_solve(o);
    if (c_scan->parsed()) return cmd_scan(o);
    if (c_verify->parsed()) return cmd_verify(o);
    if (c_rec->parsed()) return cmd_reconstruct(o);
    if (c_t1->parsed()) return cmd_table1(o);
    if (c_t2->parsed()) return cmd_table2(o);
    if (c_t3->parsed()) return cmd_table3(o);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
