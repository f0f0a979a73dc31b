// Acceptance suite: one numbered criterion per invocation, each printing
// a single PASS/FAIL line (plus detail lines prefixed with two spaces).
// Run `acceptance all` for the whole battery.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "aim/closed_form.hpp"
#include "aim/eigensolver.hpp"
#include "aim/engine.hpp"
#include "aim/errors.hpp"
#include "aim/oracle.hpp"
#include "aim/potential.hpp"
#include "aim/problems.hpp"

using namespace aim;

namespace {

struct Criterion {
  bool ok = true;
  std::vector<std::string> notes;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      notes.push_back("FAILED: " + what);
    }
  }
  void note(const std::string& what) { notes.push_back(what); }
};

std::string fnum(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

SolverConfig base_config(double lo, double hi, double step) {
  SolverConfig cfg;
  cfg.e_min = lo;
  cfg.e_max = hi;
  cfg.e_step = step;
  return cfg;
}

// --- 1. exact spectra ---------------------------------------------------

void criterion_exact_spectra(Criterion& c) {
  // Depth 12 of the allowed <= 20: deeper runs amplify rounding noise in
  // the exactly-terminating deltas faster than they add accuracy.
  SolverConfig cfg = base_config(0.0, 12.0, 0.25);
  cfg.max_iter = 12;
  cfg.jet_order = 48;
  const auto harmonic = solve_spectrum(ProblemSpec::harmonic1d(), cfg, 5);
  c.expect(harmonic.size() == 5, "harmonic1d: five levels found");
  for (std::size_t n = 0; n < harmonic.size(); ++n) {
    const double expect = 2.0 * static_cast<double>(n) + 1.0;
    c.expect(std::abs(harmonic[n].E - expect) <= 1e-8,
             "harmonic1d E_" + std::to_string(n) + " = " +
                 fnum(harmonic[n].E) + " vs " + fnum(expect));
  }
  for (double gamma : {0.0, 1.0, 2.5, 5.0}) {
    SolverConfig gcfg = base_config(0.5, 4.0 * 3 + 2.0 * gamma + 5.0, 0.25);
    gcfg.max_iter = 12;
    gcfg.jet_order = 48;
    const auto gk =
        solve_spectrum(ProblemSpec::goldman_krivchenkov(gamma), gcfg, 4);
    c.expect(gk.size() == 4,
             "gk gamma=" + fnum(gamma) + ": four levels found");
    for (std::size_t n = 0; n < gk.size(); ++n) {
      const double expect = 4.0 * static_cast<double>(n) + 2.0 * gamma + 3.0;
      c.expect(std::abs(gk[n].E - expect) <= 1e-8,
               "gk gamma=" + fnum(gamma) + " E_" + std::to_string(n) +
                   " = " + fnum(gk[n].E) + " vs " + fnum(expect));
    }
  }
}

// --- 2. hermite termination ----------------------------------------------

void criterion_hermite_termination(Criterion& c) {
  for (int k = 0; k <= 8; ++k) {
    AimEngine eng(Jet::power(1, 2, 0.0, 40), Jet::constant(-2.0 * k, 0.0, 40));
    AimState prev = eng.initial();
    for (int n = 1; n <= 10; ++n) {
      AimState cur = eng.step(prev);
      const Jet dj = AimEngine::delta_jet(prev, cur);
      const double scale =
          std::max({prev.lambda.max_abs_coeff(), cur.lambda.max_abs_coeff(),
                    prev.s.max_abs_coeff(), 1.0});
      if (n >= k) {
        c.expect(dj.max_abs_coeff() <= 1e-9 * scale,
                 "k=" + std::to_string(k) + " n=" + std::to_string(n) +
                     " delta jet zero");
      } else if (n <= 8) {
        // |delta_n| = 2^(n+1) |prod_{i<=n} (k-i)| exactly in integers.
        std::int64_t prod = 1;
        for (int i = 0; i <= n; ++i) prod *= (k - i);
        const auto expect =
            static_cast<double>((std::int64_t{1} << (n + 1)) * prod);
        c.expect(AimEngine::delta(prev, cur, 0.0) == -expect,
                 "k=" + std::to_string(k) + " n=" + std::to_string(n) +
                     " factorization value");
      }
      prev = cur;
    }
  }
}

// --- 3. quartic table ----------------------------------------------------

void criterion_quartic_table(Criterion& c) {
  static const double kEp[6] = {1.065286, 3.306871, 5.747960,
                                8.352642, 11.09835, 13.96695};
  static const double kE[6] = {1.065286, 3.306872, 5.747959,
                               8.352678, 11.09860, 13.96993};
  const auto p = ProblemSpec::quartic(0.1);
  auto solve_at = [&](int depth) {
    SolverConfig cfg = base_config(0.0, 16.0, 0.25);
    cfg.max_iter = depth;
    cfg.x0_policy = X0Policy::zero;
    return solve_spectrum(p, cfg, 6);
  };
  const auto shallow = solve_at(40);
  const auto deep = solve_at(60);
  const auto oracle = oracle_spectrum(p, 6, 12.0, 4000);
  c.expect(shallow.size() == 6 && deep.size() == 6, "six levels found");
  if (shallow.size() < 6 || deep.size() < 6) return;
  for (int i = 0; i < 6; ++i) {
    const auto n = static_cast<std::size_t>(i);
    const double tol = i <= 3 ? 1e-5 : 3e-3;
    c.expect(std::abs(shallow[n].E - kEp[i]) <= tol,
             "E_" + std::to_string(i) + " (40 iterations) = " +
                 fnum(shallow[n].E) + " vs printed " + fnum(kEp[i]));
    c.expect(std::abs(oracle[n] - kE[i]) <= 1e-5,
             "oracle E_" + std::to_string(i) + " = " + fnum(oracle[n]) +
                 " vs printed " + fnum(kE[i]));
    if (i >= 4)
      c.expect(std::abs(deep[n].E - oracle[n]) <= 1e-4,
               "E_" + std::to_string(i) + " (60 iterations) = " +
                   fnum(deep[n].E) + " vs oracle " + fnum(oracle[n]));
  }
  c.note("printed-column comparison ran at depth 40 of the 12-60 band; at "
         "12 iterations the n >= 3 roots are still far from converged");
}

// --- 4. spiked alpha=4 table ----------------------------------------------

void criterion_spiked_table(Criterion& c) {
  static const double kRows[12][3] = {
      {0.001, 3, 9.00011427912},  {0.001, 4, 11.00006349074},
      {0.001, 5, 13.00004040364}, {0.01, 3, 9.00114219940},
      {0.01, 4, 11.00063478889},  {0.01, 5, 13.00040400060},
      {0.1, 3, 9.01136402618},    {0.1, 4, 11.00633609923},
      {0.1, 5, 13.00403643252},   {1, 3, 9.10865860752},
      {1, 4, 11.06224171938},     {1, 5, 13.04001518306}};
  for (const auto& row : kRows) {
    const double a = row[0], gamma = row[1], target = row[2];
    SolverConfig cfg =
        base_config(2 * gamma + 2.5, 2 * gamma + 4.5, 0.5);
    cfg.max_iter = 24;
    cfg.x0_policy = X0Policy::fixed;
    cfg.x0_value = std::sqrt(gamma + 1.5);
    const auto res =
        solve_spectrum(ProblemSpec::spiked(gamma, a, 4.0), cfg, 1);
    c.expect(res.size() == 1,
             "A=" + fnum(a) + " gamma=" + fnum(gamma) + ": root found");
    if (res.empty()) continue;
    const double rel = std::abs(res[0].E - target) / target;
    const double tol = a <= 0.01 ? 1e-7 : 1e-5;
    c.expect(rel <= tol, "A=" + fnum(a) + " gamma=" + fnum(gamma) + ": E=" +
                             fnum(res[0].E) + " rel err " + fnum(rel) +
                             " vs printed " + fnum(target));
  }
  c.note("the (A=0.1, gamma=5) row is checked against 13.00403643 per the "
         "direct-integration column; the printed iteration value has a "
         "leading-digit misprint");
}

// --- 5. alpha=1.9 table with calibrated coupling ---------------------------

void criterion_alpha19_table(Criterion& c) {
  auto oracle_e0 = [](double a) {
    return oracle_spectrum(ProblemSpec::spiked(0.0, a, 1.9), 1, 14.0, 6000)[0];
  };
  double lo = 5.0, hi = 20.0;
  double flo = oracle_e0(lo) - 8.56436;
  for (int it = 0; it < 40 && hi - lo > 1e-6; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (((oracle_e0(mid) - 8.56436) < 0.0) == (flo < 0.0))
      lo = mid, flo = oracle_e0(lo) - 8.56436;
    else
      hi = mid;
  }
  const double coupling = 0.5 * (lo + hi);
  c.note("calibrated coupling A = " + fnum(coupling));
  for (int n_dim = 2; n_dim <= 10; ++n_dim) {
    const auto p = ProblemSpec::spiked_ndim(n_dim, 0, coupling, 1.9);
    const double reference = oracle_spectrum(p, 1, 14.0, 6000)[0];
    SolverConfig cfg = base_config(reference - 2.0, reference + 2.0, 0.5);
    cfg.max_iter = 12;
    cfg.x0_policy = X0Policy::potential_min;
    const auto res = solve_spectrum(p, cfg, 1);
    c.expect(res.size() == 1, "N=" + std::to_string(n_dim) + ": root found");
    if (res.empty()) continue;
    c.expect(std::abs(res[0].E - reference) <= 5e-4,
             "N=" + std::to_string(n_dim) + ": E00 = " + fnum(res[0].E) +
                 " vs oracle " + fnum(reference));
  }
}

// --- 6. constant-coefficient suite -----------------------------------------

void criterion_constant_suite(Criterion& c) {
  AimEngine eng(Jet::constant(4, 0, 4), Jet::constant(-3, 0, 4));
  AimState s = eng.initial();
  std::int64_t pow3 = 9;
  for (int n = 1; n <= 25; ++n) {
    s = eng.step(s);
    pow3 *= 3;
    c.expect(s.lambda.coeff(0) == static_cast<double>((pow3 - 1) / 2),
             "lambda_" + std::to_string(n) + " closed form");
    c.expect(s.s.coeff(0) == static_cast<double>(-(pow3 / 3 - 1) * 3 / 2),
             "s_" + std::to_string(n) + " closed form");
  }
  const double alpha_limit = AimEngine::alpha(s, 0.0);
  c.expect(std::abs(alpha_limit + 1.0) <= 1e-11,
           "alpha limit " + fnum(alpha_limit) + " vs -1");

  // Reconstruction of C2 e^x + C1 e^{3x} on [0, 1] through the general
  // solution formula, alpha sampled from the converged engine state.
  const int npts = 2001;
  std::vector<double> grid(npts), alpha(npts);
  for (int i = 0; i < npts; ++i) {
    grid[static_cast<std::size_t>(i)] = i / static_cast<double>(npts - 1);
    alpha[static_cast<std::size_t>(i)] =
        AimEngine::alpha(s, grid[static_cast<std::size_t>(i)]);
  }
  auto lambda0 = [](double) { return 4.0; };
  const double c2hat = 1.25, c1hat = 0.5;
  const auto rec = reconstruct_solution(lambda0, alpha, grid,
                                        2.0 * c1hat, c2hat + c1hat);
  double worst = 0.0;
  for (int i = 0; i < npts; i += 50) {
    const double x = grid[static_cast<std::size_t>(i)];
    const double expect = c2hat * std::exp(x) + c1hat * std::exp(3.0 * x);
    worst = std::max(worst,
                     std::abs(rec.y_vals[static_cast<std::size_t>(i)] - expect));
  }
  c.expect(worst <= 1e-8,
           "reconstruction max deviation " + fnum(worst) + " <= 1e-8");
}

// --- 7. property suites -----------------------------------------------------

void criterion_properties(Criterion& c) {
  // Jet ring and Leibniz laws.
  {
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> dist(-1e3, 1e3);
    bool ring_ok = true, leibniz_ok = true;
    for (int trial = 0; trial < 150; ++trial) {
      const int order = 4 + trial % 6;
      auto rand_jet = [&] {
        std::vector<double> coeffs(static_cast<std::size_t>(order) + 1);
        for (double& v : coeffs) v = dist(rng);
        return Jet(0.3, std::move(coeffs));
      };
      const Jet a = rand_jet(), b = rand_jet(), d = rand_jet();
      const Jet left = (a * b) * d, right = a * (b * d);
      const Jet dl = a * (b + d), dr = a * b + a * d;
      const Jet pl = (a * b).derivative();
      const Jet pr = a.derivative() * b + a * b.derivative();
      for (int j = 0; j <= order; ++j) {
        const double scale = std::max(std::abs(left.coeff(j)), 1.0);
        if (std::abs(left.coeff(j) - right.coeff(j)) > 1e-10 * scale)
          ring_ok = false;
        if (std::abs(dl.coeff(j) - dr.coeff(j)) > 1e-10 * scale)
          ring_ok = false;
        if (j + 1 <= order &&
            std::abs(pl.coeff(j) - pr.coeff(j)) >
                1e-10 * std::max(std::abs(pl.coeff(j)), 1.0))
          leibniz_ok = false;
      }
    }
    c.expect(ring_ok, "jet ring laws at 1e-10");
    c.expect(leibniz_ok, "Leibniz rule at 1e-10");
  }

  // Substitution identity for the catalog.
  {
    auto fd2 = [](const std::function<double(double)>& f, double x) {
      const double h = 1e-3;
      return (-f(x - 2 * h) + 16 * f(x - h) - 30 * f(x) + 16 * f(x + h) -
              f(x + 2 * h)) /
             (12 * h * h);
    };
    struct Case {
      ProblemSpec p;
      double E, x0, lo, hi;
    };
    const std::vector<Case> cases = {
        {ProblemSpec::harmonic1d(), 2.3, 0.0, -1.2, 1.2},
        {ProblemSpec::quartic(0.1), 1.7, 0.0, -1.2, 1.2},
        {ProblemSpec::goldman_krivchenkov(1.3), 6.1, 1.0, 0.6, 1.4},
        {ProblemSpec::spiked(2.2, 0.3, 1.9), 8.0, 1.2, 0.75, 1.65},
        {ProblemSpec::custom(
             PotentialExpression::parse("x^2 + 0.05*x^4 + 1.5*x^-2")),
         5.0, 1.0, 0.65, 1.35},
    };
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (const auto& cs : cases) {
      auto [lambda0, s0] = cs.p.build_coefficients(cs.E, cs.x0, 40);
      std::vector<double> poly(7);
      for (double& v : poly) v = dist(rng);
      auto y = [&poly](double x) {
        double acc = 0.0;
        for (std::size_t j = poly.size(); j-- > 0;) acc = acc * x + poly[j];
        return acc;
      };
      auto y1 = [&poly](double x) {
        double acc = 0.0;
        for (std::size_t j = poly.size() - 1; j-- > 0;)
          acc = acc * x + poly[j + 1] * static_cast<double>(j + 1);
        return acc;
      };
      auto psi = [&](double x) { return cs.p.envelope(x) * y(x); };
      bool identity_ok = true;
      for (int i = 0; i <= 40; ++i) {
        const double x = cs.lo + (cs.hi - cs.lo) * i / 40.0;
        const double lhs = -fd2(psi, x) + (cs.p.potential(x) - cs.E) * psi(x);
        const double rhs =
            -cs.p.envelope(x) *
            (fd2(y, x) - lambda0.eval(x) * y1(x) - s0.eval(x) * y(x));
        const double scale = std::max({std::abs(lhs), std::abs(rhs), 1.0});
        if (std::abs(lhs - rhs) > 1e-8 * scale) identity_ok = false;
      }
      c.expect(identity_ok, cs.p.name() + ": substitution identity at 1e-8");
    }
  }

  // Joint rescaling leaves sign(delta) and alpha unchanged.
  {
    std::mt19937 rng(29);
    std::uniform_real_distribution<double> dist(0.01, 100.0);
    // k = 3 problem at the (1, 2) pair, where delta has not terminated.
    AimEngine eng(Jet::power(1, 2, 0.6, 20), Jet::constant(-6, 0.6, 20));
    AimState state = eng.step(eng.initial());
    bool sign_ok = true, alpha_ok = true;
    for (int trial = 0; trial < 50; ++trial) {
      const double scale = dist(rng);
      AimState scaled{state.lambda.scaled(scale), state.s.scaled(scale),
                      state.n, state.scale_log + std::log(scale)};
      AimState next = eng.step(state), next_scaled = eng.step(scaled);
      const double d1 = AimEngine::delta(state, next, 0.6);
      const double d2 = AimEngine::delta(scaled, next_scaled, 0.6);
      if (std::signbit(d1) != std::signbit(d2)) sign_ok = false;
      const double a1 = AimEngine::alpha(next, 0.9);
      const double a2 = AimEngine::alpha(next_scaled, 0.9);
      if (std::abs(a1 - a2) > 1e-12 * std::abs(a1)) alpha_ok = false;
    }
    c.expect(sign_ok, "joint rescaling preserves sign(delta) bit-for-bit");
    c.expect(alpha_ok, "joint rescaling preserves alpha at 1e-12");
  }

  // x0 robustness at 1e-6 for harmonic1d and quartic(0.1), x0 in
  // {0, 0.5, 1.0}.
  {
    auto ground = [](const ProblemSpec& p, double x0, int depth) {
      SolverConfig cfg = base_config(0.5, 1.5, 0.25);
      cfg.max_iter = depth;
      cfg.x0_policy = x0 == 0.0 ? X0Policy::zero : X0Policy::fixed;
      cfg.x0_value = x0;
      const auto res = solve_spectrum(p, cfg, 1);
      return res.empty() ? std::nan("") : res[0].E;
    };
    const double h0 = ground(ProblemSpec::harmonic1d(), 0.0, 12);
    const double h5 = ground(ProblemSpec::harmonic1d(), 0.5, 12);
    const double h1 = ground(ProblemSpec::harmonic1d(), 1.0, 12);
    c.expect(std::abs(h5 - h0) <= 1e-6 && std::abs(h1 - h0) <= 1e-6,
             "harmonic1d ground state x0-robust at 1e-6");
    const double q0 = ground(ProblemSpec::quartic(0.1), 0.0, 60);
    const double q5 = ground(ProblemSpec::quartic(0.1), 0.5, 60);
    const double q1 = ground(ProblemSpec::quartic(0.1), 1.0, 60);
    c.expect(std::abs(q5 - q0) <= 1e-6,
             "quartic ground state x0 in {0, 0.5} robust at 1e-6 (spread " +
                 fnum(std::abs(q5 - q0)) + ")");
    c.expect(std::abs(q1 - q0) <= 1e-6,
             "quartic ground state x0 = 1.0 within 1e-6 of x0 = 0 (spread " +
                 fnum(std::abs(q1 - q0)) +
                 "; the x0 = 1 root sequence oscillates at the 1e-5 scale "
                 "and double precision runs out before it settles - "
                 "verified unattainable, see the project notes)");
  }

  // GK wavefunction normalization.
  {
    bool norm_ok = true;
    for (int n = 0; n <= 3; ++n) {
      for (double gamma : {0.0, 1.0, 2.5}) {
        const int pts = 4801;
        const double hq = 12.0 / (pts - 1);
        double acc = 0.0;
        for (int i = 0; i < pts; ++i) {
          const double r = i * hq;
          const double psi = gk_wavefunction(n, gamma, r);
          const double w =
              (i == 0 || i == pts - 1) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
          acc += w * psi * psi;
        }
        acc *= hq / 3.0;
        if (std::abs(acc - 1.0) > 1e-8) norm_ok = false;
      }
    }
    c.expect(norm_ok, "gk wavefunction normalization at 1e-8");
  }

  // Oracle grid convergence ~ second order.
  {
    GridEigenProblem gp{12.0, 1000, [](double x) { return x * x; },
                        GridBoundary::odd_at_zero};
    const double e1 = fd_eigenvalues_single(gp, 1)[0];
    gp.m = 2001;
    const double e2 = fd_eigenvalues_single(gp, 1)[0];
    gp.m = 4003;
    const double e3 = fd_eigenvalues_single(gp, 1)[0];
    const double ratio = (e1 - e2) / (e2 - e3);
    c.expect(std::abs(ratio - 4.0) <= 0.4,
             "oracle convergence ratio " + fnum(ratio) + " ~ 4");
  }
}

struct Entry {
  int id;
  const char* title;
  void (*fn)(Criterion&);
};

const Entry kEntries[] = {
    {1, "exact spectra (harmonic 2n+1, GK 4n+2g+3)", criterion_exact_spectra},
    {2, "hermite termination and delta factorization",
     criterion_hermite_termination},
    {3, "quartic A=0.1 table reproduction", criterion_quartic_table},
    {4, "spiked alpha=4 table reproduction", criterion_spiked_table},
    {5, "spiked alpha=1.9 table vs oracle with calibrated A",
     criterion_alpha19_table},
    {6, "constant-coefficient closed forms and reconstruction",
     criterion_constant_suite},
    {7, "property suites", criterion_properties},
};

int run_one(const Entry& e) {
  Criterion c;
  try {
    e.fn(c);
  } catch (const std::exception& ex) {
    c.ok = false;
    c.notes.push_back(std::string("exception: ") + ex.what());
  }
  std::printf("[%s] criterion %d: %s\n", c.ok ? "PASS" : "FAIL", e.id,
              e.title);
  for (const auto& note : c.notes) std::printf("  %s\n", note.c_str());
  std::fflush(stdout);
  return c.ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: %s <1..7|all>\n", argv[0]);
    return 2;
  }
  if (std::strcmp(argv[1], "all") == 0) {
    int failures = 0;
    for (const auto& e : kEntries) failures += run_one(e);
    std::printf("%d of %zu criteria passed\n",
                static_cast<int>(std::size(kEntries)) - failures,
                std::size(kEntries));
    return failures == 0 ? 0 : 1;
  }
  const int want = std::atoi(argv[1]);
  for (const auto& e : kEntries)
    if (e.id == want) return run_one(e);
  std::fprintf(stderr, "no criterion %s\n", argv[1]);
  return 2;
}
