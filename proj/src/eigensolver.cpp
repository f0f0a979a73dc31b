#include "aim/eigensolver.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <limits>
#include <mutex>
#include <string>
#include <thread>

#include "aim/engine.hpp"
#include "aim/errors.hpp"

namespace aim {

namespace {

int effective_threads(int requested, int jobs) {
  int n = requested;
  if (n <= 0) {
    if (const char* env = std::getenv("AIM_MAX_THREADS")) {
      n = std::atoi(env);
    }
  }
  if (n <= 0) n = static_cast<int>(std::thread::hardware_concurrency());
  if (n <= 0) n = 1;
  return std::max(1, std::min(n, jobs));
}

void parallel_for(int jobs, int threads, const std::function<void(int)>& fn) {
  if (threads <= 1 || jobs <= 1) {
    for (int i = 0; i < jobs; ++i) fn(i);
    return;
  }
  std::exception_ptr first_error;
  std::mutex err_mutex;
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next.fetch_add(1); i < jobs; i = next.fetch_add(1)) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

int resolve_order(const SolverConfig& cfg) {
  // Each iteration consumes at most one order of accuracy through the
  // derivative and one through the product, so keep 2*max_iter plus slack.
  return cfg.jet_order > 0 ? cfg.jet_order : 2 * cfg.max_iter + 8;
}

void validate(const SolverConfig& cfg) {
  if (!(cfg.e_min < cfg.e_max)) throw UsageError("need e_min < e_max");
  if (!(cfg.e_step > 0.0)) throw UsageError("need e_step > 0");
  if (cfg.max_iter < 2) throw UsageError("need max_iter >= 2");
  if (cfg.stab_window < 1) throw UsageError("need stab_window >= 1");
  if (!(cfg.root_tol > 0.0)) throw UsageError("need root_tol > 0");
}

double golden_section_min(const std::function<double(double)>& f, double a,
                          double b, double tol) {
  const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > tol) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    }
  }
  return 0.5 * (a + b);
}

/// s0(x; E) as a plain function of x (order-0 jet constant term).
double s0_value(const ProblemSpec& p, double E, double x) {
  return p.build_coefficients(E, x, 0).second.coeff(0);
}

struct DeltaProbe {
  const ProblemSpec& p;
  double x0;
  int order;

  /// delta_n for n = 1..depth in one engine pass.
  std::vector<double> sequence(double E, int depth) const {
    auto [l0, s0] = p.build_coefficients(E, x0, order);
    AimEngine engine(std::move(l0), std::move(s0));
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(depth));
    AimState prev = engine.initial();
    for (int n = 1; n <= depth; ++n) {
      AimState cur = engine.step(prev);
      out.push_back(AimEngine::delta(prev, cur, x0));
      prev = std::move(cur);
    }
    return out;
  }

  double at_depth(double E, int depth) const {
    return sequence(E, depth).back();
  }
};

double bisect_root(const std::function<double(double)>& f, double lo,
                   double hi, double tol) {
  double flo = f(lo);
  if (flo == 0.0) return lo;
  double fhi = f(hi);
  if (fhi == 0.0) return hi;
  if ((flo < 0.0) == (fhi < 0.0))
    throw NoBracketError("delta does not change sign on the bracket");
  for (int it = 0; it < 200 && hi - lo > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double x0_potential_min(const ProblemSpec& p) {
  switch (p.kind()) {
    case ProblemKind::spiked:
      if (p.coupling() == 0.0)
        throw DomainError(
            "A = 0 leaves no interior minimum; pick another x0 policy");
      return std::pow(p.alpha_exp() * p.coupling() / 2.0,
                      1.0 / (p.alpha_exp() + 2.0));
    case ProblemKind::custom: {
      auto v = [&p](double x) { return p.potential(x); };
      return golden_section_min(v, 1e-6, 10.0, 1e-10);
    }
    default:
      throw UsageError(
          "potential_min policy applies to spiked or custom problems");
  }
}

double x0_s0_zero(const ProblemSpec& p, double E_guess) {
  if (p.kind() == ProblemKind::spiked && p.alpha_exp() == 4.0) {
    if (E_guess == 1.0)
      throw DomainError("s0 = 0 closed form divides by E - 1");
    if (E_guess > 1.0) {
      const double pv =
          p.gamma() * (p.gamma() + 1.0) / (2.0 * (E_guess - 1.0));
      const double rad = pv * pv + p.coupling() / (E_guess - 1.0);
      if (rad >= 0.0) {
        const double inner = pv + std::sqrt(rad);
        if (inner > 0.0) return std::sqrt(inner);
      }
    }
  }
  // Numeric fallback: bisection on (0, 10].
  auto g = [&](double x) { return s0_value(p, E_guess, x); };
  const int samples = 400;
  double prev_x = 10.0 / samples;
  double prev_g = g(prev_x);
  for (int i = 2; i <= samples; ++i) {
    const double x = 10.0 * i / samples;
    const double gx = g(x);
    if (prev_g == 0.0) return prev_x;
    if ((prev_g < 0.0) != (gx < 0.0)) {
      double lo = prev_x, hi = x, glo = prev_g;
      while (hi - lo > 1e-14 * std::max(1.0, hi)) {
        const double mid = 0.5 * (lo + hi);
        const double gm = g(mid);
        if (gm == 0.0) return mid;
        if ((gm < 0.0) == (glo < 0.0)) {
          lo = mid;
          glo = gm;
        } else {
          hi = mid;
        }
      }
      return 0.5 * (lo + hi);
    }
    prev_x = x;
    prev_g = gx;
  }
  throw NoBracketError(
      "s0 has no zero on (0, 10] at this energy; try the potential_min "
      "policy");
}

double resolve_x0(const ProblemSpec& p, const SolverConfig& cfg,
                  double E_guess) {
  switch (cfg.x0_policy) {
    case X0Policy::fixed:
      return cfg.x0_value;
    case X0Policy::zero:
      return 0.0;
    case X0Policy::potential_min:
      return x0_potential_min(p);
    case X0Policy::s0_zero:
      return x0_s0_zero(p, E_guess);
    case X0Policy::automatic:
      break;
  }
  switch (p.kind()) {
    case ProblemKind::spiked:
      return p.coupling() > 0.0 ? x0_potential_min(p) : 1.0;
    case ProblemKind::goldman_krivchenkov:
      return 1.0;
    case ProblemKind::custom:
      return p.singular_origin() ? x0_potential_min(p) : 0.0;
    default:
      return 0.0;  // harmonic1d, quartic, hermite
  }
}

double solver_delta(const ProblemSpec& p, double E, double x0, int depth,
                    int order) {
  if (depth < 1) throw UsageError("depth must be >= 1");
  if (order < 1) throw UsageError("order must be >= 1");
  return DeltaProbe{p, x0, order}.at_depth(E, depth);
}

ScanResult scan(const ProblemSpec& p, const SolverConfig& cfg) {
  validate(cfg);
  if (!p.eigenproblem())
    throw UsageError("hermite has no energy parameter; nothing to scan");
  const int order = resolve_order(cfg);
  const double span = cfg.e_max - cfg.e_min;
  const int npoints =
      static_cast<int>(std::floor(span / cfg.e_step + 1e-9)) + 1;

  std::vector<double> energies(static_cast<std::size_t>(npoints));
  std::vector<double> deltas(static_cast<std::size_t>(npoints));
  std::vector<char> ok(static_cast<std::size_t>(npoints), 0);
  for (int i = 0; i < npoints; ++i)
    energies[static_cast<std::size_t>(i)] = cfg.e_min + i * cfg.e_step;

  const int threads = effective_threads(cfg.max_threads, npoints);
  std::exception_ptr sample_error;
  std::mutex sample_error_mutex;
  parallel_for(npoints, threads, [&](int i) {
    const auto idx = static_cast<std::size_t>(i);
    try {
      const double x0 = resolve_x0(p, cfg, energies[idx]);
      deltas[idx] =
          DeltaProbe{p, x0, order}.at_depth(energies[idx], cfg.max_iter);
      ok[idx] = 1;
    } catch (const Error&) {
      ok[idx] = 0;  // reported as skipped below
      std::lock_guard<std::mutex> lock(sample_error_mutex);
      if (!sample_error) sample_error = std::current_exception();
    }
  });

  ScanResult out;
  for (int i = 0; i < npoints; ++i)
    if (!ok[static_cast<std::size_t>(i)])
      out.skipped.push_back(energies[static_cast<std::size_t>(i)]);
  // Nothing sampled at all means the configuration is broken, not that
  // the window is empty; surface the underlying error.
  if (static_cast<int>(out.skipped.size()) == npoints && sample_error)
    std::rethrow_exception(sample_error);
  for (int i = 0; i + 1 < npoints; ++i) {
    const auto a = static_cast<std::size_t>(i);
    const auto b = a + 1;
    if (!ok[a] || !ok[b]) continue;
    if (deltas[a] == 0.0) {
      out.brackets.push_back({energies[a], energies[a]});
    } else if (deltas[b] != 0.0 &&
               (deltas[a] < 0.0) != (deltas[b] < 0.0)) {
      out.brackets.push_back({energies[a], energies[b]});
    }
  }
  // A zero landing exactly on the last grid point is its own bracket.
  if (npoints >= 2) {
    const auto last = static_cast<std::size_t>(npoints - 1);
    if (ok[last] && deltas[last] == 0.0)
      out.brackets.push_back({energies[last], energies[last]});
  }
  return out;
}

EigenvalueResult refine(const ProblemSpec& p, const SolverConfig& cfg,
                        EnergyBracket bracket) {
  validate(cfg);
  if (!(bracket.lo <= bracket.hi)) throw UsageError("bad bracket");
  const int order = resolve_order(cfg);
  const double E_guess = 0.5 * (bracket.lo + bracket.hi);
  const double x0 = resolve_x0(p, cfg, E_guess);
  const DeltaProbe probe{p, x0, order};

  EigenvalueResult res;
  res.n_used = cfg.max_iter;
  res.x0_used = x0;

  const int window = std::min(cfg.stab_window, cfg.max_iter);
  res.depth_roots.assign(static_cast<std::size_t>(window),
                         std::numeric_limits<double>::quiet_NaN());
  bool all_depths_bracketed = true;
  for (int k = 0; k < window; ++k) {
    const int depth = cfg.max_iter - (window - 1) + k;
    try {
      double root;
      if (bracket.lo == bracket.hi) {
        // Exact zero hit on the scan grid; confirm it at this depth.
        root = bracket.lo;
        if (std::abs(probe.at_depth(root, depth)) > 0.0 && depth != cfg.max_iter)
          all_depths_bracketed = false;
      } else {
        root = bisect_root(
            [&](double E) { return probe.at_depth(E, depth); }, bracket.lo,
            bracket.hi, cfg.root_tol);
      }
      res.depth_roots[static_cast<std::size_t>(k)] = root;
    } catch (const NoBracketError&) {
      if (depth == cfg.max_iter) throw;  // top depth must bracket
      all_depths_bracketed = false;
    }
  }

  res.E = res.depth_roots.back();
  res.delta_residual = std::abs(probe.at_depth(res.E, cfg.max_iter));

  if (all_depths_bracketed) {
    double lo = res.E, hi = res.E;
    for (double r : res.depth_roots) {
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
    res.stabilized = (hi - lo) <= 10.0 * cfg.root_tol;
  } else {
    res.stabilized = false;
  }
  return res;
}

std::vector<EigenvalueResult> solve_spectrum(const ProblemSpec& p,
                                             const SolverConfig& cfg,
                                             int count) {
  if (count < 1) throw UsageError("count must be >= 1");
  if (!p.eigenproblem())
    throw UsageError("hermite has no energy parameter; not an eigenproblem");
  const ScanResult sc = scan(p, cfg);
  std::vector<EigenvalueResult> found;
  for (const auto& bracket : sc.brackets) {
    try {
      found.push_back(refine(p, cfg, bracket));
    } catch (const Error&) {
      // Sign change seen on the scan grid but lost under the refine x0
      // (possible under the s0_zero policy), or the engine overflowed
      // inside the bracket; treat the bracket as spurious.
    }
  }
  std::sort(found.begin(), found.end(),
            [](const EigenvalueResult& a, const EigenvalueResult& b) {
              return a.E < b.E;
            });
  std::vector<EigenvalueResult> merged;
  for (auto& r : found) {
    if (!merged.empty() && std::abs(r.E - merged.back().E) <= cfg.root_tol) {
      // Same root reached from two brackets; keep the better diagnosed one.
      if ((r.stabilized && !merged.back().stabilized) ||
          (r.stabilized == merged.back().stabilized &&
           r.delta_residual < merged.back().delta_residual))
        merged.back() = std::move(r);
      continue;
    }
    merged.push_back(std::move(r));
  }
  if (static_cast<int>(merged.size()) > count)
    merged.resize(static_cast<std::size_t>(count));
  return merged;
}

ReconstructionResult reconstruct_level(const ProblemSpec& p, int level,
                                       const SolverConfig& cfg, double x_lo,
                                       double x_hi, int n_points, double C1,
                                       double C2) {
  if (n_points < 3) throw UsageError("need at least 3 grid points");
  if (!(x_lo < x_hi)) throw UsageError("need x_lo < x_hi");
  if (level < 0) throw UsageError("level must be >= 0");
  if (p.singular_origin() && x_lo <= 0.0)
    throw DomainError("grid must stay inside (0, inf) for singular problems");

  // Exactly terminating levels converge within a couple of iterations past
  // the level index; running deeper only amplifies rounding noise in the
  // sampled ratio. Numerically solved energies keep the configured depth.
  double E = 0.0;
  int depth = 0;
  if (p.kind() == ProblemKind::hermite) {
    depth = std::max(p.hermite_k() + 2, 4);
  } else if (auto exact = exact_energy(p, level)) {
    E = *exact;
    depth = std::max(level + 2, 4);
  } else {
    auto found = solve_spectrum(p, cfg, level + 1);
    if (static_cast<int>(found.size()) <= level)
      throw NoBracketError(
          "level not found inside the configured energy window");
    E = found[static_cast<std::size_t>(level)].E;
    depth = std::max(cfg.max_iter, 2);
  }

  const double x0 = p.singular_origin() ? 0.5 * (x_lo + x_hi) : 0.0;
  // Sampling far from x0 leans on the high-order tail, so keep a generous
  // truncation order.
  const int order =
      cfg.jet_order > 0 ? cfg.jet_order : std::max(2 * depth + 8, 64);
  auto [lambda0, s0] = p.build_coefficients(E, x0, order);
  AimEngine engine(std::move(lambda0), std::move(s0));
  AimState prev = engine.initial();
  AimState state = engine.step(prev);
  for (int n = 1; n < depth; ++n) {
    prev = state;
    state = engine.step(prev);
  }

  std::vector<double> grid(static_cast<std::size_t>(n_points));
  std::vector<double> alpha(static_cast<std::size_t>(n_points));
  const double h = (x_hi - x_lo) / (n_points - 1);
  for (int i = 0; i < n_points; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    grid[idx] = x_lo + i * h;
    // The ratio is the same at consecutive depths once converged; where
    // lambda_n happens to vanish at a grid point, the previous state
    // supplies an equally valid sample.
    const double denom = state.lambda.eval(grid[idx]);
    if (std::abs(denom) >= 1e-300) {
      alpha[idx] = state.s.eval(grid[idx]) / denom;
    } else {
      const double denom_prev = prev.lambda.eval(grid[idx]);
      alpha[idx] = std::abs(denom_prev) >= 1e-300
                       ? prev.s.eval(grid[idx]) / denom_prev
                       : std::numeric_limits<double>::quiet_NaN();
    }
  }

  auto lambda0_fn = [&p, E](double x) {
    return p.build_coefficients(E, x, 0).first.coeff(0);
  };
  std::function<double(double)> envelope;
  if (p.kind() == ProblemKind::hermite) {
    // Oscillator form of the Hermite equation: psi = exp(-x^2/2) f.
    envelope = [](double x) { return std::exp(-0.5 * x * x); };
  } else {
    envelope = [&p](double x) { return p.envelope(x); };
  }
  return reconstruct_solution(lambda0_fn, alpha, grid, C1, C2, envelope);
}

}  // namespace aim
