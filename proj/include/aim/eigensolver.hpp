#ifndef AIM_EIGENSOLVER_HPP
#define AIM_EIGENSOLVER_HPP

#include <utility>
#include <vector>

#include "aim/closed_form.hpp"
#include "aim/problems.hpp"

namespace aim {

enum class X0Policy {
  automatic,      // per-problem default (see resolve_x0)
  fixed,          // use SolverConfig::x0_value
  potential_min,  // x0 minimizes V
  s0_zero,        // x0 solves s0(x; E_guess) = 0
  zero,           // x0 = 0
};

struct SolverConfig {
  X0Policy x0_policy = X0Policy::automatic;
  double x0_value = 0.0;
  int max_iter = 12;
  int jet_order = 0;  // <= 0: use 2*max_iter + 8
  double e_min = 0.0;
  double e_max = 50.0;
  double e_step = 0.25;
  int stab_window = 3;     // consecutive depths that must agree on a root
  double root_tol = 1e-10;  // absolute bisection tolerance in E
  int max_threads = 0;  // <= 0: AIM_MAX_THREADS env var, then hardware
};

struct EigenvalueResult {
  double E = 0.0;
  int n_used = 0;
  double delta_residual = 0.0;  // |delta| at the root, rescaled units
  double x0_used = 0.0;
  bool stabilized = false;
  /// Root estimates at depths n_used - stab_window + 1 .. n_used
  /// (ascending depth); NaN where the bracket lost its sign change.
  std::vector<double> depth_roots;
};

struct EnergyBracket {
  double lo = 0.0;
  double hi = 0.0;  // lo == hi marks an exact zero hit on the scan grid
};

struct ScanResult {
  std::vector<EnergyBracket> brackets;
  std::vector<double> skipped;  // grid energies dropped (overflow/domain)
};

/// x0 minimizing the potential: (alpha*A/2)^(1/(alpha+2)) for the spiked
/// family, golden-section search on (0, 10] for custom potentials.
double x0_potential_min(const ProblemSpec& p);

/// x0 with s0(x0; E_guess) = 0: closed form for the spiked family at
/// alpha_exp = 4 and E_guess > 1, otherwise bisection on (0, 10]. Throws
/// NoBracketError when s0 has no zero (try potential_min instead).
double x0_s0_zero(const ProblemSpec& p, double E_guess);

/// Applies the configured policy. `automatic` picks per-kind defaults:
/// zero for harmonic1d/quartic/hermite, potential_min for spiked, a fixed
/// interior point for goldman_krivchenkov, and for custom potentials zero
/// or the potential minimum depending on whether the origin is singular.
double resolve_x0(const ProblemSpec& p, const SolverConfig& cfg,
                  double E_guess);

/// delta_n(E) = (s_n l_{n-1} - s_{n-1} l_n)(x0) after `depth` iterations
/// with jets of the given order. The solver locates eigenvalues as zeros
/// of this in E.
double solver_delta(const ProblemSpec& p, double E, double x0, int depth,
                    int order);

/// Sign-change brackets of delta_{max_iter}(E; x0) across the energy
/// grid. Grid points where the engine overflows or x0 cannot be resolved
/// are skipped and reported. Grid evaluations may run concurrently;
/// results are deterministic.
ScanResult scan(const ProblemSpec& p, const SolverConfig& cfg);

/// Bisection on the bracket at depth max_iter, then stabilization checks
/// at the stab_window-1 shallower depths: the result is flagged
/// stabilized only when all depth roots agree within 10*root_tol.
/// For the s0_zero policy, E_guess is frozen at the bracket midpoint for
/// the whole refinement so delta(E) stays a fixed function of E.
EigenvalueResult refine(const ProblemSpec& p, const SolverConfig& cfg,
                        EnergyBracket bracket);

/// scan + refine, sorted ascending, duplicates within root_tol merged,
/// truncated to `count`. Unstabilized roots are reported, never dropped.
std::vector<EigenvalueResult> solve_spectrum(const ProblemSpec& p,
                                             const SolverConfig& cfg,
                                             int count);

/// End-to-end solution sampling for one level: resolves the energy
/// (closed form when available, otherwise solve_spectrum), runs the
/// iteration, samples alpha = s_n/lambda_n on a uniform grid over
/// [x_lo, x_hi], and integrates the general-solution formula. The
/// envelope applied to psi is the problem's asymptotic factor; the
/// hermite kind gets the Gaussian of its oscillator form. For singular
/// problems the sampling jets expand about the grid midpoint, so the grid
/// must stay inside (0, 2*midpoint): keep x_lo well above 0.
ReconstructionResult reconstruct_level(const ProblemSpec& p, int level,
                                       const SolverConfig& cfg, double x_lo,
                                       double x_hi, int n_points, double C1,
                                       double C2);

}  // namespace aim

#endif
