#ifndef AIM_ENGINE_HPP
#define AIM_ENGINE_HPP

#include <vector>

#include "aim/jet.hpp"

namespace aim {

/// The coefficient pair (lambda_n, s_n) after n iterations, plus the
/// accumulated logarithm of the joint rescale factors applied to the pair.
/// Rescaling is always joint and positive, so the sign of delta and the
/// ratio s_n/lambda_n are unchanged by it.
struct AimState {
  Jet lambda;
  Jet s;
  int n = 0;
  double scale_log = 0.0;
};

struct IterationRecord {
  int n = 0;
  double delta_at_x0 = 0.0;  // s_n*l_{n-1} - s_{n-1}*l_n at x0, rescaled units
  double alpha_at_x0 = 0.0;  // s_n/lambda_n at x0; NaN when lambda_n(x0) ~ 0
};

struct RunResult {
  std::vector<IterationRecord> records;
  bool terminated = false;  // |delta| stayed under tolerance for 3 straight n
  int terminated_at = 0;    // first n of the successful streak
};

/// Pair jointly divided by its max coefficient once it exceeds this.
inline constexpr double kRescaleThreshold = 1e100;
/// |delta| < kTerminationTol * max|lambda coeff| counts as a termination hit.
inline constexpr double kTerminationTol = 1e-12;
/// Streak length of termination hits required to declare convergence.
inline constexpr int kTerminationStreak = 3;

/// Runs the iteration
///
///     lambda_n = lambda_{n-1}' + s_{n-1} + lambda0 * lambda_{n-1}
///     s_n      = s_{n-1}'      + s0      * lambda_{n-1}
///
/// on jets about a common expansion point.  The engine retains the seed
/// pair (lambda0, s0); states are immutable values produced by step().
class AimEngine {
 public:
  /// Both jets must share x0 and order. lambda0 identically zero makes the
  /// equation first-order in disguise and the iteration meaningless; it is
  /// not rejected but will simply never terminate.
  AimEngine(Jet lambda0, Jet s0);

  const Jet& lambda0() const { return lambda0_; }
  const Jet& s0() const { return s0_; }

  /// State at n = 0 (the seed pair itself).
  AimState initial() const;

  /// One application of the recurrence. Throws OverflowError naming the
  /// failed iteration if coefficients leave the finite range.
  AimState step(const AimState& state) const;

  /// Termination functional delta_n = s_n l_{n-1} - s_{n-1} l_n evaluated
  /// at x via jet arithmetic. cur must be one step past prev. The value is
  /// in rescaled units: only its sign and zero crossings are meaningful
  /// when rescaling has occurred.
  static double delta(const AimState& prev, const AimState& cur, double x);

  /// Full jet of the termination functional (for location-independence
  /// checks: terminating problems drive every coefficient to zero).
  static Jet delta_jet(const AimState& prev, const AimState& cur);

  /// s_n(x) / lambda_n(x). Throws DegeneracyError when |lambda_n(x)| is
  /// below 1e-300; the caller should move x.
  static double alpha(const AimState& state, double x);

  /// Iterates n = 1..max_iter, recording delta and alpha at x_eval, and
  /// stops early once |delta| stays below the termination tolerance for
  /// three consecutive n.
  RunResult run(int max_iter, double x_eval) const;

 private:
  Jet lambda0_;
  Jet s0_;
};

}  // namespace aim

#endif
