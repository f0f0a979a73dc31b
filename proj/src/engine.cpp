#include "aim/engine.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "aim/errors.hpp"

namespace aim {

AimEngine::AimEngine(Jet lambda0, Jet s0)
    : lambda0_(std::move(lambda0)), s0_(std::move(s0)) {
  if (lambda0_.x0() != s0_.x0() || lambda0_.order() != s0_.order())
    throw UsageError("lambda0 and s0 must share x0 and order");
}

AimState AimEngine::initial() const { return AimState{lambda0_, s0_, 0, 0.0}; }

AimState AimEngine::step(const AimState& state) const {
  const int n = state.n + 1;
  Jet lam = Jet(), snew = Jet();
  try {
    // Operands are compatible by construction, so the only way these
    // operations can throw is the finiteness check on the results.
    lam = state.lambda.derivative() + state.s + lambda0_ * state.lambda;
    snew = state.s.derivative() + s0_ * state.lambda;
  } catch (const Error&) {
    throw OverflowError(
        "iteration overflowed to non-finite coefficients at n = " +
            std::to_string(n),
        n);
  }
  double scale_log = state.scale_log;
  const double m = std::max(lam.max_abs_coeff(), snew.max_abs_coeff());
  if (!std::isfinite(m))
    throw OverflowError(
        "iteration overflowed to non-finite coefficients at n = " +
            std::to_string(n),
        n);
  if (m > kRescaleThreshold) {
    lam = lam.scaled(1.0 / m);
    snew = snew.scaled(1.0 / m);
    scale_log += std::log(m);
  }
  return AimState{std::move(lam), std::move(snew), n, scale_log};
}

double AimEngine::delta(const AimState& prev, const AimState& cur, double x) {
  return delta_jet(prev, cur).eval(x);
}

Jet AimEngine::delta_jet(const AimState& prev, const AimState& cur) {
  if (cur.n != prev.n + 1)
    throw UsageError("delta needs states one iteration apart");
  return cur.s * prev.lambda - prev.s * cur.lambda;
}

double AimEngine::alpha(const AimState& state, double x) {
  const double denom = state.lambda.eval(x);
  if (std::abs(denom) < 1e-300)
    throw DegeneracyError("lambda_n vanishes at the evaluation point");
  return state.s.eval(x) / denom;
}

RunResult AimEngine::run(int max_iter, double x_eval) const {
  if (max_iter < 1) throw UsageError("max_iter must be >= 1");
  RunResult out;
  out.records.reserve(static_cast<std::size_t>(max_iter));
  AimState prev = initial();
  int streak = 0;
  for (int n = 1; n <= max_iter; ++n) {
    AimState cur = step(prev);
    IterationRecord rec;
    rec.n = n;
    rec.delta_at_x0 = delta(prev, cur, x_eval);
    const double denom = cur.lambda.eval(x_eval);
    rec.alpha_at_x0 = std::abs(denom) < 1e-300
                          ? std::numeric_limits<double>::quiet_NaN()
                          : cur.s.eval(x_eval) / denom;
    out.records.push_back(rec);
    if (std::abs(rec.delta_at_x0) <
        kTerminationTol * cur.lambda.max_abs_coeff()) {
      if (++streak >= kTerminationStreak) {
        out.terminated = true;
        out.terminated_at = n - kTerminationStreak + 1;
        break;
      }
    } else {
      streak = 0;
    }
    prev = std::move(cur);
  }
  return out;
}

}  // namespace aim
