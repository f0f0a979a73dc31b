#include "aim/closed_form.hpp"

#include <cmath>
#include <string>

#include "aim/errors.hpp"

namespace aim {

namespace {

bool is_nonpositive_integer(double v) {
  return v <= 0.0 && std::abs(v - std::round(v)) < 1e-12;
}

/// Running integral of uniformly sampled values, cumulative composite
/// Simpson: even indices advance by whole Simpson panels, odd indices by
/// the quadratic half-panel rule.
std::vector<double> cumulative_simpson(std::span<const double> f, double h) {
  const std::size_t n = f.size();
  std::vector<double> acc(n, 0.0);
  for (std::size_t i = 1; i < n; ++i) {
    if (i % 2 == 0) {
      acc[i] = acc[i - 2] + h * (f[i - 2] + 4.0 * f[i - 1] + f[i]) / 3.0;
    } else if (i + 1 < n) {
      acc[i] = acc[i - 1] + h * (5.0 * f[i - 1] + 8.0 * f[i] - f[i + 1]) / 12.0;
    } else {
      acc[i] = acc[i - 1] + h * (-f[i - 2] + 8.0 * f[i - 1] + 5.0 * f[i]) / 12.0;
    }
  }
  return acc;
}

}  // namespace

std::pair<double, double> constant_coeff_alpha(double lambda0, double s0) {
  const double disc = lambda0 * lambda0 + 4.0 * s0;
  if (disc < 0.0)
    throw DomainError("ratio equation has complex roots (lambda0^2 + 4 s0 < 0)");
  const double root = std::sqrt(disc);
  const double r1 = 0.5 * (-lambda0 - root);
  const double r2 = 0.5 * (-lambda0 + root);
  return {r1, r2};
}

double kummer_1f1(double a, double b, double z) {
  if (is_nonpositive_integer(b))
    throw UsageError("1F1 undefined for b a non-positive integer");
  if (is_nonpositive_integer(a)) {
    const int n = static_cast<int>(-std::round(a));
    double term = 1.0, sum = 1.0;
    for (int j = 0; j < n; ++j) {
      term *= (a + j) * z / ((b + j) * (j + 1));
      sum += term;
    }
    return sum;
  }
  double term = 1.0, sum = 1.0;
  for (int j = 0; j < 500; ++j) {
    term *= (a + j) * z / ((b + j) * (j + 1));
    sum += term;
    if (!std::isfinite(sum))
      throw ConvergenceError("1F1 series overflowed");
    if (std::abs(term) <= 1e-14 * std::abs(sum)) return sum;
  }
  throw ConvergenceError("1F1 series did not converge in 500 terms");
}

double hermite_f(int k, double x) {
  if (k < 0) throw UsageError("hermite order k must be >= 0");
  const int m = k / 2;
  // 2^m (1/2)_m and 2^m (3/2)_m stay modest for the polynomial orders in
  // use; no lgamma needed here.
  double pref = (m % 2 == 0) ? 1.0 : -1.0;
  const double b = (k % 2 == 0) ? 0.5 : 1.5;
  for (int j = 0; j < m; ++j) pref *= 2.0 * (b + j);
  const double series = kummer_1f1(-m, b, x * x);
  return (k % 2 == 0) ? pref * series : pref * x * series;
}

std::vector<double> hermite_f_coeffs(int k) {
  if (k < 0) throw UsageError("hermite order k must be >= 0");
  const int m = k / 2;
  const double b = (k % 2 == 0) ? 0.5 : 1.5;
  double pref = (m % 2 == 0) ? 1.0 : -1.0;
  for (int j = 0; j < m; ++j) pref *= 2.0 * (b + j);
  std::vector<double> coeffs(static_cast<std::size_t>(k) + 1, 0.0);
  double term = pref;
  for (int j = 0; j <= m; ++j) {
    const int power = 2 * j + (k % 2);
    coeffs[static_cast<std::size_t>(power)] = term;
    term *= (static_cast<double>(-m) + j) / ((b + j) * (j + 1));
  }
  return coeffs;
}

double gk_wavefunction(int n, double gamma, double r) {
  if (n < 0) throw UsageError("level n must be >= 0");
  if (!(gamma > -1.5)) throw UsageError("gamma must exceed -3/2");
  if (r < 0.0) throw UsageError("r must be >= 0");
  const double a = gamma + 1.5;
  const double log_norm_sq = std::log(2.0) + std::lgamma(a + n) -
                             std::lgamma(n + 1.0) - 2.0 * std::lgamma(a);
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;
  const double radial = std::pow(r, gamma + 1.0) * std::exp(-0.5 * r * r);
  return sign * std::exp(0.5 * log_norm_sq) * radial *
         kummer_1f1(-n, a, r * r);
}

std::optional<double> exact_energy(const ProblemSpec& p, int n) {
  if (n < 0) throw UsageError("level n must be >= 0");
  switch (p.kind()) {
    case ProblemKind::harmonic1d:
      return 2.0 * n + 1.0;
    case ProblemKind::goldman_krivchenkov:
      return 4.0 * n + 2.0 * p.gamma() + 3.0;
    case ProblemKind::spiked:
      if (p.coupling() == 0.0) return 4.0 * n + 2.0 * p.gamma() + 3.0;
      return std::nullopt;
    case ProblemKind::quartic:
      if (p.coupling() == 0.0) return 2.0 * n + 1.0;
      return std::nullopt;
    default:
      return std::nullopt;
  }
}

ReconstructionResult reconstruct_solution(
    const std::function<double(double)>& lambda0,
    std::span<const double> alpha_samples, std::span<const double> grid,
    double C1, double C2, const std::function<double(double)>& envelope) {
  if (grid.size() < 3)
    throw UsageError("reconstruction grid needs at least 3 points");
  if (alpha_samples.size() != grid.size())
    throw UsageError("alpha samples must align with the grid");
  const double h = grid[1] - grid[0];
  if (!(h > 0.0)) throw UsageError("grid must be strictly increasing");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double step = grid[i] - grid[i - 1];
    if (std::abs(step - h) > 1e-9 * std::max(1.0, std::abs(h)))
      throw UsageError("reconstruction grid must be uniform");
  }
  for (std::size_t i = 0; i < alpha_samples.size(); ++i) {
    if (!std::isfinite(alpha_samples[i]))
      throw DomainError("alpha sample non-finite at grid point " +
                        std::to_string(i) + " (x = " +
                        std::to_string(grid[i]) + ")");
  }

  std::vector<double> integrand(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i)
    integrand[i] = lambda0(grid[i]) + 2.0 * alpha_samples[i];
  const std::vector<double> alpha_int = cumulative_simpson(alpha_samples, h);
  const std::vector<double> growth_int = cumulative_simpson(integrand, h);

  std::vector<double> inner(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i)
    inner[i] = std::exp(growth_int[i]);
  const std::vector<double> inner_int = cumulative_simpson(inner, h);

  ReconstructionResult out;
  out.C1 = C1;
  out.C2 = C2;
  out.xs.assign(grid.begin(), grid.end());
  out.y_vals.resize(grid.size());
  out.psi_vals.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double y = std::exp(-alpha_int[i]) * (C2 + C1 * inner_int[i]);
    if (!std::isfinite(y))
      throw OverflowError("reconstructed solution non-finite at grid point " +
                              std::to_string(i),
                          static_cast<int>(i));
    out.y_vals[i] = y;
    out.psi_vals[i] = envelope ? envelope(out.xs[i]) * y : y;
  }
  return out;
}

}  // namespace aim
