#ifndef AIM_CLOSED_FORM_HPP
#define AIM_CLOSED_FORM_HPP

#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "aim/problems.hpp"

namespace aim {

/// Roots of r^2 + lambda0*r - s0 = 0, the fixed-point equation satisfied
/// by the stabilized ratio s_n/lambda_n when both coefficients are
/// constant. Returned ascending. Throws DomainError on complex roots.
std::pair<double, double> constant_coeff_alpha(double lambda0, double s0);

/// Kummer confluent hypergeometric 1F1(a; b; z) by direct series.
/// Terminates exactly for a a non-positive integer; otherwise sums until
/// the term drops below 1e-14 of the accumulated value (at most 500
/// terms, else ConvergenceError). b must not be a non-positive integer.
double kummer_1f1(double a, double b, double z);

/// Hermite-equation solutions f_k normalized as generated by the
/// iteration: f_2 = 2x^2 - 1, f_3 = 2x^3 - 3x, f_4 = 3 - 12x^2 + 4x^4.
/// (Not the physicists' normalization: leading coefficient differs.)
/// Evaluated through the 1F1 closed forms.
double hermite_f(int k, double x);

/// Coefficients c_0..c_k of f_k as a dense polynomial in x.
std::vector<double> hermite_f_coeffs(int k);

/// Normalized eigenfunctions of -psi'' + (r^2 + g(g+1)/r^2) psi = E psi
/// on the half line:
///   psi_n(r) = (-1)^n sqrt(2 (g+3/2)_n / (n! Gamma(g+3/2)))
///              * r^(g+1) e^(-r^2/2) 1F1(-n; g+3/2; r^2)
/// Gamma ratios go through lgamma so large n and g do not overflow.
double gk_wavefunction(int n, double gamma, double r);

/// Closed-form energy when the problem has one (harmonic1d: 2n+1;
/// goldman_krivchenkov: 4n+2g+3; spiked/quartic only at A=0), else
/// nullopt.
std::optional<double> exact_energy(const ProblemSpec& p, int n);

struct ReconstructionResult {
  std::vector<double> xs;
  std::vector<double> y_vals;
  std::vector<double> psi_vals;
  double C1 = 0.0;
  double C2 = 0.0;
};

/// General solution on a uniform grid:
///
///   y(x) = exp(-I[alpha])(x) * ( C2 + C1 * J(x) ),
///   J(x) = integral of exp( I[lambda0 + 2 alpha] ),
///
/// with I[.] the running integral from the first grid point (all
/// integration constants are absorbed into C1 and C2). Quadrature is
/// cumulative composite Simpson; the inner antiderivatives are
/// accumulated once. alpha_samples holds s_n/lambda_n at each grid
/// point; non-finite samples are rejected naming the grid point.
/// psi_vals = envelope(x) * y when an envelope is supplied, else y.
ReconstructionResult reconstruct_solution(
    const std::function<double(double)>& lambda0,
    std::span<const double> alpha_samples, std::span<const double> grid,
    double C1, double C2,
    const std::function<double(double)>& envelope = {});

}  // namespace aim

#endif
