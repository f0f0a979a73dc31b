#ifndef AIM_ORACLE_HPP
#define AIM_ORACLE_HPP

#include <functional>
#include <vector>

#include "aim/problems.hpp"

namespace aim {

enum class GridBoundary {
  dirichlet_both,  // psi = 0 at both ends; grid excludes the origin
  even_at_zero,    // half-line reduction of an even 1-D state (psi'(0)=0)
  odd_at_zero,     // half-line reduction of an odd 1-D state (psi(0)=0)
};

/// Dense finite-difference discretization of -psi'' + V psi = E psi on a
/// uniform grid, used as the independent eigenvalue reference. Shares no
/// code path with the iteration engine.
struct GridEigenProblem {
  double r_max = 12.0;
  int m = 4000;  // interior grid points; must be >= 100
  std::function<double(double)> potential;
  GridBoundary boundary = GridBoundary::dirichlet_both;
};

/// Lowest `count` eigenvalues of the 3-point-stencil tridiagonal matrix,
/// computed by bisection on Sturm sequences and Richardson-extrapolated
/// across the m grid and its exact refinement (spacing halved).
std::vector<double> fd_eigenvalues(const GridEigenProblem& gp, int count);

/// Single-grid eigenvalues without extrapolation (exposed for grid
/// convergence studies).
std::vector<double> fd_eigenvalues_single(const GridEigenProblem& gp,
                                          int count);

/// Reference spectrum for a catalog problem: half-line potentials get a
/// Dirichlet grid on (0, r_max); symmetric full-line problems are reduced
/// to even/odd half-line runs and merged; asymmetric custom potentials
/// are discretized across [-r_max, r_max].
std::vector<double> oracle_spectrum(const ProblemSpec& p, int count,
                                    double r_max = 12.0, int m = 4000);

namespace detail {
/// Number of eigenvalues of the symmetric tridiagonal (diag, off) strictly
/// below sigma, by the Sturm sequence count.
int sturm_count_below(const std::vector<double>& diag,
                      const std::vector<double>& off, double sigma);
}  // namespace detail

}  // namespace aim

#endif
