#include "aim/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "aim/errors.hpp"

namespace aim {

namespace {

struct Tridiag {
  std::vector<double> diag;
  std::vector<double> off;  // off[i] couples i-1 and i; off[0] unused
};

/// Assembles the stencil (-psi'' -> (2 psi_i - psi_{i-1} - psi_{i+1})/h^2)
/// on x_i = i*h (interior i = 1..m for Dirichlet grids). The even-parity
/// grid includes x_0 = 0 with the reflected stencil symmetrized by
/// scaling the first basis vector by sqrt(2).
Tridiag assemble(const GridEigenProblem& gp, int m) {
  const double h = gp.r_max / (m + 1);
  const double inv_h2 = 1.0 / (h * h);
  Tridiag t;
  if (gp.boundary == GridBoundary::even_at_zero) {
    t.diag.resize(static_cast<std::size_t>(m) + 1);
    t.off.resize(static_cast<std::size_t>(m) + 1, -inv_h2);
    t.diag[0] = 2.0 * inv_h2 + gp.potential(0.0);
    t.off[1] = -std::sqrt(2.0) * inv_h2;
    for (int i = 1; i <= m; ++i)
      t.diag[static_cast<std::size_t>(i)] = 2.0 * inv_h2 + gp.potential(i * h);
  } else {
    // dirichlet_both and odd_at_zero share the same matrix: psi(0) = 0.
    t.diag.resize(static_cast<std::size_t>(m));
    t.off.resize(static_cast<std::size_t>(m), -inv_h2);
    for (int i = 1; i <= m; ++i)
      t.diag[static_cast<std::size_t>(i - 1)] =
          2.0 * inv_h2 + gp.potential(i * h);
  }
  t.off[0] = 0.0;
  for (double d : t.diag)
    if (!std::isfinite(d))
      throw DomainError("potential non-finite on the oracle grid");
  return t;
}

/// Full-line grid on [-r_max, r_max] with Dirichlet ends, for potentials
/// without reflection symmetry.
Tridiag assemble_full_line(const std::function<double(double)>& potential,
                           double r_max, int m) {
  const double h = 2.0 * r_max / (m + 1);
  const double inv_h2 = 1.0 / (h * h);
  Tridiag t;
  t.diag.resize(static_cast<std::size_t>(m));
  t.off.resize(static_cast<std::size_t>(m), -inv_h2);
  for (int i = 1; i <= m; ++i)
    t.diag[static_cast<std::size_t>(i - 1)] =
        2.0 * inv_h2 + potential(-r_max + i * h);
  t.off[0] = 0.0;
  for (double d : t.diag)
    if (!std::isfinite(d))
      throw DomainError("potential non-finite on the oracle grid");
  return t;
}

std::vector<double> lowest_eigenvalues(const Tridiag& t, int count) {
  const int n = static_cast<int>(t.diag.size());
  if (count > n) throw UsageError("requested more eigenvalues than grid points");
  // Gershgorin bounds.
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  double max_off = 0.0;
  for (int i = 0; i < n; ++i) {
    const double left = std::abs(t.off[static_cast<std::size_t>(i)]);
    const double right =
        i + 1 < n ? std::abs(t.off[static_cast<std::size_t>(i + 1)]) : 0.0;
    lo = std::min(lo, t.diag[static_cast<std::size_t>(i)] - left - right);
    hi = std::max(hi, t.diag[static_cast<std::size_t>(i)] + left + right);
    max_off = std::max(max_off, left);
  }
  std::vector<double> out(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) {
    double a = lo, b = hi;
    // Bisect until the interval is at machine resolution.
    for (int it = 0; it < 120 && b - a > 1e-14 * std::max(1.0, std::abs(b));
         ++it) {
      const double mid = 0.5 * (a + b);
      if (detail::sturm_count_below(t.diag, t.off, mid) >= k + 1)
        b = mid;
      else
        a = mid;
    }
    out[static_cast<std::size_t>(k)] = 0.5 * (a + b);
  }
  return out;
}

std::vector<double> eigenvalues_at_m(const GridEigenProblem& gp, int m,
                                     int count) {
  GridEigenProblem local = gp;
  local.m = m;
  return lowest_eigenvalues(assemble(local, m), count);
}

std::vector<double> merge_lowest(std::vector<double> a,
                                 const std::vector<double>& b, int count) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  if (static_cast<int>(a.size()) > count)
    a.resize(static_cast<std::size_t>(count));
  return a;
}

}  // namespace

namespace detail {

int sturm_count_below(const std::vector<double>& diag,
                      const std::vector<double>& off, double sigma) {
  // LDL^T pivot recurrence; negative pivots count eigenvalues below sigma.
  double max_off2 = 0.0;
  for (double e : off) max_off2 = std::max(max_off2, e * e);
  const double pivmin =
      std::max(max_off2, 1.0) * std::numeric_limits<double>::min();
  int count = 0;
  double q = 1.0;
  for (std::size_t i = 0; i < diag.size(); ++i) {
    const double e2 = i == 0 ? 0.0 : off[i] * off[i];
    q = diag[i] - sigma - (i == 0 ? 0.0 : e2 / q);
    if (std::abs(q) < pivmin) q = -pivmin;
    if (q < 0.0) ++count;
  }
  return count;
}

}  // namespace detail

std::vector<double> fd_eigenvalues_single(const GridEigenProblem& gp,
                                          int count) {
  if (gp.m < 100) throw UsageError("oracle grid needs m >= 100");
  if (!(gp.r_max > 0.0)) throw UsageError("oracle needs r_max > 0");
  if (!gp.potential) throw UsageError("oracle needs a potential");
  return eigenvalues_at_m(gp, gp.m, count);
}

std::vector<double> fd_eigenvalues(const GridEigenProblem& gp, int count) {
  if (gp.m < 100) throw UsageError("oracle grid needs m >= 100");
  if (!(gp.r_max > 0.0)) throw UsageError("oracle needs r_max > 0");
  if (!gp.potential) throw UsageError("oracle needs a potential");
  // 2m+1 interior points halve the spacing exactly, so the h^2 error
  // cancels in the extrapolation E = (4 E_fine - E_coarse) / 3.
  const std::vector<double> coarse = eigenvalues_at_m(gp, gp.m, count);
  const std::vector<double> fine = eigenvalues_at_m(gp, 2 * gp.m + 1, count);
  std::vector<double> out(coarse.size());
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = (4.0 * fine[i] - coarse[i]) / 3.0;
  return out;
}

std::vector<double> oracle_spectrum(const ProblemSpec& p, int count,
                                    double r_max, int m) {
  if (count < 1) throw UsageError("count must be >= 1");
  if (p.kind() == ProblemKind::hermite)
    throw UsageError("hermite is not a Schrodinger problem");
  auto pot = [&p](double x) { return p.potential(x); };
  if (p.half_line()) {
    GridEigenProblem gp{r_max, m, pot, GridBoundary::dirichlet_both};
    return fd_eigenvalues(gp, count);
  }
  const bool symmetric = p.kind() != ProblemKind::custom ||
                         p.expression().even_symmetric();
  if (!symmetric) {
    Tridiag coarse_t = assemble_full_line(pot, r_max, m);
    Tridiag fine_t = assemble_full_line(pot, r_max, 2 * m + 1);
    const auto coarse = lowest_eigenvalues(coarse_t, count);
    const auto fine = lowest_eigenvalues(fine_t, count);
    std::vector<double> out(coarse.size());
    for (std::size_t i = 0; i < out.size(); ++i)
      out[i] = (4.0 * fine[i] - coarse[i]) / 3.0;
    return out;
  }
  GridEigenProblem even{r_max, m, pot, GridBoundary::even_at_zero};
  GridEigenProblem odd{r_max, m, pot, GridBoundary::odd_at_zero};
  return merge_lowest(fd_eigenvalues(even, count), fd_eigenvalues(odd, count),
                      count);
}

}  // namespace aim
