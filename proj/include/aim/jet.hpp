#ifndef AIM_JET_HPP
#define AIM_JET_HPP

#include <span>
#include <vector>

namespace aim {

/// Truncated Taylor series (a "jet") of a real function about a fixed
/// expansion point x0:
///
///     f(x) ~ sum_{j=0}^{M} c_j (x - x0)^j,   c_j = f^(j)(x0) / j!
///
/// Jets are the numeric substrate for the coefficient functions of the
/// iteration: products, sums and derivatives of jets reproduce the exact
/// Taylor coefficients of the corresponding functions through the
/// truncation order M.  A Jet is an immutable value after construction.
///
/// Operations on two jets require identical x0 and order; mismatches are
/// treated as programming errors, not auto-promoted.
class Jet {
 public:
  /// Zero jet of order 0 about 0. Mostly useful as a placeholder.
  Jet() : x0_(0.0), coeffs_(1, 0.0) {}

  /// Takes ownership of `coeffs` (c_0..c_M); order is coeffs.size()-1.
  /// Throws UsageError if coeffs is empty or contains non-finite values.
  Jet(double x0, std::vector<double> coeffs);

  /// Constant function v: c_0 = v, all higher coefficients zero.
  static Jet constant(double v, double x0, int order);

  /// Jet of coefficient * x^exponent about x0, by the binomial-series
  /// recurrence c_j = c_{j-1} * (exponent - j + 1) / (j * x0), seeded with
  /// c_0 = coefficient * x0^exponent.  Non-negative integer exponents are
  /// polynomials and are valid about any x0 (including 0); any other
  /// exponent requires x0 > 0 and throws DomainError otherwise.
  static Jet power(double exponent, double coefficient, double x0, int order);

  double x0() const { return x0_; }
  int order() const { return static_cast<int>(coeffs_.size()) - 1; }
  std::span<const double> coeffs() const { return coeffs_; }
  double coeff(int j) const { return coeffs_[static_cast<std::size_t>(j)]; }

  /// Horner evaluation in h = x - x0.
  double eval(double x) const;

  /// Jet of f' about the same x0. The top coefficient is padded with zero
  /// (the order-M coefficient of f' would need c_{M+1}, which is lost to
  /// truncation), so derivatives are exact only through order M-1.
  Jet derivative() const;

  Jet scaled(double c) const;

  double max_abs_coeff() const;
  bool all_finite() const;

  friend Jet operator+(const Jet& a, const Jet& b);
  friend Jet operator-(const Jet& a, const Jet& b);
  /// Cauchy product truncated at the common order.
  friend Jet operator*(const Jet& a, const Jet& b);

 private:
  double x0_;
  std::vector<double> coeffs_;

  static void require_compatible(const Jet& a, const Jet& b);
};

}  // namespace aim

#endif
